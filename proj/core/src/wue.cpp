#include "wcf/wue.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wcf/errors.hpp"

namespace wcf {

WetBulbF::WetBulbF(double degrees) : degrees_(degrees) {
    if (!std::isfinite(degrees) || degrees < kMinDegrees ||
        degrees > kMaxDegrees) {
        throw ArgumentError("wet bulb " + std::to_string(degrees) +
                            " degF outside accepted range [-40, 130]");
    }
}

void CoolingTowerParams::validate() const {
    if (!std::isfinite(cycles_of_concentration) ||
        cycles_of_concentration <= 1.0) {
        throw ArgumentError("cycles_of_concentration must be > 1, got " +
                            std::to_string(cycles_of_concentration));
    }
    if (!std::isfinite(wue_floor_l_per_kwh) || wue_floor_l_per_kwh < 0.0) {
        throw ArgumentError("wue_floor must be >= 0, got " +
                            std::to_string(wue_floor_l_per_kwh));
    }
}

double wet_bulb_from(double dry_bulb_c, double relative_humidity_pct) {
    if (!std::isfinite(dry_bulb_c) || dry_bulb_c < -40.0 || dry_bulb_c > 55.0) {
        throw ArgumentError("dry_bulb " + std::to_string(dry_bulb_c) +
                            " degC outside accepted range [-40, 55]");
    }
    if (!std::isfinite(relative_humidity_pct) || relative_humidity_pct < 0.0 ||
        relative_humidity_pct > 100.0) {
        throw ArgumentError("relative_humidity " +
                            std::to_string(relative_humidity_pct) +
                            " outside [0, 100] percent");
    }
    const double t = dry_bulb_c;
    const double rh = relative_humidity_pct;
    const double tw = t * std::atan(0.151977 * std::sqrt(rh + 8.313659)) +
                      std::atan(t + rh) - std::atan(rh - 1.676331) +
                      0.00391838 * rh * std::sqrt(rh) *
                          std::atan(0.023101 * rh) -
                      4.686035;
    // The fit overshoots the dry bulb by at most ~0.26 degC inside its
    // validity region but can run away in the dry-cold corner; cap it.
    return std::min(tw, t + 1.0);
}

bool wet_bulb_window_ok(double dry_bulb_c, double relative_humidity_pct) {
    return relative_humidity_pct >= 5.0 && dry_bulb_c >= -20.0 &&
           dry_bulb_c <= 50.0;
}

double fahrenheit_from_celsius(double celsius) {
    return celsius * 9.0 / 5.0 + 32.0;
}

double cooling_tower_wue(WetBulbF wet_bulb, const CoolingTowerParams& params) {
    params.validate();
    const double tw = wet_bulb.degrees();
    const double cubic =
        ((6e-5 * tw - 0.01) * tw + 0.61) * tw - 10.40;
    const double s = params.cycles_of_concentration;
    return std::max(params.wue_floor_l_per_kwh, s / (s - 1.0) * cubic);
}

namespace {

double weighted_average(const FuelMix& mix, const EfficiencyTables& tables,
                        double (EfficiencyTables::*factor)(FuelType) const,
                        const char* what) {
    tables.validate();
    const double total = mix.total_mwh();
    if (total <= 0.0) {
        throw ArgumentError(std::string(what) +
                            ": fuel mix has zero total generation");
    }
    double weighted = 0.0;
    for (FuelType fuel : all_fuel_types()) {
        weighted += mix.generation_mwh(fuel) * (tables.*factor)(fuel);
    }
    return weighted / total;
}

}  // namespace

double offsite_wue(const FuelMix& mix, const EfficiencyTables& tables) {
    return weighted_average(mix, tables, &EfficiencyTables::ewif_for,
                            "offsite_wue");
}

double carbon_intensity(const FuelMix& mix, const EfficiencyTables& tables) {
    return weighted_average(mix, tables, &EfficiencyTables::carbon_for,
                            "carbon_intensity");
}

}  // namespace wcf
