#pragma once

#include "wcf/fuel.hpp"

namespace wcf {

// Wet-bulb temperature in degrees Fahrenheit, validated on construction.
// The cooling-tower model is fitted in Fahrenheit; everything outside it
// works in Celsius.
class WetBulbF {
public:
    static constexpr double kMinDegrees = -40.0;
    static constexpr double kMaxDegrees = 130.0;

    // Throws ArgumentError for non-finite values or values outside the
    // accepted operating range.
    explicit WetBulbF(double degrees);

    double degrees() const { return degrees_; }

private:
    double degrees_;
};

struct CoolingTowerParams {
    // Cycles of concentration: recirculation count before blowdown. The
    // makeup factor S/(S-1) is undefined at S = 1.
    double cycles_of_concentration = 5.0;

    // Lower cap on the modeled on-site WUE, L/kWh.
    double wue_floor_l_per_kwh = 0.01;

    // Throws ArgumentError unless S > 1 and floor >= 0, both finite.
    void validate() const;
};

// Wet bulb from dry bulb (degC) and relative humidity (percent), using the
// Stull single-equation approximation. Accepts dry bulb in [-40, 55] degC
// and humidity in [0, 100] percent; anything else throws ArgumentError.
// The estimate is capped at dry_bulb + 1.0 degC; the cap only binds
// outside the approximation's validity region, where the raw fit can
// drift far above the dry bulb.
double wet_bulb_from(double dry_bulb_c, double relative_humidity_pct);

// True when (dry bulb, humidity) falls inside the approximation's stated
// window: humidity >= 5% and dry bulb in [-20, 50] degC. Outside it the
// estimate is still returned but should be treated as a rough guess;
// ingestion surfaces this as a warning rather than an error.
bool wet_bulb_window_ok(double dry_bulb_c, double relative_humidity_pct);

double fahrenheit_from_celsius(double celsius);

// On-site cooling-tower WUE (L/kWh):
//   max(floor, S/(S-1) * (6e-5*Tw^3 - 0.01*Tw^2 + 0.61*Tw - 10.40))
// with Tw in Fahrenheit. The cubic goes negative below roughly 27 degF,
// where evaporation stops driving consumption and the floor binds.
double cooling_tower_wue(WetBulbF wet_bulb, const CoolingTowerParams& params);

// Off-site WUE (L/kWh): generation-weighted average of per-fuel EWIF over
// the slot's fuel mix. Throws ArgumentError when total generation is zero.
double offsite_wue(const FuelMix& mix, const EfficiencyTables& tables);

// Grid carbon intensity (kg CO2/kWh): generation-weighted average of the
// per-fuel carbon factors. Throws ArgumentError on a zero-total mix.
double carbon_intensity(const FuelMix& mix, const EfficiencyTables& tables);

}  // namespace wcf
