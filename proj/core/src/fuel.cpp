#include "wcf/fuel.hpp"

#include <cmath>
#include <string>

#include "wcf/errors.hpp"

namespace wcf {

namespace {

constexpr std::string_view kLabels[kFuelTypeCount] = {
    "coal", "nuclear", "natural_gas", "solar_pv", "wind", "hydro", "other"};

std::string lower(std::string_view text) {
    std::string out(text);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
    }
    return out;
}

}  // namespace

std::string_view fuel_label(FuelType fuel) {
    return kLabels[static_cast<std::size_t>(fuel)];
}

std::optional<FuelType> fuel_from_label(std::string_view label) {
    const std::string needle = lower(label);
    for (FuelType fuel : all_fuel_types()) {
        if (needle == fuel_label(fuel)) return fuel;
    }
    return std::nullopt;
}

void FuelMix::set_generation_mwh(FuelType fuel, double mwh) {
    if (!std::isfinite(mwh) || mwh < 0.0) {
        throw ArgumentError("generation for " + std::string(fuel_label(fuel)) +
                            " must be finite and >= 0, got " +
                            std::to_string(mwh));
    }
    generation_[index(fuel)] = mwh;
}

void FuelMix::add_generation_mwh(FuelType fuel, double mwh) {
    set_generation_mwh(fuel, generation_[index(fuel)] + mwh);
}

double FuelMix::total_mwh() const {
    double total = 0.0;
    for (double g : generation_) total += g;
    return total;
}

EfficiencyTables EfficiencyTables::defaults() {
    EfficiencyTables t;
    const auto set = [&t](FuelType fuel, double ewif, double carbon) {
        t.ewif_l_per_kwh[static_cast<std::size_t>(fuel)] = ewif;
        t.carbon_kg_per_kwh[static_cast<std::size_t>(fuel)] = carbon;
    };
    set(FuelType::Coal, 1.7, 1.0);
    set(FuelType::Nuclear, 2.3, 0.0);
    set(FuelType::NaturalGas, 1.1, 0.41);
    set(FuelType::SolarPV, 0.0, 0.0);
    set(FuelType::Wind, 0.0, 0.0);
    set(FuelType::Hydro, 68.0, 0.0);
    set(FuelType::Other, 1.8, 0.7);
    t.exclude_hydro_water = true;
    return t;
}

double EfficiencyTables::ewif_for(FuelType fuel) const {
    if (fuel == FuelType::Hydro && exclude_hydro_water) return 0.0;
    return ewif_l_per_kwh[static_cast<std::size_t>(fuel)];
}

double EfficiencyTables::carbon_for(FuelType fuel) const {
    return carbon_kg_per_kwh[static_cast<std::size_t>(fuel)];
}

void EfficiencyTables::validate() const {
    for (FuelType fuel : all_fuel_types()) {
        const auto i = static_cast<std::size_t>(fuel);
        if (!std::isfinite(ewif_l_per_kwh[i]) || ewif_l_per_kwh[i] < 0.0) {
            throw ArgumentError("ewif." + std::string(fuel_label(fuel)) +
                                " must be finite and >= 0");
        }
        if (!std::isfinite(carbon_kg_per_kwh[i]) || carbon_kg_per_kwh[i] < 0.0) {
            throw ArgumentError("carbon." + std::string(fuel_label(fuel)) +
                                " must be finite and >= 0");
        }
    }
}

}  // namespace wcf
