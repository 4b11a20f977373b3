#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace wcf {

// Grid generation fuel categories. Labels not on this list fold into Other
// at ingestion time.
enum class FuelType {
    Coal,
    Nuclear,
    NaturalGas,
    SolarPV,
    Wind,
    Hydro,
    Other,
};

inline constexpr std::size_t kFuelTypeCount = 7;

constexpr std::array<FuelType, kFuelTypeCount> all_fuel_types() {
    return {FuelType::Coal,    FuelType::Nuclear, FuelType::NaturalGas,
            FuelType::SolarPV, FuelType::Wind,    FuelType::Hydro,
            FuelType::Other};
}

// Canonical lower-case label, e.g. "natural_gas".
std::string_view fuel_label(FuelType fuel);

// Case-insensitive lookup of a canonical label. Returns nullopt for
// unrecognized labels; callers decide whether to fold into Other.
std::optional<FuelType> fuel_from_label(std::string_view label);

// Energy generated per slot, by fuel, in MWh.
class FuelMix {
public:
    FuelMix() = default;

    double generation_mwh(FuelType fuel) const {
        return generation_[index(fuel)];
    }

    // Throws ArgumentError for negative or non-finite values. Negative
    // entries in raw feeds are clamped by the parser, not here.
    void set_generation_mwh(FuelType fuel, double mwh);
    void add_generation_mwh(FuelType fuel, double mwh);

    double total_mwh() const;

private:
    static std::size_t index(FuelType fuel) {
        return static_cast<std::size_t>(fuel);
    }

    std::array<double, kFuelTypeCount> generation_{};
};

// Per-fuel water and carbon intensity factors.
struct EfficiencyTables {
    std::array<double, kFuelTypeCount> ewif_l_per_kwh{};
    std::array<double, kFuelTypeCount> carbon_kg_per_kwh{};

    // Hydroelectric water is conventionally excluded from grid EWIF; when
    // set, the hydro EWIF reads as zero while its stored value is kept.
    bool exclude_hydro_water = true;

    // EWIF defaults (L/kWh): coal 1.7, nuclear 2.3, natural gas 1.1,
    // solar PV 0, wind 0, hydro 68, other 1.8. Carbon defaults (kg/kWh)
    // are typical direct-combustion intensities: coal 1.0, natural gas
    // 0.41, other 0.7, rest 0; override them in config for real studies.
    static EfficiencyTables defaults();

    double ewif_for(FuelType fuel) const;
    double carbon_for(FuelType fuel) const;

    // Throws ArgumentError if any entry is negative or non-finite.
    void validate() const;
};

}  // namespace wcf
