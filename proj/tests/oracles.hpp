// Independent reference implementations used only to check the library.
// Nothing here may call into wcf/ internals beyond plain data access.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace oracles {

// Saturation vapor pressure over water, hPa (Bolton 1980).
inline double saturation_vapor_pressure_hpa(double t_c) {
    return 6.112 * std::exp(17.67 * t_c / (t_c + 243.5));
}

// Iterative psychrometric wet bulb at standard pressure: solves the
// ventilated-psychrometer relation
//   e = es(Tw) - A * P * (1 + 0.00115 Tw) * (T - Tw)
// for Tw by bisection. This is the classical reference the single-equation
// fit approximates.
inline double wet_bulb_psychrometric(double dry_bulb_c, double rh_pct,
                                     double pressure_hpa = 1013.25) {
    const double e = rh_pct / 100.0 * saturation_vapor_pressure_hpa(dry_bulb_c);
    const auto residual = [&](double tw) {
        return saturation_vapor_pressure_hpa(tw) -
               6.60e-4 * (1.0 + 0.00115 * tw) * pressure_hpa *
                   (dry_bulb_c - tw) -
               e;
    };
    double lo = -80.0;
    double hi = dry_bulb_c + 0.5;
    double f_lo = residual(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = residual(mid);
        if ((f_lo < 0.0) == (f_mid < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Locates a root of f in [lo, hi] by plain bisection (f(lo), f(hi) must
// bracket).
template <typename F>
double bisect_root(F f, double lo, double hi, int iterations = 200) {
    double f_lo = f(lo);
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = f(mid);
        if ((f_lo < 0.0) == (f_mid < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Naive per-slot water/carbon accumulation, straight from the accounting
// definition, with no compensation tricks.
struct NaiveTotals {
    double w_on_l = 0.0;
    double w_off_l = 0.0;
    double carbon_kg = 0.0;
};

inline NaiveTotals naive_footprint(const std::vector<double>& energy_kwh,
                                   const std::vector<double>& pue,
                                   const std::vector<double>& wue_on,
                                   const std::vector<double>& wue_off,
                                   const std::vector<double>& carbon) {
    NaiveTotals totals;
    for (std::size_t t = 0; t < energy_kwh.size(); ++t) {
        totals.w_on_l += energy_kwh[t] * wue_on[t];
        totals.w_off_l += energy_kwh[t] * pue[t] * wue_off[t];
        totals.carbon_kg += energy_kwh[t] * pue[t] * carbon[t];
    }
    return totals;
}

// Quadratic Pareto filter over (water, carbon) pairs: keep index i unless
// some j is strictly lower in both objectives, or j has the identical
// value pair and precedes i in the given tie-break order.
struct ParetoPoint {
    double water = 0.0;
    double carbon = 0.0;
    // Tie-break rank: lower wins among identical value pairs.
    std::size_t rank = 0;
};

inline std::vector<std::size_t> pareto_indices(
    const std::vector<ParetoPoint>& points) {
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool excluded = false;
        for (std::size_t j = 0; j < points.size() && !excluded; ++j) {
            if (j == i) continue;
            const bool strictly_dominates = points[j].water < points[i].water &&
                                            points[j].carbon < points[i].carbon;
            const bool duplicate_ahead = points[j].water == points[i].water &&
                                         points[j].carbon == points[i].carbon &&
                                         points[j].rank < points[i].rank;
            excluded = strictly_dominates || duplicate_ahead;
        }
        if (!excluded) kept.push_back(i);
    }
    return kept;
}

}  // namespace oracles
