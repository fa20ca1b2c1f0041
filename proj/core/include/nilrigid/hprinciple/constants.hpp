#pragma once

// Written by nilrigid-calibrate; regenerate rather than edit.
// nilrigid-calibrate --seed 1 --instances 2000
// Drift: observed max of max|w_perp| / |v|^{1/d}, times 2, rounded up.
// Kappa: observed min of the eps-quantile of |w(t)| over eps^{d(d-1)/2}, eps in {1/2, 1/10, 1/100},
// divided by 2, rounded down.

#include <array>
#include <cstdint>

namespace nilrigid::hprinciple {

inline constexpr std::uint64_t kCalibrationSeed = 1;
inline constexpr std::size_t kCalibrationInstances = 2000;

/// |w_perp(t)| <= C_d |v|^{1/d} on [0, T]; index d, entries 0 and 1 unused.
inline constexpr std::array<double, 7> kDriftConstant = {0, 0, 0.0624, 0.882, 1.87, 2.91, 4.16};

/// kappa = C_kappa(d) eps^{d(d-1)/2}; index d, entries 0 and 1 unused.
inline constexpr std::array<double, 7> kKappaConstant = {0, 0, 0.453, 0.342, 0.491, 2.64, 44.1};

}  // namespace nilrigid::hprinciple
