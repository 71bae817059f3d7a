#pragma once

#include "hurst/dyadic.hpp"

#include <optional>
#include <vector>

namespace hurst {

/// V_n^(p) over a grid of levels and exponents, plus log2-slope diagnostics.
struct VariationProfile {
    std::vector<int> levels;
    std::vector<double> p_grid;
    /// values[i][j] = V_{levels[i]}^{(p_grid[j])}
    std::vector<std::vector<double>> values;
    /// slopes[i][j] = (log2 V_{levels[i+1]} - log2 V_{levels[i]}) / (levels[i+1] - levels[i]);
    /// nullopt where either variation is zero.
    std::vector<std::vector<std::optional<double>>> slopes;
    /// Least-squares slope of log2 V_n^(p) against n for each p (nullopt if any V is zero
    /// or fewer than two levels).
    std::vector<std::optional<double>> fitted_slope;
};

/// sum_{k<2^n} |x((k+1)2^-n) - x(k 2^-n)|^p
[[nodiscard]] double pth_variation(const DyadicSeries& series, double p, int n);

[[nodiscard]] VariationProfile variation_profile(const DyadicSeries& series, const std::vector<double>& p_grid,
                                                 const std::vector<int>& levels);

/// Largest n accepted by branch_moment unless the caller raises the cap.
inline constexpr int kDefaultBranchCap = 24;

/// E[(sum_{m<n} S_m)^{p/2}] by exact enumeration of the 2^{n-1} dyadic branches:
///   2^{-(n-1)} sum_k ( sum_{m<n} 2^m theta^2_{m, floor(2^{m-n+1} k)} )^{p/2}
[[nodiscard]] double branch_moment(const FaberSchauderPyramid& pyramid, int n, double p,
                                   int max_n = kDefaultBranchCap);

struct BurkholderRatio {
    double ratio = 0.0;
    double variation = 0.0;  ///< V_n^(p)
    double moment = 0.0;     ///< branch moment of order p
    bool detrended = false;  ///< affine detrending was applied before analysis
};

/// V_n^(p) / (2^{n(1-p)} E[(sum S_m)^{p/2}]). The path must satisfy x(0) = x(1) = 0
/// unless detrend is set, in which case x(t) - x(0) - t(x(1) - x(0)) is used.
[[nodiscard]] BurkholderRatio burkholder_ratio(const DyadicSeries& series, double p, int n,
                                               bool detrend = false);

} // namespace hurst
