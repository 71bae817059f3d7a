#pragma once

#include "hurst/dyadic.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hurst {

/// A ratio that may be unbounded; `infinite` replaces a floating-point infinity.
struct BoundedRatio {
    double value = 0.0;
    bool infinite = false;
};

struct ReverseJensenPoint {
    int n = 0;
    double p = 0.0;
    double moment = 0.0;   ///< E[(sum_{m<n} S_m)^{p/2}]
    double s_pow = 0.0;    ///< s_n^p
    double ratio = 1.0;    ///< max(moment / s_n^p, s_n^p / moment) >= 1
    double log2_rate = 0.0; ///< log2(ratio) / n
};

/// Two-sided comparison of the branch moment with s_n^p.
[[nodiscard]] ReverseJensenPoint reverse_jensen_ratio(const FaberSchauderPyramid& pyramid, double p, int n);
[[nodiscard]] std::vector<ReverseJensenPoint> reverse_jensen_curve(const FaberSchauderPyramid& pyramid, double p,
                                                                   int n_lo, int n_hi);

/// max_k |theta_{m,k}| / min_k |theta_{m,k}|
[[nodiscard]] BoundedRatio condition_a_ratio(const FaberSchauderPyramid& pyramid, int m);
/// Largest over smallest block energy, blocks of 2^nu consecutive theta^2 at level m.
[[nodiscard]] BoundedRatio condition_b_ratio(const FaberSchauderPyramid& pyramid, int nu, int m);

struct QuantileBounds {
    double lower = 0.0; ///< xi^-_{nu,n}
    double upper = 0.0; ///< xi^+_{nu,n}
    int first_level = 1;
    std::string quantile_convention;
};

/// Quantile-based bounds built from the empirical distribution of 2^m theta_{m,.}^2.
/// Sums start at level 1 since the level-0 term divides by 0^nu.
[[nodiscard]] QuantileBounds quantile_bounds(const FaberSchauderPyramid& pyramid, int nu, int n);

enum class Verdict { Consistent, Violated, Inconclusive };
[[nodiscard]] std::string to_string(Verdict v);

struct BiasCheck {
    std::string rule;
    Verdict verdict = Verdict::Inconclusive;
    /// Amount by which the rule's conclusion holds (negative = fails). nullopt if xi is undefined.
    std::optional<double> margin;
};

struct BiasReport {
    double H_candidate = 0.0;
    std::optional<double> xi;
    int n = 0;
    std::vector<BiasCheck> checks;
};

/// Checks a candidate exponent against the one-sided relations between H and
/// xi = lim xi_n, using xi at the deepest level as the proxy. A conclusion failing
/// by no more than tol counts as consistent; a failure whose premise holds by less
/// than tol is inconclusive.
[[nodiscard]] BiasReport bias_report(const EnergyTrace& trace, double H_candidate, double tol = 0.01);

struct BvReadout {
    double sup_s = 0.0;
    /// log2 s_{j+1} - log2 s_j for j = 1..depth-1 (nullopt where s vanishes)
    std::vector<std::optional<double>> log2_increments;
    /// Least-squares slope of log2 s_j over [slope_lo, slope_hi]
    std::optional<double> log2_slope;
    int slope_lo = 0;
    int slope_hi = 0;
};

/// Growth of s_n; slope fitted over [lo, hi] (defaults to every level with s_j > 0).
[[nodiscard]] BvReadout bv_readout(const EnergyTrace& trace, int lo = 0, int hi = 0);

struct DiagnosticOptions {
    std::vector<double> p_grid{1.0, 3.0, 4.0};
    int nu = 2;
    std::optional<double> H_candidate;
    int max_branch_n = 20;
    double bias_tol = 0.01;
};

struct DiagnosticReport {
    int depth = 0;
    std::vector<std::vector<ReverseJensenPoint>> reverse_jensen; ///< one curve per p
    std::vector<BoundedRatio> condition_a;                       ///< per level m
    std::vector<std::optional<BoundedRatio>> condition_b;        ///< per level m (nullopt if m < nu)
    std::optional<QuantileBounds> quantiles;
    std::optional<BiasReport> bias;
    BvReadout bv;
    std::vector<std::string> notes;
};

[[nodiscard]] DiagnosticReport diagnose(const FaberSchauderPyramid& pyramid, const DiagnosticOptions& options);

} // namespace hurst
