#pragma once

#include "hurst/dyadic.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace hurst {

enum class EstimatorKind { Gladyshev, Sequential, Terminal, Regression, Generalized, SimpleRegression };

[[nodiscard]] std::string_view to_string(EstimatorKind kind) noexcept;
/// Parses the lower-case names used on the command line ("terminal", "simple_regression", ...).
[[nodiscard]] EstimatorKind parse_estimator_kind(std::string_view name);

/// Weights alpha_0..alpha_m. alpha_0 > 0, the rest non-negative.
class WeightProfile {
public:
    WeightProfile() = default;
    static WeightProfile make(std::vector<double> alpha);
    static WeightProfile uniform(int m);
    /// alpha_k = ratio^k
    static WeightProfile geometric(int m, double ratio);

    [[nodiscard]] int m() const noexcept { return static_cast<int>(alpha_.size()) - 1; }
    [[nodiscard]] std::span<const double> alpha() const noexcept { return alpha_; }
    [[nodiscard]] double operator[](int k) const { return alpha_.at(static_cast<std::size_t>(k)); }
    /// alpha_k, or 0 outside 0..m.
    [[nodiscard]] double get_or_zero(int k) const noexcept;

    [[nodiscard]] double total() const noexcept;
    /// Copy rescaled so the weights sum to one.
    [[nodiscard]] WeightProfile normalized() const;
    [[nodiscard]] bool is_normalized(double tol = 1e-12) const noexcept;

    friend bool operator==(const WeightProfile&, const WeightProfile&) = default;

private:
    explicit WeightProfile(std::vector<double> alpha) : alpha_(std::move(alpha)) {}
    std::vector<double> alpha_;
};

/// (H_first, ..., H_last) Gladyshev estimates sharing one energy trace.
struct GladyshevSequence {
    int first = 1;
    std::vector<double> values;

    [[nodiscard]] int last() const noexcept { return first + static_cast<int>(values.size()) - 1; }
    [[nodiscard]] double at(int n) const;
};

struct ScaleEstimate {
    double H = 0.0;
    double log2_lambda = 0.0;
    EstimatorKind kind = EstimatorKind::Gladyshev;
    int n = 0;
    /// weights[i] multiplies H_{first_index + i}; empty for simple_regression.
    int first_index = 0;
    std::vector<double> weights;
    WeightProfile profile;
    /// Regression profiles are rescaled to sum to one; set when that changed them.
    bool profile_normalized = false;
};

/// One squared-difference term alpha * (H_upper(lambda x) - H_lower(lambda x))^2 of a
/// scale objective. upper > lower >= 1.
struct PairTerm {
    int upper = 0;
    int lower = 0;
    double weight = 0.0;
};

/// H_n = 1 - log2(s_n) / n
[[nodiscard]] double gladyshev(const DyadicSeries& series, int n);
[[nodiscard]] double gladyshev(const EnergyTrace& trace, int n);
[[nodiscard]] GladyshevSequence gladyshev_sequence(const DyadicSeries& series, int n_lo, int n_hi);
[[nodiscard]] GladyshevSequence gladyshev_sequence(const EnergyTrace& trace, int n_lo, int n_hi);

/// Terms of the sequential objective: (k, k-1, alpha_{n-k}) for k = n-m..n.
[[nodiscard]] std::vector<PairTerm> sequential_terms(int n, const WeightProfile& profile);
/// Terms of the terminal objective: (n, k-1, alpha_{n-k}) for k = n-m..n.
[[nodiscard]] std::vector<PairTerm> terminal_terms(int n, const WeightProfile& profile);

/// argmin over phi = log2(lambda) of sum_i w_i (H_{u_i}(2^phi x) - H_{l_i}(2^phi x))^2.
[[nodiscard]] double solve_log_scale(const GladyshevSequence& seq, std::span<const PairTerm> terms);
/// Same objective summed over several windows sharing one phi.
[[nodiscard]] double solve_pooled_log_scale(std::span<const GladyshevSequence> windows,
                                            std::span<const PairTerm> terms);

[[nodiscard]] ScaleEstimate sequential_scale(const GladyshevSequence& seq, int n, const WeightProfile& profile);
[[nodiscard]] ScaleEstimate sequential_scale(const DyadicSeries& series, int n, const WeightProfile& profile);
[[nodiscard]] ScaleEstimate terminal_scale(const GladyshevSequence& seq, int n, const WeightProfile& profile);
[[nodiscard]] ScaleEstimate terminal_scale(const DyadicSeries& series, int n, const WeightProfile& profile);
[[nodiscard]] ScaleEstimate regression_scale(const GladyshevSequence& seq, int n, const WeightProfile& profile);
[[nodiscard]] ScaleEstimate regression_scale(const DyadicSeries& series, int n, const WeightProfile& profile);
[[nodiscard]] ScaleEstimate generalized_scale(const GladyshevSequence& seq, int n, std::span<const PairTerm> terms);
[[nodiscard]] ScaleEstimate generalized_scale(const DyadicSeries& series, int n, std::span<const PairTerm> terms);

/// Mean of |x(kj 2^-n) - x(k(j-1) 2^-n)|^q over j = 1..floor(2^n / k).
[[nodiscard]] double m_stat(const DyadicSeries& series, double q, long long k, int n);

/// Regresses log2 m(q,k,n) on log2 k over K for each q and averages the slopes / q.
[[nodiscard]] ScaleEstimate simple_regression(const DyadicSeries& series, int n, const std::vector<long long>& K,
                                              const std::vector<double>& Q);

/// Closed-form linear weights in ascending index order: on (H_{n-m-1}, ..., H_n) for
/// sequential and terminal, on (H_{n-m}, ..., H_n) for regression (profile normalized).
[[nodiscard]] std::vector<double> closed_form_weights(EstimatorKind kind, int n, const WeightProfile& profile);

/// Terminal weights with the off-diagonal factor alpha_{n-k+1} exactly as it appears in the
/// published statement (out-of-range alphas read as zero). Kept for comparison only; it
/// does not reproduce the terminal argmin. See closed_form_weights for the correct factor.
[[nodiscard]] std::vector<double> terminal_weights_as_printed(int n, const WeightProfile& profile);

/// sum_i weights[i] * H_{first + i}
[[nodiscard]] double apply_weights(const GladyshevSequence& seq, int first, std::span<const double> weights);

/// Dispatches to the estimator of the given kind (gladyshev, sequential, terminal, regression).
[[nodiscard]] ScaleEstimate estimate(EstimatorKind kind, const DyadicSeries& series, int n,
                                     const WeightProfile& profile);

} // namespace hurst
