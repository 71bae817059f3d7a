#include "hurst/estimators.hpp"

#include "hurst/error.hpp"
#include "hurst/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace hurst {

std::string_view to_string(EstimatorKind kind) noexcept {
    switch (kind) {
    case EstimatorKind::Gladyshev: return "gladyshev";
    case EstimatorKind::Sequential: return "sequential";
    case EstimatorKind::Terminal: return "terminal";
    case EstimatorKind::Regression: return "regression";
    case EstimatorKind::Generalized: return "generalized";
    case EstimatorKind::SimpleRegression: return "simple_regression";
    }
    return "unknown";
}

EstimatorKind parse_estimator_kind(std::string_view name) {
    for (auto kind : {EstimatorKind::Gladyshev, EstimatorKind::Sequential, EstimatorKind::Terminal,
                      EstimatorKind::Regression, EstimatorKind::Generalized, EstimatorKind::SimpleRegression}) {
        if (name == to_string(kind)) return kind;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown estimator kind '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// WeightProfile

WeightProfile WeightProfile::make(std::vector<double> alpha) {
    if (alpha.empty()) throw Error(ErrorCode::InvalidProfile, "weight profile needs at least alpha_0");
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        if (!std::isfinite(alpha[k]) || alpha[k] < 0.0) {
            throw Error(ErrorCode::InvalidProfile, "alpha_" + std::to_string(k) + " must be finite and >= 0");
        }
    }
    if (!(alpha[0] > 0.0)) throw Error(ErrorCode::InvalidProfile, "alpha_0 must be positive");
    return WeightProfile(std::move(alpha));
}

WeightProfile WeightProfile::uniform(int m) {
    if (m < 0) throw Error(ErrorCode::InvalidProfile, "m must be >= 0");
    return make(std::vector<double>(static_cast<std::size_t>(m) + 1, 1.0));
}

WeightProfile WeightProfile::geometric(int m, double ratio) {
    if (m < 0) throw Error(ErrorCode::InvalidProfile, "m must be >= 0");
    if (!(ratio > 0.0) || !std::isfinite(ratio)) {
        throw Error(ErrorCode::InvalidProfile, "geometric ratio must be positive");
    }
    std::vector<double> alpha(static_cast<std::size_t>(m) + 1);
    double w = 1.0;
    for (auto& a : alpha) {
        a = w;
        w *= ratio;
    }
    return make(std::move(alpha));
}

double WeightProfile::get_or_zero(int k) const noexcept {
    if (k < 0 || k > m()) return 0.0;
    return alpha_[static_cast<std::size_t>(k)];
}

double WeightProfile::total() const noexcept { return compensated_sum(alpha_); }

WeightProfile WeightProfile::normalized() const {
    const double t = total();
    std::vector<double> out(alpha_);
    for (auto& a : out) a /= t;
    return WeightProfile(std::move(out));
}

bool WeightProfile::is_normalized(double tol) const noexcept { return std::abs(total() - 1.0) <= tol; }

// ---------------------------------------------------------------------------
// Gladyshev

double GladyshevSequence::at(int n) const {
    if (n < first || n > last()) {
        throw Error(ErrorCode::IndexOutOfRange, "H_" + std::to_string(n) + " not in sequence [" +
                                                    std::to_string(first) + ", " + std::to_string(last()) + "]");
    }
    return values[static_cast<std::size_t>(n - first)];
}

double gladyshev(const EnergyTrace& trace, int n) {
    if (n < 1 || n > trace.depth()) {
        throw Error(ErrorCode::LevelExceedsResolution, "level " + std::to_string(n) + " outside [1, " +
                                                           std::to_string(trace.depth()) + "]");
    }
    const double s = trace.s(n);
    if (!(s > 0.0)) {
        throw Error(ErrorCode::DegeneratePath, "s_" + std::to_string(n) + " = 0 (path is affine on the grid)");
    }
    return 1.0 - std::log2(s) / n;
}

double gladyshev(const DyadicSeries& series, int n) {
    if (n < 1 || n > series.resolution()) {
        throw Error(ErrorCode::LevelExceedsResolution, "level " + std::to_string(n) + " outside [1, " +
                                                           std::to_string(series.resolution()) + "]");
    }
    return gladyshev(energy_trace(fs_analyze(series.coarsened(n))), n);
}

GladyshevSequence gladyshev_sequence(const EnergyTrace& trace, int n_lo, int n_hi) {
    if (n_lo < 1 || n_lo > n_hi || n_hi > trace.depth()) {
        throw Error(ErrorCode::LevelExceedsResolution, "need 1 <= n_lo <= n_hi <= " + std::to_string(trace.depth()));
    }
    GladyshevSequence seq;
    seq.first = n_lo;
    seq.values.reserve(static_cast<std::size_t>(n_hi - n_lo + 1));
    for (int n = n_lo; n <= n_hi; ++n) seq.values.push_back(gladyshev(trace, n));
    return seq;
}

GladyshevSequence gladyshev_sequence(const DyadicSeries& series, int n_lo, int n_hi) {
    if (n_hi > series.resolution()) {
        throw Error(ErrorCode::LevelExceedsResolution, "n_hi exceeds series resolution");
    }
    return gladyshev_sequence(energy_trace(fs_analyze(series)), n_lo, n_hi);
}

// ---------------------------------------------------------------------------
// Scale objectives

namespace {

void require_window(int n, const WeightProfile& profile) {
    if (profile.alpha().empty()) throw Error(ErrorCode::InvalidProfile, "empty weight profile");
    if (n < profile.m() + 2) {
        throw Error(ErrorCode::WindowTooDeep, "n = " + std::to_string(n) + " needs n >= m + 2 = " +
                                                  std::to_string(profile.m() + 2));
    }
}

void require_covers(const GladyshevSequence& seq, int lo, int hi) {
    if (seq.first > lo || seq.last() < hi) {
        throw Error(ErrorCode::InvalidArgument, "estimator needs H_" + std::to_string(lo) + ".." +
                                                    "H_" + std::to_string(hi) + ", sequence holds H_" +
                                                    std::to_string(seq.first) + "..H_" + std::to_string(seq.last()));
    }
}

/// d/dphi of (H_u(2^phi x) - H_l(2^phi x)) = 1/l - 1/u.
double term_slope(const PairTerm& t) { return 1.0 / t.lower - 1.0 / t.upper; }

double quadratic_coefficient(std::span<const PairTerm> terms) {
    CompensatedSum c;
    for (const auto& t : terms) {
        const double b = term_slope(t);
        c.add(t.weight * b * b);
    }
    return c.value();
}

void validate_terms(std::span<const PairTerm> terms) {
    if (terms.empty()) throw Error(ErrorCode::DegenerateDesign, "scale objective has no terms");
    for (const auto& t : terms) {
        if (t.lower < 1 || t.upper <= t.lower) {
            throw Error(ErrorCode::InvalidArgument, "pair terms need upper > lower >= 1");
        }
        if (!std::isfinite(t.weight) || t.weight < 0.0) {
            throw Error(ErrorCode::InvalidProfile, "pair weights must be finite and >= 0");
        }
    }
}

/// Weights of H_n - phi/n as a combination of H_first..H_n, where
/// phi = -(1/C) sum_i w_i b_i (H_{u_i} - H_{l_i}).
std::vector<double> realized_weights(int n, int first, std::span<const PairTerm> terms, double C) {
    std::vector<double> w(static_cast<std::size_t>(n - first + 1), 0.0);
    w.back() = 1.0;
    for (const auto& t : terms) {
        const double g = t.weight * term_slope(t) / (n * C);
        w[static_cast<std::size_t>(t.upper - first)] += g;
        w[static_cast<std::size_t>(t.lower - first)] -= g;
    }
    return w;
}

ScaleEstimate from_terms(const GladyshevSequence& seq, int n, std::span<const PairTerm> terms, EstimatorKind kind) {
    validate_terms(terms);
    int lo = n;
    for (const auto& t : terms) {
        if (t.upper > n) throw Error(ErrorCode::InvalidArgument, "pair index exceeds n");
        lo = std::min(lo, t.lower);
    }
    require_covers(seq, lo, n);
    const double C = quadratic_coefficient(terms);
    if (!(C > 0.0)) throw Error(ErrorCode::DegenerateDesign, "scale objective is flat in log2(lambda)");

    ScaleEstimate out;
    out.kind = kind;
    out.n = n;
    out.log2_lambda = solve_log_scale(seq, terms);
    out.H = seq.at(n) - out.log2_lambda / n;
    out.first_index = lo;
    out.weights = realized_weights(n, lo, terms, C);
    return out;
}

int lowest_needed(int n, std::span<const PairTerm> terms) {
    int lo = n;
    for (const auto& t : terms) lo = std::min(lo, t.lower);
    return lo;
}

GladyshevSequence sequence_for(const DyadicSeries& series, int lo, int n) {
    if (n > series.resolution()) {
        throw Error(ErrorCode::LevelExceedsResolution, "n = " + std::to_string(n) + " exceeds resolution " +
                                                           std::to_string(series.resolution()));
    }
    if (lo < 1) throw Error(ErrorCode::WindowTooDeep, "estimator would need H_k with k < 1");
    return gladyshev_sequence(energy_trace(fs_analyze(series.coarsened(n))), lo, n);
}

} // namespace

std::vector<PairTerm> sequential_terms(int n, const WeightProfile& profile) {
    require_window(n, profile);
    std::vector<PairTerm> terms;
    for (int k = n - profile.m(); k <= n; ++k) terms.push_back({k, k - 1, profile[n - k]});
    return terms;
}

std::vector<PairTerm> terminal_terms(int n, const WeightProfile& profile) {
    require_window(n, profile);
    std::vector<PairTerm> terms;
    for (int k = n - profile.m(); k <= n; ++k) terms.push_back({n, k - 1, profile[n - k]});
    return terms;
}

double solve_log_scale(const GladyshevSequence& seq, std::span<const PairTerm> terms) {
    return solve_pooled_log_scale(std::span<const GladyshevSequence>(&seq, 1), terms);
}

double solve_pooled_log_scale(std::span<const GladyshevSequence> windows, std::span<const PairTerm> terms) {
    validate_terms(terms);
    if (windows.empty()) throw Error(ErrorCode::InvalidArgument, "no windows to pool");
    const double C = quadratic_coefficient(terms);
    if (!(C > 0.0)) throw Error(ErrorCode::DegenerateDesign, "scale objective is flat in log2(lambda)");
    // Objective sum_j sum_i w_i (a_ij + phi b_i)^2 with a_ij = H_u - H_l on window j.
    CompensatedSum linear;
    for (const auto& seq : windows) {
        for (const auto& t : terms) {
            linear.add(t.weight * term_slope(t) * (seq.at(t.upper) - seq.at(t.lower)));
        }
    }
    return -linear.value() / (static_cast<double>(windows.size()) * C);
}

ScaleEstimate sequential_scale(const GladyshevSequence& seq, int n, const WeightProfile& profile) {
    const auto terms = sequential_terms(n, profile);
    auto out = from_terms(seq, n, terms, EstimatorKind::Sequential);
    out.profile = profile;
    return out;
}

ScaleEstimate sequential_scale(const DyadicSeries& series, int n, const WeightProfile& profile) {
    require_window(n, profile);
    return sequential_scale(sequence_for(series, n - profile.m() - 1, n), n, profile);
}

ScaleEstimate terminal_scale(const GladyshevSequence& seq, int n, const WeightProfile& profile) {
    const auto terms = terminal_terms(n, profile);
    auto out = from_terms(seq, n, terms, EstimatorKind::Terminal);
    out.profile = profile;
    return out;
}

ScaleEstimate terminal_scale(const DyadicSeries& series, int n, const WeightProfile& profile) {
    require_window(n, profile);
    return terminal_scale(sequence_for(series, n - profile.m() - 1, n), n, profile);
}

ScaleEstimate generalized_scale(const GladyshevSequence& seq, int n, std::span<const PairTerm> terms) {
    return from_terms(seq, n, terms, EstimatorKind::Generalized);
}

ScaleEstimate generalized_scale(const DyadicSeries& series, int n, std::span<const PairTerm> terms) {
    validate_terms(terms);
    return generalized_scale(sequence_for(series, lowest_needed(n, terms), n), n, terms);
}

// ---------------------------------------------------------------------------
// Regression

namespace {

int positive_weight_count(const WeightProfile& profile) {
    return static_cast<int>(std::count_if(profile.alpha().begin(), profile.alpha().end(),
                                          [](double a) { return a > 0.0; }));
}

void require_regression(int n, const WeightProfile& profile) {
    if (n < profile.m() + 1) {
        throw Error(ErrorCode::WindowTooDeep, "regression needs n >= m + 1");
    }
    if (positive_weight_count(profile) < 2) {
        throw Error(ErrorCode::DegenerateDesign, "regression needs at least two levels with positive weight");
    }
}

} // namespace

ScaleEstimate regression_scale(const GladyshevSequence& seq, int n, const WeightProfile& profile) {
    require_regression(n, profile);
    const int m = profile.m();
    require_covers(seq, n - m, n);
    const WeightProfile w = profile.normalized();

    // Weighted least squares of y_k = (n-k) H_{n-k} on x_k = (n-k) with intercept phi.
    CompensatedSum sw, sx, sxx, sy, sxy;
    for (int k = 0; k <= m; ++k) {
        const double a = w[k];
        const double x = n - k;
        const double y = x * seq.at(n - k);
        sw.add(a);
        sx.add(a * x);
        sxx.add(a * x * x);
        sy.add(a * y);
        sxy.add(a * x * y);
    }
    const double det = sw.value() * sxx.value() - sx.value() * sx.value();
    if (!(det > 0.0)) throw Error(ErrorCode::DegenerateDesign, "regression design is singular");

    ScaleEstimate out;
    out.kind = EstimatorKind::Regression;
    out.n = n;
    out.H = (sw.value() * sxy.value() - sx.value() * sy.value()) / det;
    out.log2_lambda = (sxx.value() * sy.value() - sx.value() * sxy.value()) / det;
    out.first_index = n - m;
    out.weights.assign(static_cast<std::size_t>(m) + 1, 0.0);
    for (int k = 0; k <= m; ++k) {
        const double x = n - k;
        out.weights[static_cast<std::size_t>(m - k)] = w[k] * (sw.value() * x - sx.value()) * x / det;
    }
    out.profile = w;
    out.profile_normalized = !profile.is_normalized();
    return out;
}

ScaleEstimate regression_scale(const DyadicSeries& series, int n, const WeightProfile& profile) {
    require_regression(n, profile);
    return regression_scale(sequence_for(series, n - profile.m(), n), n, profile);
}

// ---------------------------------------------------------------------------
// Simple regression on power variations at lags k

double m_stat(const DyadicSeries& series, double q, long long k, int n) {
    if (n < 1 || n > series.resolution()) {
        throw Error(ErrorCode::LevelExceedsResolution, "level " + std::to_string(n) + " outside series resolution");
    }
    const long long top = 1LL << n;
    if (k < 1 || k > top) {
        throw Error(ErrorCode::IndexOutOfRange, "lag k = " + std::to_string(k) + " outside [1, 2^n]");
    }
    if (!(q > 0.0)) throw Error(ErrorCode::InvalidP, "q must be positive");
    const long long count = top / k;
    CompensatedSum acc;
    for (long long j = 1; j <= count; ++j) {
        const auto hi = static_cast<std::size_t>(k * j);
        const auto lo = static_cast<std::size_t>(k * (j - 1));
        acc.add(abs_pow(series.at(n, hi) - series.at(n, lo), q));
    }
    return acc.value() / static_cast<double>(count);
}

ScaleEstimate simple_regression(const DyadicSeries& series, int n, const std::vector<long long>& K,
                                const std::vector<double>& Q) {
    if (Q.empty()) throw Error(ErrorCode::InvalidArgument, "Q must not be empty");
    const std::set<long long> distinct(K.begin(), K.end());
    if (K.size() < 2 || distinct.size() < 2) {
        throw Error(ErrorCode::DegenerateDesign, "simple regression needs at least two distinct lags");
    }

    std::vector<double> xs;
    xs.reserve(K.size());
    for (long long k : K) {
        if (k < 1) throw Error(ErrorCode::IndexOutOfRange, "lags must be positive");
        xs.push_back(std::log2(static_cast<double>(k)) - n);
    }
    double mx = 0.0;
    for (double x : xs) mx += x;
    mx /= static_cast<double>(xs.size());
    double sxx = 0.0;
    for (double x : xs) sxx += (x - mx) * (x - mx);

    double h_sum = 0.0;
    double phi_sum = 0.0;
    for (double q : Q) {
        if (!(q > 0.0)) throw Error(ErrorCode::InvalidP, "every q must be positive");
        std::vector<double> ys;
        ys.reserve(K.size());
        for (long long k : K) {
            const double mq = m_stat(series, q, k, n);
            if (!(mq > 0.0)) {
                throw Error(ErrorCode::DegeneratePath, "m(q, " + std::to_string(k) + ", n) = 0");
            }
            ys.push_back(std::log2(mq));
        }
        double my = 0.0;
        for (double y : ys) my += y;
        my /= static_cast<double>(ys.size());
        double sxy = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) sxy += (xs[i] - mx) * (ys[i] - my);
        const double slope = sxy / sxx;      // q * h
        const double intercept = my - slope * mx; // log2 b_q
        h_sum += slope / q;
        phi_sum += -intercept / q;
    }

    ScaleEstimate out;
    out.kind = EstimatorKind::SimpleRegression;
    out.n = n;
    out.H = h_sum / static_cast<double>(Q.size());
    out.log2_lambda = phi_sum / static_cast<double>(Q.size());
    return out;
}

// ---------------------------------------------------------------------------
// Closed-form weights

std::vector<double> closed_form_weights(EstimatorKind kind, int n, const WeightProfile& profile) {
    const int m = profile.m();
    switch (kind) {
    case EstimatorKind::Sequential: {
        require_window(n, profile);
        CompensatedSum cs;
        for (int k = n - m; k <= n; ++k) {
            const double kk = k;
            cs.add(profile[n - k] / (kk * kk * (kk - 1) * (kk - 1)));
        }
        const double c = cs.value();
        // index order: H_{n-m-1}, ..., H_n
        std::vector<double> beta(static_cast<std::size_t>(m) + 2);
        auto at = [&](int k) -> double& { return beta[static_cast<std::size_t>(k - (n - m - 1))]; };
        at(n) = 1.0 + profile[0] / (c * n * n * (n - 1.0));
        for (int k = n - m; k <= n - 1; ++k) {
            at(k) = (profile[n - k] / (k - 1.0) - profile[n - k - 1] / (k + 1.0)) / (c * n * k);
        }
        at(n - m - 1) = -profile[m] / (c * n * (n - m) * (n - m - 1.0));
        return beta;
    }
    case EstimatorKind::Terminal: {
        require_window(n, profile);
        CompensatedSum ct;
        for (int k = n - m; k <= n; ++k) {
            const double r = (n - k + 1.0) / (n * (k - 1.0));
            ct.add(profile[n - k] * r * r);
        }
        const double c = ct.value();
        std::vector<double> gamma(static_cast<std::size_t>(m) + 2);
        CompensatedSum diag;
        for (int j = n - m; j <= n; ++j) diag.add(profile[n - j] * (n - j + 1.0) / (j - 1.0));
        gamma.back() = 1.0 + diag.value() / (c * n * n);
        for (int k = n - m - 1; k <= n - 1; ++k) {
            gamma[static_cast<std::size_t>(k - (n - m - 1))] =
                (k - n) / (c * n * n * static_cast<double>(k)) * profile[n - k - 1];
        }
        return gamma;
    }
    case EstimatorKind::Regression: {
        require_regression(n, profile);
        const WeightProfile w = profile.normalized();
        double a = 0.0, second = 0.0;
        for (int k = 0; k <= m; ++k) {
            a += w[k] * k;
            second += w[k] * k * k;
        }
        const double cr = a * a - second;
        if (cr == 0.0) throw Error(ErrorCode::DegenerateDesign, "c^r vanishes");
        std::vector<double> out(static_cast<std::size_t>(m) + 1);
        for (int k = 0; k <= m; ++k) {
            out[static_cast<std::size_t>(m - k)] = w[k] * (n - k) * (k - a) / cr;
        }
        return out;
    }
    default:
        throw Error(ErrorCode::InvalidArgument,
                    "no closed-form weights for estimator '" + std::string(to_string(kind)) + "'");
    }
}

std::vector<double> terminal_weights_as_printed(int n, const WeightProfile& profile) {
    require_window(n, profile);
    const int m = profile.m();
    auto gamma = closed_form_weights(EstimatorKind::Terminal, n, profile);
    double c = 0.0;
    for (int k = n - m; k <= n; ++k) {
        const double r = (n - k + 1.0) / (n * (k - 1.0));
        c += profile[n - k] * r * r;
    }
    for (int k = n - m - 1; k <= n - 1; ++k) {
        gamma[static_cast<std::size_t>(k - (n - m - 1))] =
            (k - n) / (c * n * n * static_cast<double>(k)) * profile.get_or_zero(n - k + 1);
    }
    return gamma;
}

double apply_weights(const GladyshevSequence& seq, int first, std::span<const double> weights) {
    CompensatedSum acc;
    for (std::size_t i = 0; i < weights.size(); ++i) acc.add(weights[i] * seq.at(first + static_cast<int>(i)));
    return acc.value();
}

ScaleEstimate estimate(EstimatorKind kind, const DyadicSeries& series, int n, const WeightProfile& profile) {
    switch (kind) {
    case EstimatorKind::Gladyshev: {
        ScaleEstimate out;
        out.kind = kind;
        out.n = n;
        out.H = gladyshev(series, n);
        out.first_index = n;
        out.weights = {1.0};
        out.profile = profile;
        return out;
    }
    case EstimatorKind::Sequential: return sequential_scale(series, n, profile);
    case EstimatorKind::Terminal: return terminal_scale(series, n, profile);
    case EstimatorKind::Regression: return regression_scale(series, n, profile);
    default:
        throw Error(ErrorCode::InvalidArgument,
                    "estimator '" + std::string(to_string(kind)) + "' needs extra parameters");
    }
}

} // namespace hurst
