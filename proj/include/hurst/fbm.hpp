#pragma once

#include "hurst/dyadic.hpp"
#include "hurst/estimators.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace hurst {

enum class FbmMethod {
    Auto,      ///< circulant embedding, dense Cholesky if the embedding is not nonnegative
    Circulant,
    Dense,
};

/// Exact sampler of fractional Brownian motion on [0, horizon] at num_steps equal steps.
/// Construction precomputes the circulant eigenvalues (or the Cholesky factor); sample()
/// is const and safe to call concurrently.
class FbmGenerator {
public:
    FbmGenerator(double H, std::size_t num_steps, double horizon = 1.0, FbmMethod method = FbmMethod::Auto);
    ~FbmGenerator();
    FbmGenerator(FbmGenerator&&) noexcept;
    FbmGenerator& operator=(FbmGenerator&&) noexcept;

    [[nodiscard]] double hurst() const noexcept { return H_; }
    [[nodiscard]] std::size_t num_steps() const noexcept { return steps_; }
    /// The method actually in use (never Auto).
    [[nodiscard]] FbmMethod method() const noexcept { return method_; }

    /// num_steps + 1 samples starting at B(0) = 0; deterministic per seed.
    [[nodiscard]] std::vector<double> sample(std::uint64_t seed) const;

private:
    struct Impl;
    double H_;
    std::size_t steps_;
    double horizon_;
    FbmMethod method_;
    std::unique_ptr<Impl> impl_;
};

/// fBm on [0,1] sampled at resolution n (2^n + 1 samples).
[[nodiscard]] DyadicSeries fbm_path(double H, int n, std::uint64_t seed);

/// SplitMix64-based derivation of an independent stream seed from (master, stream, index).
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) noexcept;

/// Affine standardization to empirical mean 0 and variance 1.
[[nodiscard]] DyadicSeries standardized(const DyadicSeries& series);

struct EstimatorConfig {
    EstimatorKind kind = EstimatorKind::Gladyshev;
    WeightProfile profile = WeightProfile::uniform(0);
    std::vector<long long> K;   ///< simple regression lags
    std::vector<double> Q{2.0}; ///< simple regression exponents
    bool standardize = false;   ///< standardize each path before estimating
};

[[nodiscard]] std::string describe(const EstimatorConfig& config);

struct McSummary {
    EstimatorConfig config;
    int n = 0;
    double H_true = 0.0;
    std::size_t paths = 0;    ///< successful paths
    std::size_t failures = 0;
    std::vector<std::string> failure_log;
    double mean = 0.0;
    double sd = 0.0;
    double max = 0.0;
    double min = 0.0;
    std::uint64_t seed = 0;
};

struct MonteCarloOptions {
    std::size_t threads = 0; ///< 0 = default_thread_count()
};

/// One summary per (config, H), configs varying fastest. Every config sees the same
/// paths for a given H; path i of H_list[h] uses derive_seed(seed, h, i).
[[nodiscard]] std::vector<McSummary> monte_carlo(const std::vector<EstimatorConfig>& configs,
                                                 const std::vector<double>& H_list, std::size_t paths, int n,
                                                 std::uint64_t seed, const MonteCarloOptions& options = {});

[[nodiscard]] double evaluate(const EstimatorConfig& config, const DyadicSeries& path, int n);

} // namespace hurst
