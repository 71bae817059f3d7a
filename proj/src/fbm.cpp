#include "hurst/fbm.hpp"

#include "hurst/error.hpp"
#include "hurst/numeric.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>
#include <sstream>
#include <string>

namespace hurst {

namespace {

// FFTW's planner is not reentrant; execution with new-array functions is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwBuffer {
    explicit FftwBuffer(std::size_t n) : data(fftw_alloc_complex(n)) {
        if (data == nullptr) throw std::bad_alloc();
    }
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;

    fftw_complex* data;
};

/// Autocovariance of unit-step fractional Gaussian noise.
double fgn_cov(double H, std::size_t k) {
    const double kk = static_cast<double>(k);
    const double h2 = 2.0 * H;
    if (k == 0) return 1.0;
    return 0.5 * (std::pow(kk + 1.0, h2) - 2.0 * std::pow(kk, h2) + std::pow(kk - 1.0, h2));
}

// Dense fallback is O(N^2) memory.
constexpr std::size_t kDenseMaxSteps = 4096;

} // namespace

struct FbmGenerator::Impl {
    // Circulant: sqrt(eigenvalue / M) per frequency, M = 2N.
    std::vector<double> root_eigen;
    fftw_plan plan = nullptr;
    // Dense: lower Cholesky factor of the increment covariance.
    Eigen::MatrixXd chol;

    ~Impl() { release_plan(); }

    void release_plan() {
        if (plan != nullptr) {
            std::lock_guard lock(planner_mutex());
            fftw_destroy_plan(plan);
            plan = nullptr;
        }
    }

    bool build_circulant(double H, std::size_t N);
    bool build_dense(double H, std::size_t N);
};

bool FbmGenerator::Impl::build_circulant(double H, std::size_t N) {
    auto& impl = *this;
    const std::size_t M = 2 * N;
    FftwBuffer buf(M);
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(M), buf.data, buf.data, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    if (plan == nullptr) return false;
    impl.plan = plan;

    for (std::size_t j = 0; j < M; ++j) {
        const std::size_t lag = j <= N ? j : M - j;
        buf.data[j][0] = fgn_cov(H, lag);
        buf.data[j][1] = 0.0;
    }
    fftw_execute_dft(plan, buf.data, buf.data);

    double largest = 0.0;
    for (std::size_t j = 0; j < M; ++j) largest = std::max(largest, std::abs(buf.data[j][0]));
    impl.root_eigen.resize(M);
    for (std::size_t j = 0; j < M; ++j) {
        double lam = buf.data[j][0];
        if (lam < 0.0) {
            // Rounding noise only; a genuinely negative spectrum means the embedding fails.
            if (lam < -1e-10 * largest) return false;
            lam = 0.0;
        }
        impl.root_eigen[j] = std::sqrt(lam / static_cast<double>(M));
    }
    return true;
}

bool FbmGenerator::Impl::build_dense(double H, std::size_t N) {
    auto& impl = *this;
    if (N > kDenseMaxSteps) return false;
    const auto n = static_cast<Eigen::Index>(N);
    Eigen::MatrixXd cov(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) cov(i, j) = fgn_cov(H, static_cast<std::size_t>(std::abs(i - j)));
    }
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) return false;
    impl.chol = llt.matrixL();
    return true;
}

FbmGenerator::FbmGenerator(double H, std::size_t num_steps, double horizon, FbmMethod method)
    : H_(H), steps_(num_steps), horizon_(horizon), method_(method), impl_(std::make_unique<Impl>()) {
    if (!(H > 0.0 && H < 1.0)) throw Error(ErrorCode::InvalidH, "H must lie in (0, 1), got " + std::to_string(H));
    if (num_steps == 0) throw Error(ErrorCode::InvalidArgument, "fBm needs at least one step");
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw Error(ErrorCode::InvalidArgument, "horizon must be positive");

    if (method != FbmMethod::Dense && impl_->build_circulant(H, num_steps)) {
        method_ = FbmMethod::Circulant;
        return;
    }
    if (method == FbmMethod::Circulant) {
        throw Error(ErrorCode::EmbeddingFailure, "circulant embedding has a negative eigenvalue");
    }
    impl_->release_plan();
    if (!impl_->build_dense(H, num_steps)) {
        throw Error(ErrorCode::EmbeddingFailure,
                    "neither circulant embedding nor dense factorization succeeded for H = " + std::to_string(H));
    }
    method_ = FbmMethod::Dense;
}

FbmGenerator::~FbmGenerator() = default;
FbmGenerator::FbmGenerator(FbmGenerator&&) noexcept = default;
FbmGenerator& FbmGenerator::operator=(FbmGenerator&&) noexcept = default;

std::vector<double> FbmGenerator::sample(std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    const std::size_t N = steps_;
    std::vector<double> noise(N);

    if (method_ == FbmMethod::Circulant) {
        const std::size_t M = 2 * N;
        FftwBuffer buf(M);
        for (std::size_t j = 0; j < M; ++j) {
            const double a = normal(rng);
            const double b = normal(rng);
            buf.data[j][0] = impl_->root_eigen[j] * a;
            buf.data[j][1] = impl_->root_eigen[j] * b;
        }
        fftw_execute_dft(impl_->plan, buf.data, buf.data);
        for (std::size_t j = 0; j < N; ++j) noise[j] = buf.data[j][0];
    } else {
        Eigen::VectorXd z(static_cast<Eigen::Index>(N));
        for (auto& v : z) v = normal(rng);
        const Eigen::VectorXd y = impl_->chol.triangularView<Eigen::Lower>() * z;
        for (std::size_t j = 0; j < N; ++j) noise[j] = y(static_cast<Eigen::Index>(j));
    }

    // Unit-step fGn scaled to step horizon / N by self-similarity.
    const double scale = std::pow(horizon_ / static_cast<double>(N), H_);
    std::vector<double> path(N + 1);
    path[0] = 0.0;
    double acc = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        acc += scale * noise[j];
        path[j + 1] = acc;
    }
    return path;
}

DyadicSeries fbm_path(double H, int n, std::uint64_t seed) {
    if (n < 1 || n > 20) throw Error(ErrorCode::InvalidArgument, "fBm resolution must lie in [1, 20]");
    const FbmGenerator gen(H, std::size_t{1} << n);
    return DyadicSeries::from_samples(gen.sample(seed), n);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) noexcept {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(master) ^ stream) ^ index);
}

DyadicSeries standardized(const DyadicSeries& series) {
    const auto v = series.values();
    const double mean = compensated_sum(v) / static_cast<double>(v.size());
    CompensatedSum ss;
    for (double x : v) ss.add((x - mean) * (x - mean));
    const double sd = std::sqrt(ss.value() / static_cast<double>(v.size()));
    if (!(sd > 0.0)) throw Error(ErrorCode::DegeneratePath, "constant path cannot be standardized");
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - mean) / sd;
    return DyadicSeries::from_samples(std::move(out), series.resolution());
}

std::string describe(const EstimatorConfig& config) {
    std::ostringstream os;
    os << to_string(config.kind);
    if (config.kind == EstimatorKind::SimpleRegression) {
        os << " K=";
        for (std::size_t i = 0; i < config.K.size(); ++i) os << (i ? ";" : "") << config.K[i];
        os << " Q=";
        for (std::size_t i = 0; i < config.Q.size(); ++i) os << (i ? ";" : "") << config.Q[i];
    } else if (config.kind != EstimatorKind::Gladyshev) {
        os << " m=" << config.profile.m() << " alpha=";
        const auto a = config.profile.alpha();
        for (std::size_t i = 0; i < a.size(); ++i) os << (i ? ";" : "") << a[i];
    }
    if (config.standardize) os << " standardized";
    return os.str();
}

double evaluate(const EstimatorConfig& config, const DyadicSeries& path, int n) {
    if (config.standardize) {
        EstimatorConfig raw = config;
        raw.standardize = false;
        return evaluate(raw, standardized(path), n);
    }
    if (config.kind == EstimatorKind::SimpleRegression) return simple_regression(path, n, config.K, config.Q).H;
    return estimate(config.kind, path, n, config.profile).H;
}

std::vector<McSummary> monte_carlo(const std::vector<EstimatorConfig>& configs, const std::vector<double>& H_list,
                                   std::size_t paths, int n, std::uint64_t seed, const MonteCarloOptions& options) {
    if (paths < 1) throw Error(ErrorCode::InvalidArgument, "paths must be at least 1");
    if (configs.empty()) throw Error(ErrorCode::InvalidArgument, "no estimator configured");
    if (n < 1 || n > 20) throw Error(ErrorCode::InvalidArgument, "fBm resolution must lie in [1, 20]");

    std::vector<McSummary> out;
    for (std::size_t h = 0; h < H_list.size(); ++h) {
        const FbmGenerator gen(H_list[h], std::size_t{1} << n);
        const std::size_t C = configs.size();
        // estimates[i * C + c]; failures recorded per slot.
        std::vector<double> estimates(paths * C, 0.0);
        std::vector<std::string> errors(paths * C);
        std::vector<char> failed(paths * C, 0);

        parallel_for(
            paths,
            [&](std::size_t i) {
                const auto path = DyadicSeries::from_samples(gen.sample(derive_seed(seed, h, i)), n);
                for (std::size_t c = 0; c < C; ++c) {
                    try {
                        estimates[i * C + c] = evaluate(configs[c], path, n);
                    } catch (const Error& e) {
                        failed[i * C + c] = 1;
                        errors[i * C + c] = e.what();
                    }
                }
            },
            options.threads);

        for (std::size_t c = 0; c < C; ++c) {
            McSummary s;
            s.config = configs[c];
            s.n = n;
            s.H_true = H_list[h];
            s.seed = seed;
            CompensatedSum sum;
            bool first = true;
            for (std::size_t i = 0; i < paths; ++i) {
                if (failed[i * C + c]) {
                    ++s.failures;
                    s.failure_log.push_back("path " + std::to_string(i) + ": " + errors[i * C + c]);
                    continue;
                }
                const double v = estimates[i * C + c];
                ++s.paths;
                sum.add(v);
                s.min = first ? v : std::min(s.min, v);
                s.max = first ? v : std::max(s.max, v);
                first = false;
            }
            if (s.paths > 0) {
                s.mean = sum.value() / static_cast<double>(s.paths);
                CompensatedSum ss;
                for (std::size_t i = 0; i < paths; ++i) {
                    if (!failed[i * C + c]) ss.add((estimates[i * C + c] - s.mean) * (estimates[i * C + c] - s.mean));
                }
                // Sample SD; a single path has zero spread.
                s.sd = s.paths > 1 ? std::sqrt(ss.value() / static_cast<double>(s.paths - 1)) : 0.0;
                // Keep min <= mean <= max against the last-bit rounding of the mean.
                s.mean = std::clamp(s.mean, s.min, s.max);
            }
            out.push_back(std::move(s));
        }
    }
    return out;
}

} // namespace hurst
