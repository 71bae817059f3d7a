#include "hurst/dyadic.hpp"

#include "hurst/error.hpp"
#include "hurst/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hurst {

namespace {

constexpr int kMaxResolution = 30;

} // namespace

DyadicSeries DyadicSeries::from_samples(std::vector<double> values, int n) {
    if (n < 1 || n > kMaxResolution) {
        throw Error(ErrorCode::LengthMismatch, "resolution must be in [1, 30], got " + std::to_string(n));
    }
    const std::size_t expected = (std::size_t{1} << n) + 1;
    if (values.size() != expected) {
        throw Error(ErrorCode::LengthMismatch, "expected " + std::to_string(expected) +
                                                   " samples for resolution " + std::to_string(n) +
                                                   ", got " + std::to_string(values.size()));
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw Error(ErrorCode::NonFinite, "sample " + std::to_string(i) + " is not finite");
        }
    }
    return DyadicSeries(std::move(values), n);
}

DyadicSeries DyadicSeries::scaled(double lambda) const {
    std::vector<double> out(values_);
    for (double& v : out) v *= lambda;
    return from_samples(std::move(out), resolution_);
}

DyadicSeries DyadicSeries::affine_detrended() const {
    std::vector<double> out(values_);
    const double a = values_.front();
    const double b = values_.back();
    const double step = std::ldexp(1.0, -resolution_);
    for (std::size_t k = 0; k < out.size(); ++k) {
        const double t = static_cast<double>(k) * step;
        out[k] = values_[k] - a - t * (b - a);
    }
    out.back() = 0.0;
    return DyadicSeries(std::move(out), resolution_);
}

DyadicSeries DyadicSeries::coarsened(int n) const {
    if (n < 1 || n > resolution_) {
        throw Error(ErrorCode::LevelExceedsResolution,
                    "cannot coarsen resolution " + std::to_string(resolution_) + " to " + std::to_string(n));
    }
    const std::size_t count = (std::size_t{1} << n) + 1;
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) out[k] = at(n, k);
    return DyadicSeries(std::move(out), n);
}

FaberSchauderPyramid::FaberSchauderPyramid(double x0, double slope, std::vector<double> theta, int depth)
    : x0_(x0), slope_(slope), theta_(std::move(theta)), depth_(depth) {
    if (depth < 0 || depth > kMaxResolution) {
        throw Error(ErrorCode::InvalidArgument, "pyramid depth out of range");
    }
    if (theta_.size() != (std::size_t{1} << depth) - 1) {
        throw Error(ErrorCode::LengthMismatch, "pyramid of depth " + std::to_string(depth) + " needs " +
                                                   std::to_string((std::size_t{1} << depth) - 1) +
                                                   " coefficients");
    }
}

std::span<const double> FaberSchauderPyramid::level(int m) const {
    if (m < 0 || m >= depth_) {
        throw Error(ErrorCode::IndexOutOfRange, "level " + std::to_string(m) + " outside pyramid");
    }
    const std::size_t offset = (std::size_t{1} << m) - 1;
    return {theta_.data() + offset, std::size_t{1} << m};
}

std::span<double> FaberSchauderPyramid::level(int m) {
    if (m < 0 || m >= depth_) {
        throw Error(ErrorCode::IndexOutOfRange, "level " + std::to_string(m) + " outside pyramid");
    }
    const std::size_t offset = (std::size_t{1} << m) - 1;
    return {theta_.data() + offset, std::size_t{1} << m};
}

EnergyTrace::EnergyTrace(std::vector<double> s) : s_(std::move(s)) {}

double EnergyTrace::s(int j) const {
    if (j < 1 || j > depth()) {
        throw Error(ErrorCode::IndexOutOfRange, "s_" + std::to_string(j) + " outside trace");
    }
    return s_[static_cast<std::size_t>(j - 1)];
}

std::optional<double> EnergyTrace::xi(int j) const {
    const double sj = s(j);
    if (!(sj > 0.0)) return std::nullopt;
    return std::log2(sj) / j;
}

FaberSchauderPyramid fs_analyze(const DyadicSeries& series) {
    const int n = series.resolution();
    std::vector<double> theta((std::size_t{1} << n) - 1);
    for (int m = 0; m < n; ++m) {
        const double scale = std::ldexp(std::sqrt(std::ldexp(1.0, m & 1)), m >> 1); // 2^{m/2}
        const std::size_t count = std::size_t{1} << m;
        const std::size_t offset = count - 1;
        const int shift = n - m - 1; // grid index of (2k+1) 2^{-(m+1)} is (2k+1) << shift
        for (std::size_t k = 0; k < count; ++k) {
            const double left = series[(2 * k) << shift];
            const double mid = series[(2 * k + 1) << shift];
            const double right = series[(2 * k + 2) << shift];
            theta[offset + k] = scale * (2.0 * mid - left - right);
        }
    }
    return FaberSchauderPyramid(series[0], series[series.size() - 1] - series[0], std::move(theta), n);
}

DyadicSeries fs_synthesize(const FaberSchauderPyramid& pyramid, int n) {
    if (n > pyramid.depth()) {
        throw Error(ErrorCode::DepthExceeded, "requested resolution " + std::to_string(n) +
                                                  " exceeds pyramid depth " + std::to_string(pyramid.depth()));
    }
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "synthesis resolution must be >= 1");

    // Midpoint refinement: a level-m hat contributes theta * 2^{-m/2} / 2 at the
    // new midpoints and is linear between them.
    const std::size_t count = (std::size_t{1} << n) + 1;
    std::vector<double> v(count);
    const std::size_t top = count - 1;
    v[0] = pyramid.x0();
    v[top] = pyramid.x0() + pyramid.slope();
    for (int m = 0; m < n; ++m) {
        const double half_scale = 0.5 / std::ldexp(std::sqrt(std::ldexp(1.0, m & 1)), m >> 1);
        const auto coeffs = pyramid.level(m);
        const std::size_t span = top >> m;
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            const std::size_t left = k * span;
            const std::size_t right = left + span;
            v[left + span / 2] = 0.5 * (v[left] + v[right]) + half_scale * coeffs[k];
        }
    }
    return DyadicSeries::from_samples(std::move(v), n);
}

DyadicSeries fs_synthesize(const FaberSchauderPyramid& pyramid) {
    return fs_synthesize(pyramid, pyramid.depth());
}

double fs_eval(int m, long long k, double t) {
    if (m < 0 || m > 62 || k < 0 || k > (1LL << m) - 1) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "e_{" + std::to_string(m) + "," + std::to_string(k) + "} is not a basis function");
    }
    if (!(t >= 0.0 && t <= 1.0)) {
        throw Error(ErrorCode::IndexOutOfRange, "t must lie in [0, 1]");
    }
    const double u = std::ldexp(t, m) - static_cast<double>(k);
    const double hat = std::max(std::min(u, 1.0 - u), 0.0);
    return hat / std::ldexp(std::sqrt(std::ldexp(1.0, m & 1)), m >> 1);
}

EnergyTrace energy_trace(const FaberSchauderPyramid& pyramid) {
    std::vector<double> s(static_cast<std::size_t>(pyramid.depth()));
    CompensatedSum acc;
    for (int m = 0; m < pyramid.depth(); ++m) {
        for (double th : pyramid.level(m)) acc.add(th * th);
        s[static_cast<std::size_t>(m)] = std::sqrt(acc.value());
    }
    return EnergyTrace(std::move(s));
}

} // namespace hurst
