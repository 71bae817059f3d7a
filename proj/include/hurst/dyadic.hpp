#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace hurst {

/// A path sampled on the dyadic grid {k 2^-n : k = 0..2^n} of the unit interval.
class DyadicSeries {
public:
    /// Validates length == 2^n + 1 and finiteness of every sample.
    static DyadicSeries from_samples(std::vector<double> values, int n);
    static DyadicSeries from_samples(std::span<const double> values, int n) {
        return from_samples(std::vector<double>(values.begin(), values.end()), n);
    }

    [[nodiscard]] int resolution() const noexcept { return resolution_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t k) const noexcept { return values_[k]; }

    /// Value at grid point k 2^-level; requires level <= resolution.
    [[nodiscard]] double at(int level, std::size_t k) const noexcept {
        return values_[k << (resolution_ - level)];
    }

    [[nodiscard]] DyadicSeries scaled(double lambda) const;
    /// x(t) - x(0) - t (x(1) - x(0)); pins both endpoints at zero.
    [[nodiscard]] DyadicSeries affine_detrended() const;
    /// Subsample onto the coarser grid of resolution n <= resolution().
    [[nodiscard]] DyadicSeries coarsened(int n) const;

private:
    DyadicSeries(std::vector<double> values, int n) : values_(std::move(values)), resolution_(n) {}

    std::vector<double> values_;
    int resolution_ = 0;
};

/// Faber-Schauder coefficients of a dyadic series:
///   x = x0 + slope * t + sum_{m<depth} sum_k theta_{m,k} e_{m,k}
/// on the grid of resolution depth. Level m holds 2^m coefficients.
class FaberSchauderPyramid {
public:
    FaberSchauderPyramid() = default;
    /// Builds a pyramid from explicit coefficients; theta.size() must be 2^depth - 1
    /// laid out level by level.
    FaberSchauderPyramid(double x0, double slope, std::vector<double> theta, int depth);

    [[nodiscard]] int depth() const noexcept { return depth_; }
    [[nodiscard]] double x0() const noexcept { return x0_; }
    [[nodiscard]] double slope() const noexcept { return slope_; }

    [[nodiscard]] std::span<const double> level(int m) const;
    [[nodiscard]] std::span<double> level(int m);
    [[nodiscard]] double theta(int m, std::size_t k) const { return level(m)[k]; }
    [[nodiscard]] std::span<const double> coefficients() const noexcept { return theta_; }

private:
    double x0_ = 0.0;
    double slope_ = 0.0;
    std::vector<double> theta_;
    int depth_ = 0;
};

/// s_j = sqrt(sum_{m<j} sum_k theta_{m,k}^2) and xi_j = log2(s_j) / j for j = 1..depth.
class EnergyTrace {
public:
    EnergyTrace() = default;
    explicit EnergyTrace(std::vector<double> s);

    [[nodiscard]] int depth() const noexcept { return static_cast<int>(s_.size()); }
    /// s_j for 1 <= j <= depth.
    [[nodiscard]] double s(int j) const;
    /// xi_j, or nullopt when s_j == 0.
    [[nodiscard]] std::optional<double> xi(int j) const;
    [[nodiscard]] std::span<const double> s_values() const noexcept { return s_; }

private:
    std::vector<double> s_;
};

[[nodiscard]] FaberSchauderPyramid fs_analyze(const DyadicSeries& series);
[[nodiscard]] DyadicSeries fs_synthesize(const FaberSchauderPyramid& pyramid, int n);
[[nodiscard]] DyadicSeries fs_synthesize(const FaberSchauderPyramid& pyramid);

/// The Faber-Schauder hat e_{m,k}(t) = 2^{-m/2} e_{0,0}(2^m t - k).
[[nodiscard]] double fs_eval(int m, long long k, double t);

[[nodiscard]] EnergyTrace energy_trace(const FaberSchauderPyramid& pyramid);

} // namespace hurst
