#pragma once

#include "hurst/dyadic.hpp"
#include "hurst/estimators.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hurst {

/// Window start offsets (sample indices) over a long series; every window spans
/// 2^n + 1 samples.
class WindowGrid {
public:
    WindowGrid() = default;
    /// Validates strictly increasing offsets that keep every window inside the series.
    static WindowGrid make(std::size_t series_length, int n, std::vector<std::size_t> offsets);
    /// Every admissible offset 0, stride, 2 stride, ...
    static WindowGrid maximal(std::size_t series_length, int n, std::size_t stride);

    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] std::size_t window_length() const noexcept { return (std::size_t{1} << n_) + 1; }
    [[nodiscard]] std::size_t stride() const noexcept { return stride_; }
    [[nodiscard]] std::span<const std::size_t> offsets() const noexcept { return offsets_; }
    [[nodiscard]] std::size_t size() const noexcept { return offsets_.size(); }

private:
    WindowGrid(int n, std::size_t stride, std::vector<std::size_t> offsets)
        : offsets_(std::move(offsets)), n_(n), stride_(stride) {}

    std::vector<std::size_t> offsets_;
    int n_ = 0;
    std::size_t stride_ = 0;
};

struct WindowEstimate {
    std::size_t offset = 0;
    bool skipped = false;
    std::string diagnostic;
    double gladyshev = 0.0;    ///< H_n(x_tau)
    double log2_lambda = 0.0;  ///< the window's own optimal log2 scaling factor
    double raw = 0.0;          ///< scale estimate with the window's own factor
    double adjusted = 0.0;     ///< H_n(x_tau) - shared_log2_lambda / n
};

struct RollingReport {
    WindowGrid grid;
    EstimatorKind kind = EstimatorKind::Terminal;
    WeightProfile profile;
    int n = 0;
    std::vector<WindowEstimate> windows;
    /// Mean of the per-window log2 factors over non-skipped windows.
    double shared_log2_lambda = 0.0;
    /// Direct minimizer of the pooled objective; agrees with shared_log2_lambda.
    double pooled_log2_lambda = 0.0;
    std::size_t skipped = 0;
    std::vector<std::string> warnings;
};

/// The samples [start, start + 2^n] as a unit-interval dyadic series.
[[nodiscard]] DyadicSeries extract_window(std::span<const double> series, std::size_t start, int n);

struct RollingOptions {
    /// Skip windows with zero energy (recorded per window) instead of failing.
    bool skip_degenerate = false;
    /// Worker threads for per-window analysis; 0 = default.
    std::size_t threads = 0;
};

/// T-adjusted sequential or terminal estimation over the windows of grid.
[[nodiscard]] RollingReport t_adjusted(std::span<const double> series, const WindowGrid& grid,
                                       const WeightProfile& profile, EstimatorKind kind,
                                       const RollingOptions& options = {});

struct MonitorOptions {
    /// Upper bound on the number of windows; longer series get a proportionally larger
    /// effective stride and a warning.
    std::size_t max_windows = std::size_t{1} << 20;
    std::size_t threads = 0;
};

/// Builds the maximal window grid at the given stride and runs t_adjusted on it,
/// skipping flat windows.
[[nodiscard]] RollingReport rolling_monitor(std::span<const double> series, int window_n, std::size_t stride,
                                            const WeightProfile& profile, EstimatorKind kind,
                                            const MonitorOptions& options = {});

} // namespace hurst
