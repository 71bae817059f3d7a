#include "hurst/rolling.hpp"

#include "hurst/error.hpp"
#include "hurst/numeric.hpp"

#include <optional>
#include <string>

namespace hurst {

WindowGrid WindowGrid::make(std::size_t series_length, int n, std::vector<std::size_t> offsets) {
    if (n < 1 || n > 30) throw Error(ErrorCode::InvalidArgument, "window resolution must be in [1, 30]");
    const std::size_t len = (std::size_t{1} << n) + 1;
    if (offsets.empty()) throw Error(ErrorCode::InvalidArgument, "window grid is empty");
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        if (i > 0 && offsets[i] <= offsets[i - 1]) {
            throw Error(ErrorCode::InvalidArgument, "window offsets must be strictly increasing");
        }
        if (offsets[i] + len > series_length) {
            throw Error(ErrorCode::OutOfBounds, "window at offset " + std::to_string(offsets[i]) +
                                                    " runs past the end of the series");
        }
    }
    const std::size_t stride = offsets.size() > 1 ? offsets[1] - offsets[0] : 0;
    return WindowGrid(n, stride, std::move(offsets));
}

WindowGrid WindowGrid::maximal(std::size_t series_length, int n, std::size_t stride) {
    if (n < 1 || n > 30) throw Error(ErrorCode::InvalidArgument, "window resolution must be in [1, 30]");
    if (stride == 0) throw Error(ErrorCode::InvalidArgument, "stride must be positive");
    const std::size_t len = (std::size_t{1} << n) + 1;
    if (series_length < len) {
        throw Error(ErrorCode::SeriesTooShort, "series of " + std::to_string(series_length) +
                                                   " samples is shorter than one window of " + std::to_string(len));
    }
    std::vector<std::size_t> offsets;
    for (std::size_t start = 0; start + len <= series_length; start += stride) offsets.push_back(start);
    return WindowGrid(n, stride, std::move(offsets));
}

DyadicSeries extract_window(std::span<const double> series, std::size_t start, int n) {
    if (n < 1 || n > 30) throw Error(ErrorCode::InvalidArgument, "window resolution must be in [1, 30]");
    const std::size_t len = (std::size_t{1} << n) + 1;
    if (start > series.size() || series.size() - start < len) {
        throw Error(ErrorCode::OutOfBounds, "window [" + std::to_string(start) + ", " +
                                                std::to_string(start + len) + ") exceeds series of length " +
                                                std::to_string(series.size()));
    }
    return DyadicSeries::from_samples(series.subspan(start, len), n);
}

RollingReport t_adjusted(std::span<const double> series, const WindowGrid& grid, const WeightProfile& profile,
                         EstimatorKind kind, const RollingOptions& options) {
    if (kind != EstimatorKind::Sequential && kind != EstimatorKind::Terminal) {
        throw Error(ErrorCode::InvalidArgument, "T-adjusted estimation supports sequential and terminal only");
    }
    const int n = grid.n();
    const auto terms = kind == EstimatorKind::Sequential ? sequential_terms(n, profile) : terminal_terms(n, profile);
    const int lo = n - profile.m() - 1;

    RollingReport report;
    report.grid = grid;
    report.kind = kind;
    report.profile = profile;
    report.n = n;
    report.windows.resize(grid.size());

    std::vector<std::optional<GladyshevSequence>> sequences(grid.size());
    parallel_for(
        grid.size(),
        [&](std::size_t i) {
            auto& w = report.windows[i];
            w.offset = grid.offsets()[i];
            const auto window = extract_window(series, w.offset, n);
            GladyshevSequence seq;
            try {
                seq = gladyshev_sequence(energy_trace(fs_analyze(window)), lo, n);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::DegeneratePath) throw;
                if (!options.skip_degenerate) {
                    throw Error(ErrorCode::DegeneratePath,
                                "window at offset " + std::to_string(w.offset) + " has zero energy");
                }
                w.skipped = true;
                w.diagnostic = "zero Faber-Schauder energy below level " + std::to_string(lo);
                return;
            }
            w.gladyshev = seq.at(n);
            w.log2_lambda = solve_log_scale(seq, terms);
            w.raw = w.gladyshev - w.log2_lambda / n;
            sequences[i] = std::move(seq);
        },
        options.threads);

    CompensatedSum phi_sum;
    std::vector<GladyshevSequence> used;
    used.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (report.windows[i].skipped) {
            ++report.skipped;
            continue;
        }
        phi_sum.add(report.windows[i].log2_lambda);
        used.push_back(std::move(*sequences[i]));
    }
    if (used.empty()) throw Error(ErrorCode::DegeneratePath, "every window has zero energy");

    report.shared_log2_lambda = phi_sum.value() / static_cast<double>(used.size());
    report.pooled_log2_lambda = solve_pooled_log_scale(used, terms);
    for (auto& w : report.windows) {
        if (!w.skipped) w.adjusted = w.gladyshev - report.shared_log2_lambda / n;
    }
    if (report.skipped > 0) {
        report.warnings.push_back(std::to_string(report.skipped) + " flat window(s) skipped");
    }
    return report;
}

RollingReport rolling_monitor(std::span<const double> series, int window_n, std::size_t stride,
                              const WeightProfile& profile, EstimatorKind kind, const MonitorOptions& options) {
    if (window_n < 1 || window_n > 30) throw Error(ErrorCode::InvalidArgument, "window resolution must be in [1, 30]");
    const std::size_t len = (std::size_t{1} << window_n) + 1;
    if (series.size() < len) {
        throw Error(ErrorCode::SeriesTooShort, "series of " + std::to_string(series.size()) +
                                                   " samples is shorter than one window of " + std::to_string(len));
    }
    if (stride == 0) throw Error(ErrorCode::InvalidArgument, "stride must be positive");

    std::vector<std::string> warnings;
    const std::size_t admissible = (series.size() - len) / stride + 1;
    if (options.max_windows > 0 && admissible > options.max_windows) {
        const std::size_t widened = stride * ((admissible + options.max_windows - 1) / options.max_windows);
        warnings.push_back("window count " + std::to_string(admissible) + " exceeds cap " +
                           std::to_string(options.max_windows) + "; stride widened from " + std::to_string(stride) +
                           " to " + std::to_string(widened));
        stride = widened;
    }

    const auto grid = WindowGrid::maximal(series.size(), window_n, stride);
    auto report = t_adjusted(series, grid, profile, kind, RollingOptions{true, options.threads});
    report.warnings.insert(report.warnings.begin(), warnings.begin(), warnings.end());
    return report;
}

} // namespace hurst
