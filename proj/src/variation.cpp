#include "hurst/variation.hpp"

#include "hurst/error.hpp"
#include "hurst/numeric.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace hurst {

namespace {

void check_p(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw Error(ErrorCode::InvalidP, "p must be positive and finite, got " + std::to_string(p));
    }
}

void check_level(const DyadicSeries& series, int n) {
    if (n < 1 || n > series.resolution()) {
        throw Error(ErrorCode::LevelExceedsResolution, "level " + std::to_string(n) + " outside [1, " +
                                                           std::to_string(series.resolution()) + "]");
    }
}

std::optional<double> least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() < 2) return std::nullopt;
    const double nx = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= nx;
    my /= nx;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) return std::nullopt;
    return sxy / sxx;
}

} // namespace

double pth_variation(const DyadicSeries& series, double p, int n) {
    check_p(p);
    check_level(series, n);
    const std::size_t count = std::size_t{1} << n;
    CompensatedSum acc;
    for (std::size_t k = 0; k < count; ++k) {
        acc.add(abs_pow(series.at(n, k + 1) - series.at(n, k), p));
    }
    return acc.value();
}

VariationProfile variation_profile(const DyadicSeries& series, const std::vector<double>& p_grid,
                                   const std::vector<int>& levels) {
    if (!std::is_sorted(levels.begin(), levels.end()) ||
        std::adjacent_find(levels.begin(), levels.end()) != levels.end()) {
        throw Error(ErrorCode::InvalidArgument, "levels must be strictly increasing");
    }
    VariationProfile out;
    out.levels = levels;
    out.p_grid = p_grid;
    out.values.assign(levels.size(), std::vector<double>(p_grid.size()));
    for (std::size_t i = 0; i < levels.size(); ++i) {
        for (std::size_t j = 0; j < p_grid.size(); ++j) {
            out.values[i][j] = pth_variation(series, p_grid[j], levels[i]);
        }
    }

    if (levels.size() >= 2) {
        out.slopes.assign(levels.size() - 1, std::vector<std::optional<double>>(p_grid.size()));
        for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
            for (std::size_t j = 0; j < p_grid.size(); ++j) {
                const double a = out.values[i][j];
                const double b = out.values[i + 1][j];
                if (a > 0.0 && b > 0.0) {
                    out.slopes[i][j] = (std::log2(b) - std::log2(a)) / (levels[i + 1] - levels[i]);
                }
            }
        }
    }

    out.fitted_slope.resize(p_grid.size());
    for (std::size_t j = 0; j < p_grid.size(); ++j) {
        std::vector<double> xs, ys;
        bool ok = true;
        for (std::size_t i = 0; i < levels.size(); ++i) {
            if (!(out.values[i][j] > 0.0)) {
                ok = false;
                break;
            }
            xs.push_back(levels[i]);
            ys.push_back(std::log2(out.values[i][j]));
        }
        if (ok) out.fitted_slope[j] = least_squares_slope(xs, ys);
    }
    return out;
}

double branch_moment(const FaberSchauderPyramid& pyramid, int n, double p, int max_n) {
    check_p(p);
    if (n < 1 || n > pyramid.depth()) {
        throw Error(ErrorCode::LevelExceedsResolution, "branch depth " + std::to_string(n) +
                                                           " outside [1, " + std::to_string(pyramid.depth()) + "]");
    }
    if (n > max_n) {
        throw Error(ErrorCode::ResourceLimit, "enumerating 2^" + std::to_string(n - 1) +
                                                  " branches exceeds the cap n <= " + std::to_string(max_n));
    }

    // weighted[m][j] = 2^m theta_{m,j}^2
    std::vector<std::vector<double>> weighted(static_cast<std::size_t>(n));
    for (int m = 0; m < n; ++m) {
        const auto level = pyramid.level(m);
        auto& w = weighted[static_cast<std::size_t>(m)];
        w.resize(level.size());
        const double scale = std::ldexp(1.0, m);
        for (std::size_t j = 0; j < level.size(); ++j) w[j] = scale * level[j] * level[j];
    }

    // partial[m] holds the branch sum over levels < m for the current leaf k.
    // Moving from k-1 to k only changes the ancestors below the highest flipped bit.
    std::vector<double> partial(static_cast<std::size_t>(n) + 1, 0.0);
    const std::size_t leaves = std::size_t{1} << (n - 1);
    const double half_p = 0.5 * p;
    CompensatedSum acc;
    for (std::size_t k = 0; k < leaves; ++k) {
        int first_changed = 0;
        if (k > 0) {
            const int top_bit = std::bit_width(k ^ (k - 1)) - 1;
            first_changed = n - 1 - top_bit;
        }
        for (int m = first_changed; m < n; ++m) {
            const std::size_t ancestor = k >> (n - 1 - m);
            partial[static_cast<std::size_t>(m) + 1] =
                partial[static_cast<std::size_t>(m)] + weighted[static_cast<std::size_t>(m)][ancestor];
        }
        const double branch = partial[static_cast<std::size_t>(n)];
        acc.add(branch > 0.0 ? std::exp(half_p * std::log(branch)) : 0.0);
    }
    return std::ldexp(acc.value(), -(n - 1));
}

BurkholderRatio burkholder_ratio(const DyadicSeries& series, double p, int n, bool detrend) {
    check_p(p);
    check_level(series, n);
    BurkholderRatio out;
    out.detrended = detrend;
    const DyadicSeries pinned = detrend ? series.affine_detrended() : series;
    if (!detrend) {
        double scale = 0.0;
        for (double v : series.values()) scale = std::max(scale, std::abs(v));
        const double tol = 1e-12 * scale;
        if (std::abs(series[0]) > tol || std::abs(series[series.size() - 1]) > tol) {
            throw Error(ErrorCode::InvalidArgument,
                        "the sandwich ratio needs x(0) = x(1) = 0; request affine detrending");
        }
    }
    out.variation = pth_variation(pinned, p, n);
    out.moment = branch_moment(fs_analyze(pinned), n, p);
    if (!(out.moment > 0.0)) {
        throw Error(ErrorCode::ZeroMoment, "branch moment vanishes at level " + std::to_string(n));
    }
    out.ratio = out.variation / (std::exp2(n * (1.0 - p)) * out.moment);
    return out;
}

} // namespace hurst
