#include "hurst/diagnostics.hpp"

#include "hurst/error.hpp"
#include "hurst/numeric.hpp"
#include "hurst/variation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hurst {

ReverseJensenPoint reverse_jensen_ratio(const FaberSchauderPyramid& pyramid, double p, int n) {
    const double s = energy_trace(pyramid).s(n);
    if (!(s > 0.0)) {
        throw Error(ErrorCode::DegeneratePath, "s_" + std::to_string(n) + " = 0");
    }
    ReverseJensenPoint pt;
    pt.n = n;
    pt.p = p;
    pt.moment = branch_moment(pyramid, n, p);
    pt.s_pow = std::exp(p * std::log(s));
    pt.ratio = std::max(pt.moment / pt.s_pow, pt.s_pow / pt.moment);
    pt.log2_rate = std::log2(pt.ratio) / n;
    return pt;
}

std::vector<ReverseJensenPoint> reverse_jensen_curve(const FaberSchauderPyramid& pyramid, double p, int n_lo,
                                                     int n_hi) {
    std::vector<ReverseJensenPoint> out;
    for (int n = n_lo; n <= n_hi; ++n) out.push_back(reverse_jensen_ratio(pyramid, p, n));
    return out;
}

BoundedRatio condition_a_ratio(const FaberSchauderPyramid& pyramid, int m) {
    const auto level = pyramid.level(m);
    double lo = std::abs(level[0]);
    double hi = lo;
    for (double th : level) {
        lo = std::min(lo, std::abs(th));
        hi = std::max(hi, std::abs(th));
    }
    if (lo == 0.0) return {0.0, true};
    return {hi / lo, false};
}

BoundedRatio condition_b_ratio(const FaberSchauderPyramid& pyramid, int nu, int m) {
    if (nu < 0 || nu > m) {
        throw Error(ErrorCode::InvalidNu, "nu = " + std::to_string(nu) + " must lie in [0, m = " + std::to_string(m) + "]");
    }
    const auto level = pyramid.level(m);
    const std::size_t block = std::size_t{1} << nu;
    double lo = 0.0, hi = 0.0;
    for (std::size_t start = 0; start < level.size(); start += block) {
        CompensatedSum acc;
        for (std::size_t j = start; j < start + block; ++j) acc.add(level[j] * level[j]);
        const double e = acc.value();
        if (start == 0) {
            lo = hi = e;
        } else {
            lo = std::min(lo, e);
            hi = std::max(hi, e);
        }
    }
    if (lo == 0.0) return {0.0, true};
    return {hi / lo, false};
}

QuantileBounds quantile_bounds(const FaberSchauderPyramid& pyramid, int nu, int n) {
    if (nu < 1) throw Error(ErrorCode::InvalidNu, "quantile bounds need nu >= 1");
    if (n < 2 || n > pyramid.depth()) {
        throw Error(ErrorCode::LevelExceedsResolution, "quantile bounds need 2 <= n <= depth");
    }
    constexpr long double kMaxBlocks = 1u << 26;

    CompensatedSum lower_sum, upper_sum;
    for (int m = 1; m < n; ++m) {
        const long double blocks_ld = std::pow(static_cast<long double>(m), nu);
        if (blocks_ld > kMaxBlocks) {
            throw Error(ErrorCode::ResourceLimit, "m^nu too large at level " + std::to_string(m));
        }
        const auto blocks = static_cast<long long>(blocks_ld);
        const auto level = pyramid.level(m);
        std::vector<double> sorted(level.size());
        const double scale = std::ldexp(1.0, m);
        for (std::size_t j = 0; j < level.size(); ++j) sorted[j] = scale * level[j] * level[j];
        std::sort(sorted.begin(), sorted.end());
        // Left-continuous inverse of the empirical CDF at u = j 2^-m is the j-th order
        // statistic; u = 0 maps to the smallest.
        auto quantile = [&](long long j) { return sorted[static_cast<std::size_t>(std::max(j, 1LL) - 1)]; };

        const long long size = 1LL << m;
        CompensatedSum lo_level, hi_level;
        for (long long k = 1; k <= blocks; ++k) {
            const long long j_lo = size * (k - 1) / blocks;
            const long long j_hi = (size * k + blocks - 1) / blocks;
            lo_level.add(quantile(j_lo));
            hi_level.add(quantile(j_hi));
        }
        lower_sum.add(lo_level.value() / static_cast<double>(blocks));
        upper_sum.add(hi_level.value() / static_cast<double>(blocks));
    }
    if (!(lower_sum.value() > 0.0) || !(upper_sum.value() > 0.0)) {
        throw Error(ErrorCode::DegeneratePath, "quantile sums vanish");
    }
    QuantileBounds out;
    out.lower = std::log2(lower_sum.value()) / (2.0 * n);
    out.upper = std::log2(upper_sum.value()) / (2.0 * n);
    out.first_level = 1;
    out.quantile_convention = "left-continuous inverse of the empirical CDF of 2^m theta^2; F^-1(0) = minimum";
    return out;
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Consistent: return "consistent";
    case Verdict::Violated: return "violated";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

BiasReport bias_report(const EnergyTrace& trace, double H_candidate, double tol) {
    BiasReport out;
    out.H_candidate = H_candidate;
    out.n = trace.depth();
    if (out.n >= 1) out.xi = trace.xi(out.n);

    struct Rule {
        const char* name;
        double premise;    // > 0 when the premise holds
        double conclusion; // >= 0 when the conclusion holds
    };
    if (!out.xi) {
        for (const char* name : {"xi > 1/2 => H <= 1/2", "xi < 1/2 => H >= 1/2", "H <= 1/2 => H <= 1 - xi",
                                 "H >= 1/2 => H >= 1 - xi"}) {
            out.checks.push_back({name, Verdict::Inconclusive, std::nullopt});
        }
        return out;
    }
    const double xi = *out.xi;
    const double H = H_candidate;
    const Rule rules[] = {
        {"xi > 1/2 => H <= 1/2", xi - 0.5, 0.5 - H},
        {"xi < 1/2 => H >= 1/2", 0.5 - xi, H - 0.5},
        {"H <= 1/2 => H <= 1 - xi", 0.5 - H, 1.0 - xi - H},
        {"H >= 1/2 => H >= 1 - xi", H - 0.5, H - (1.0 - xi)},
    };
    for (const auto& r : rules) {
        Verdict v;
        if (r.conclusion >= -tol) {
            v = Verdict::Consistent;
        } else if (r.premise > tol) {
            v = Verdict::Violated;
        } else if (r.premise < -tol) {
            v = Verdict::Consistent;
        } else {
            v = Verdict::Inconclusive;
        }
        out.checks.push_back({r.name, v, r.conclusion});
    }
    return out;
}

BvReadout bv_readout(const EnergyTrace& trace, int lo, int hi) {
    BvReadout out;
    const int depth = trace.depth();
    for (int j = 1; j <= depth; ++j) out.sup_s = std::max(out.sup_s, trace.s(j));
    for (int j = 1; j < depth; ++j) {
        const double a = trace.s(j), b = trace.s(j + 1);
        if (a > 0.0 && b > 0.0) {
            out.log2_increments.emplace_back(std::log2(b) - std::log2(a));
        } else {
            out.log2_increments.emplace_back(std::nullopt);
        }
    }
    if (lo <= 0) {
        lo = 1;
        while (lo <= depth && !(trace.s(lo) > 0.0)) ++lo;
    }
    if (hi <= 0 || hi > depth) hi = depth;
    out.slope_lo = lo;
    out.slope_hi = hi;
    if (hi - lo >= 1) {
        double mx = 0.0, my = 0.0;
        bool ok = true;
        for (int j = lo; j <= hi; ++j) {
            if (!(trace.s(j) > 0.0)) {
                ok = false;
                break;
            }
            mx += j;
            my += std::log2(trace.s(j));
        }
        if (ok) {
            const double cnt = hi - lo + 1;
            mx /= cnt;
            my /= cnt;
            double sxx = 0.0, sxy = 0.0;
            for (int j = lo; j <= hi; ++j) {
                sxx += (j - mx) * (j - mx);
                sxy += (j - mx) * (std::log2(trace.s(j)) - my);
            }
            out.log2_slope = sxy / sxx;
        }
    }
    return out;
}

DiagnosticReport diagnose(const FaberSchauderPyramid& pyramid, const DiagnosticOptions& options) {
    DiagnosticReport report;
    report.depth = pyramid.depth();
    const auto trace = energy_trace(pyramid);

    const int branch_hi = std::min(pyramid.depth(), options.max_branch_n);
    if (branch_hi < pyramid.depth()) {
        report.notes.push_back("reverse Jensen curve truncated at n = " + std::to_string(branch_hi));
    }
    for (double p : options.p_grid) {
        std::vector<ReverseJensenPoint> curve;
        for (int n = 1; n <= branch_hi; ++n) {
            if (trace.s(n) > 0.0) curve.push_back(reverse_jensen_ratio(pyramid, p, n));
        }
        report.reverse_jensen.push_back(std::move(curve));
    }

    for (int m = 0; m < pyramid.depth(); ++m) {
        report.condition_a.push_back(condition_a_ratio(pyramid, m));
        if (m >= options.nu) {
            report.condition_b.emplace_back(condition_b_ratio(pyramid, options.nu, m));
        } else {
            report.condition_b.emplace_back(std::nullopt);
        }
    }

    if (pyramid.depth() >= 2 && options.nu >= 1) {
        try {
            report.quantiles = quantile_bounds(pyramid, options.nu, pyramid.depth());
            report.notes.push_back("quantile sums start at level 1");
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DegeneratePath && e.code() != ErrorCode::ResourceLimit) throw;
            report.notes.push_back(std::string("quantile bounds unavailable: ") + e.what());
        }
    }

    if (options.H_candidate) report.bias = bias_report(trace, *options.H_candidate, options.bias_tol);
    report.bv = bv_readout(trace);
    return report;
}

} // namespace hurst
