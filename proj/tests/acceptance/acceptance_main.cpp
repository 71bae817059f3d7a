// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "hurst/diagnostics.hpp"
#include "hurst/dyadic.hpp"
#include "hurst/error.hpp"
#include "hurst/estimators.hpp"
#include "hurst/fbm.hpp"
#include "hurst/rolling.hpp"
#include "hurst/variation.hpp"
#include "support/oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace hurst;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail << "first failure: " << what << "; ";
        pass = pass && ok;
    }
};

using Check = std::function<void(Outcome&)>;

bool run(int id, double limit_s, const Check& check) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        check(o);
    } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < limit_s, "runtime over " + std::to_string(limit_s) + " s");
    std::printf("Criterion %d: %s (%s%.2f s)\n", id, o.pass ? "PASS" : "FAIL", o.detail.str().c_str(), secs);
    std::fflush(stdout);
    return o.pass;
}

// Direct minimizer of sum w (a - b phi)^2 with a = H_u - H_l, b = 1/u - 1/l (signs as in H_k - phi/k).
double direct_phi(const GladyshevSequence& seq, const std::vector<PairTerm>& terms) {
    long double num = 0.0L, den = 0.0L;
    for (const auto& t : terms) {
        const long double a = static_cast<long double>(seq.at(t.upper)) - seq.at(t.lower);
        const long double b = 1.0L / t.upper - 1.0L / t.lower;
        num += t.weight * a * b;
        den += t.weight * b * b;
    }
    return static_cast<double>(num / den);
}

// Weighted least squares of k H_k on k with intercept, k = n - j, weights alpha_j; returns the slope.
double direct_regression(const GladyshevSequence& seq, int n, const WeightProfile& prof) {
    long double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int j = 0; j <= prof.m(); ++j) {
        const long double w = prof.get_or_zero(j);
        const long double x = n - j;
        const long double y = x * seq.at(n - j);
        sw += w;
        sx += w * x;
        sy += w * y;
        sxx += w * x * x;
        sxy += w * x * y;
    }
    return static_cast<double>((sw * sxy - sx * sy) / (sw * sxx - sx * sx));
}

GladyshevSequence random_sequence(int first, int last, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    GladyshevSequence seq;
    seq.first = first;
    for (int k = first; k <= last; ++k) seq.values.push_back(u(rng));
    return seq;
}

WeightProfile random_profile(int m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.05, 2.0);
    std::vector<double> a(static_cast<std::size_t>(m) + 1);
    for (auto& v : a) v = u(rng);
    return WeightProfile::make(a);
}

double sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

FaberSchauderPyramid flip_random_signs(const FaberSchauderPyramid& p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> theta(p.coefficients().begin(), p.coefficients().end());
    for (auto& t : theta) {
        if (rng() & 1U) t = -t;
    }
    return FaberSchauderPyramid(p.x0(), p.slope(), theta, p.depth());
}

void criterion1(Outcome& o) {
    double worst_qv = 0.0, worst_bm = 0.0, worst_rt = 0.0;
    for (int i = 0; i < 100; ++i) {
        const int n = 1 + i % 14;
        const auto x = oracle::random_series(n, 10'000 + i, true);
        const auto pyr = fs_analyze(x);
        const double s = energy_trace(pyr).s(n);
        const double qv = std::ldexp(s * s, -n);
        worst_qv = std::max(worst_qv, std::abs(pth_variation(x, 2.0, n) - qv) / qv);
        worst_bm = std::max(worst_bm, std::abs(branch_moment(pyr, n, 2.0) - s * s) / (s * s));
        const auto back = fs_synthesize(pyr);
        for (std::size_t k = 0; k < x.size(); ++k) worst_rt = std::max(worst_rt, std::abs(back[k] - x[k]));
    }
    o.require(worst_qv <= 1e-12, "quadratic variation identity");
    o.require(worst_bm <= 1e-12, "branch moment at p = 2");
    o.require(worst_rt <= 1e-12, "round trip");

    std::size_t checked = 0;
    double worst_inc = 0.0;
    for (int n = 1; n <= 8; ++n) {
        const double step = std::ldexp(1.0, -n);
        for (int m = 0; m < n; ++m) {
            for (long long k = 0; k < (1LL << m); ++k) {
                for (long long j = 0; j < (1LL << n); ++j) {
                    const double t = static_cast<double>(j) * step;
                    const int a = static_cast<int>((j >> (n - m - 1)) & 1);
                    const bool hit = (j >> (n - m)) == k;
                    const double want = hit ? std::ldexp(std::pow(2.0, m / 2.0), -n) * (1 - 2 * a) : 0.0;
                    worst_inc = std::max(worst_inc, std::abs(fs_eval(m, k, t + step) - fs_eval(m, k, t) - want));
                    ++checked;
                }
            }
        }
    }
    o.require(worst_inc <= 1e-14, "increment identity");
    o.detail << "rel qv " << worst_qv << ", rel branch " << worst_bm << ", round trip " << worst_rt << ", "
             << checked << " increments max err " << worst_inc << "; ";
}

void criterion2(Outcome& o) {
    std::mt19937_64 rng(2024);
    double worst_seq = 0.0, worst_reg = 0.0, worst_term = 0.0, worst_sum = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 4);
        const int n = m + 2 + static_cast<int>(rng() % 13);
        const auto prof = random_profile(m, rng);
        const auto seq = random_sequence(n - m - 1, n, rng);

        const auto beta = closed_form_weights(EstimatorKind::Sequential, n, prof);
        const double h_seq = seq.at(n) - direct_phi(seq, sequential_terms(n, prof)) / n;
        worst_seq = std::max(worst_seq, std::abs(apply_weights(seq, n - m - 1, beta) - h_seq));

        const auto reg_prof = prof.normalized();
        const auto w = closed_form_weights(EstimatorKind::Regression, n, reg_prof);
        worst_reg = std::max(worst_reg, std::abs(apply_weights(seq, n - m, w) - direct_regression(seq, n, reg_prof)));

        const auto est = terminal_scale(seq, n, prof);
        const double h_term = seq.at(n) - direct_phi(seq, terminal_terms(n, prof)) / n;
        worst_term = std::max(worst_term, std::abs(est.H - h_term));
        worst_term = std::max(worst_term, std::abs(apply_weights(seq, est.first_index, est.weights) - est.H));
        worst_sum = std::max(worst_sum, std::abs(sum(est.weights) - 1.0));
    }
    o.require(worst_seq <= 1e-10, "sequential closed form");
    o.require(worst_reg <= 1e-10, "regression closed form");
    o.require(worst_term <= 1e-10, "terminal self-consistency");
    o.require(worst_sum <= 1e-10, "terminal weights sum");

    double worst_v = 0.0;
    for (int m : {2, 3, 4}) {
        for (int trial = 0; trial < 10; ++trial) {
            const int n = 12;
            const auto x = oracle::random_series(n, 300 + 17 * m + trial, true);
            std::vector<long long> K;
            for (int j = 0; j <= m; ++j) K.push_back(1LL << j);
            const auto v = simple_regression(x, n, K, {2.0});
            const auto r = regression_scale(x, n, WeightProfile::uniform(m));
            worst_v = std::max(worst_v, std::abs(v.H - r.H));
        }
    }
    o.require(worst_v <= 1e-10, "simple regression equivalence");
    o.detail << "1000 sequences: seq " << worst_seq << ", reg " << worst_reg << ", term " << worst_term
             << ", weight sum " << worst_sum << "; simple vs regression " << worst_v << "; ";
}

void criterion3(Outcome& o) {
    double worst_est = 0.0, worst_shift = 0.0, worst_roll = 0.0;
    const std::vector<double> lambdas{1e-6, -1e-6, 1e6, -1e6};
    for (int i = 0; i < 10; ++i) {
        const int n = 12;
        const auto x = oracle::random_series(n, 700 + i);
        const auto prof = WeightProfile::geometric(2, 0.5);
        const std::vector<long long> K{1, 2, 4};
        for (double lam : lambdas) {
            const auto y = x.scaled(lam);
            for (auto kind : {EstimatorKind::Sequential, EstimatorKind::Terminal, EstimatorKind::Regression}) {
                worst_est = std::max(worst_est, std::abs(estimate(kind, y, n, prof).H - estimate(kind, x, n, prof).H));
            }
            const auto terms = terminal_terms(n, prof);
            worst_est = std::max(worst_est, std::abs(generalized_scale(y, n, terms).H - generalized_scale(x, n, terms).H));
            worst_est = std::max(worst_est, std::abs(simple_regression(y, n, K, {2.0}).H - simple_regression(x, n, K, {2.0}).H));
            for (int k = 1; k <= n; ++k) {
                worst_shift = std::max(worst_shift, std::abs(gladyshev(y, k) - gladyshev(x, k) + std::log2(std::abs(lam)) / k));
            }
        }
    }
    const auto walk = oracle::random_walk(11, 77);
    const auto grid = WindowGrid::maximal(walk.size(), 9, 16);
    const auto prof = WeightProfile::geometric(1, 0.5);
    for (auto kind : {EstimatorKind::Sequential, EstimatorKind::Terminal}) {
        const auto base = t_adjusted(walk, grid, prof, kind);
        for (double lam : lambdas) {
            std::vector<double> y(walk);
            for (auto& v : y) v *= lam;
            const auto rep = t_adjusted(y, grid, prof, kind);
            for (std::size_t w = 0; w < rep.windows.size(); ++w) {
                worst_roll = std::max(worst_roll, std::abs(rep.windows[w].adjusted - base.windows[w].adjusted));
            }
        }
    }
    o.require(worst_est <= 1e-10, "scale estimators");
    o.require(worst_roll <= 1e-10, "T-adjusted estimators");
    o.require(worst_shift <= 1e-12, "Gladyshev shift");
    o.detail << "estimators " << worst_est << ", T-adjusted " << worst_roll << ", shift " << worst_shift << "; ";
}

void criterion4(Outcome& o) {
    const auto res = monte_carlo({EstimatorConfig{}}, {0.1, 0.3, 0.5, 0.7, 0.9}, 500, 12, 4);
    for (const auto& s : res) {
        o.detail << "H=" << s.H_true << " mean " << s.mean << " sd " << s.sd << "; ";
        o.require(s.failures == 0, "path failures");
        if (s.H_true < 0.8) {
            o.require(std::abs(s.mean - s.H_true) <= 0.005, "mean at H=" + std::to_string(s.H_true));
            o.require(s.sd >= 0.0005 && s.sd <= 0.005, "sd at H=" + std::to_string(s.H_true));
        } else {
            o.require(s.mean >= 0.90 && s.mean <= 0.93, "mean at H=0.9");
        }
    }
}

void criterion5(Outcome& o) {
    const auto prof = WeightProfile::geometric(1, 0.5);
    std::vector<EstimatorConfig> configs;
    for (auto kind : {EstimatorKind::Terminal, EstimatorKind::Sequential, EstimatorKind::Regression}) {
        EstimatorConfig c;
        c.kind = kind;
        c.profile = prof;
        configs.push_back(c);
    }
    // Reference SDs per (H, estimator): terminal, sequential, regression.
    const double ref[3][3] = {{0.007768, 0.007835, 0.010031}, {0.006543, 0.006534, 0.007949}, {0.005932, 0.005935, 0.006209}};
    const auto res = monte_carlo(configs, {0.3, 0.5, 0.7}, 300, 14, 5);
    for (std::size_t i = 0; i < res.size(); ++i) {
        const auto& s = res[i];
        const double r = ref[i / 3][i % 3];
        o.detail << to_string(s.config.kind) << " H=" << s.H_true << " mean " << s.mean << " sd " << s.sd << "; ";
        o.require(s.failures == 0, "path failures");
        o.require(std::abs(s.mean - s.H_true) <= 0.01, "mean");
        o.require(s.sd >= 0.5 * r && s.sd <= 2.0 * r, "sd ratio");
    }
}

void criterion6(Outcome& o) {
    EstimatorConfig stdz;
    stdz.standardize = true;
    const auto res = monte_carlo({EstimatorConfig{}, stdz}, {0.3}, 500, 12, 6);
    const double raw_bias = std::abs(res[0].mean - 0.3);
    const double std_bias = std::abs(res[1].mean - 0.3);
    o.detail << "raw bias " << raw_bias << ", standardized bias " << std_bias << "; ";
    o.require(std_bias > 3.0 * raw_bias, "standardized bias not dominant");
}

void criterion7(Outcome& o) {
    const auto prof = WeightProfile::geometric(1, 0.5);
    for (double H : {0.3, 0.7}) {
        const FbmGenerator gen(H, 2048, 2.0);
        const auto grid = WindowGrid::maximal(2049, 10, 1);
        int wins = 0;
        for (std::uint64_t i = 0; i < 100; ++i) {
            const auto x = gen.sample(derive_seed(7, H > 0.5 ? 1 : 0, i));
            const auto rep = t_adjusted(x, grid, prof, EstimatorKind::Terminal);
            std::vector<double> adj, raw;
            for (const auto& w : rep.windows) {
                adj.push_back(w.adjusted);
                raw.push_back(w.raw);
            }
            if (oracle::variance(adj) < oracle::variance(raw)) ++wins;
        }
        o.detail << "H=" << H << " " << wins << "/100; ";
        o.require(wins >= 90, "variance reduction at H=" + std::to_string(H));
    }
}

void criterion8(Outcome& o) {
    const int n = 10;
    const std::size_t half = 6 * (std::size_t{1} << n);
    const std::size_t W = std::size_t{1} << n;
    const std::size_t stride = 256;
    const auto prof = WeightProfile::geometric(1, 0.5);
    const FbmGenerator rough(0.3, half, 6.0);
    const FbmGenerator smooth(0.7, half, 6.0);
    int hits = 0;
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 50; ++i) {
        auto x = rough.sample(derive_seed(8, 0, i));
        const auto y = smooth.sample(derive_seed(8, 1, i));
        const double base = x.back();
        for (std::size_t k = 1; k < y.size(); ++k) x.push_back(base + y[k]);
        const auto rep = rolling_monitor(x, n, stride, prof, EstimatorKind::Terminal);
        // A window [o, o + W] counts when it ends 3 windows before the splice or starts 3 windows after it.
        std::vector<double> left, right;
        for (const auto& w : rep.windows) {
            if (w.skipped) continue;
            if (w.offset + W + 3 * W <= half) left.push_back(w.adjusted);
            if (w.offset >= half + 3 * W) right.push_back(w.adjusted);
        }
        if (left.empty() || right.empty()) continue;
        const double e1 = std::abs(median(left) - 0.3);
        const double e2 = std::abs(median(right) - 0.7);
        worst = std::max({worst, e1, e2});
        if (e1 <= 0.1 && e2 <= 0.1) ++hits;
    }
    o.detail << hits << "/50 paths, worst median error " << worst << "; ";
    o.require(hits >= 40, "detection rate");
}

void criterion9(Outcome& o) {
    int flips = 0, jensen = 0, rj = 0, quant = 0, cond = 0;
    for (int i = 0; i < 20; ++i) {
        const int n = 10;
        const auto x = oracle::random_series(n, 900 + i);
        const auto pyr = fs_analyze(x);
        const auto neg = flip_random_signs(pyr, 950 + i);
        const auto ta = energy_trace(pyr);
        const auto tb = energy_trace(neg);
        bool same = true;
        for (int k = 1; k <= n; ++k) {
            same = same && ta.s(k) == tb.s(k);
            for (double p : {1.0, 3.0}) same = same && branch_moment(pyr, k, p) == branch_moment(neg, k, p);
        }
        const auto prof = WeightProfile::geometric(1, 0.5);
        same = same && terminal_scale(gladyshev_sequence(ta, 8, n), n, prof).H ==
                           terminal_scale(gladyshev_sequence(tb, 8, n), n, prof).H;
        same = same && quantile_bounds(pyr, 2, n).lower == quantile_bounds(neg, 2, n).lower;
        same = same && condition_a_ratio(pyr, 5).value == condition_a_ratio(neg, 5).value;
        if (same) ++flips;

        bool dir = true, ratio = true, ordered = true, ab = true;
        for (int k = 2; k <= n; ++k) {
            const double s = ta.s(k);
            for (double p : {0.5, 1.0, 1.5}) dir = dir && branch_moment(pyr, k, p) <= std::pow(s, p) * (1 + 1e-12);
            for (double p : {2.5, 3.0, 4.0}) dir = dir && branch_moment(pyr, k, p) >= std::pow(s, p) * (1 - 1e-12);
            ratio = ratio && std::abs(reverse_jensen_ratio(pyr, 2.0, k).ratio - 1.0) <= 1e-12;
            for (int nu : {1, 2, 3}) {
                const auto q = quantile_bounds(pyr, nu, k);
                ordered = ordered && q.lower <= q.upper;
            }
        }
        for (int m = 0; m < n; ++m) {
            const double a = condition_a_ratio(pyr, m).value;
            ab = ab && std::abs(condition_b_ratio(pyr, 0, m).value - a * a) <= 1e-12 * a * a;
        }
        jensen += dir;
        rj += ratio;
        quant += ordered;
        cond += ab;
    }
    o.require(flips == 20, "sign-flip invariance");
    o.require(jensen == 20, "Jensen directions");
    o.require(rj == 20, "reverse-Jensen at p = 2");
    o.require(quant == 20, "quantile ordering");
    o.require(cond == 20, "condition (b) at nu = 0");

    EstimatorConfig term;
    term.kind = EstimatorKind::Terminal;
    term.profile = WeightProfile::geometric(1, 0.5);
    const auto a = monte_carlo({EstimatorConfig{}, term}, {0.3, 0.6}, 200, 10, 9, MonteCarloOptions{1});
    const auto b = monte_carlo({EstimatorConfig{}, term}, {0.3, 0.6}, 200, 10, 9, MonteCarloOptions{8});
    bool det = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        det = det && a[i].mean == b[i].mean && a[i].sd == b[i].sd && a[i].min == b[i].min && a[i].max == b[i].max;
    }
    o.require(det, "Monte Carlo determinism");
    o.detail << "20 paths per property, determinism " << (det ? "bitwise" : "broken") << "; ";
}

} // namespace

int main() {
    bool ok = true;
    ok &= run(1, 10.0, criterion1);
    ok &= run(2, 5.0, criterion2);
    ok &= run(3, 60.0, criterion3);
    ok &= run(4, 120.0, criterion4);
    ok &= run(5, 300.0, criterion5);
    ok &= run(6, 120.0, criterion6);
    ok &= run(7, 300.0, criterion7);
    ok &= run(8, 300.0, criterion8);
    ok &= run(9, 120.0, criterion9);
    std::printf("%s\n", ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
    return ok ? 0 : 1;
}
