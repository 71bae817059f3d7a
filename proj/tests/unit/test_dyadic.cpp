#include "hurst/dyadic.hpp"
#include "hurst/error.hpp"
#include "hurst/variation.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace hurst;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error thrown");
    return ErrorCode::InvalidArgument;
}

std::vector<double> sample_hat(int m, long long k, int n) {
    const std::size_t N = std::size_t{1} << n;
    std::vector<double> v(N + 1);
    for (std::size_t i = 0; i <= N; ++i) v[i] = oracle::hat(m, k, static_cast<double>(i) / N);
    return v;
}

std::vector<double> ramp(int n) {
    const std::size_t N = std::size_t{1} << n;
    std::vector<double> v(N + 1);
    for (std::size_t i = 0; i <= N; ++i) v[i] = static_cast<double>(i) / N;
    return v;
}

} // namespace

TEST_CASE("from_samples validates length and finiteness") {
    CHECK(DyadicSeries::from_samples(std::vector<double>{0, 1, 0}, 1).size() == 3);
    CHECK(DyadicSeries::from_samples(ramp(2), 2).resolution() == 2);
    CHECK(code_of([] { (void)DyadicSeries::from_samples(std::vector<double>{0, 1}, 1); }) == ErrorCode::LengthMismatch);
    CHECK(code_of([] {
              (void)DyadicSeries::from_samples(std::vector<double>{0, std::numeric_limits<double>::quiet_NaN(), 0}, 1);
          }) == ErrorCode::NonFinite);
    CHECK(code_of([] {
              (void)DyadicSeries::from_samples(std::vector<double>{0, std::numeric_limits<double>::infinity(), 0}, 1);
          }) == ErrorCode::NonFinite);
}

TEST_CASE("hat e_00 analyzes to a single unit coefficient") {
    const auto p = fs_analyze(DyadicSeries::from_samples(sample_hat(0, 0, 3), 3));
    CHECK(p.depth() == 3);
    CHECK(p.x0() == 0.0);
    CHECK(p.slope() == 0.0);
    CHECK(p.theta(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    for (int m = 1; m < 3; ++m) {
        for (double th : p.level(m)) CHECK(th == 0.0);
    }
}

TEST_CASE("ramp has only the slope term") {
    const auto p = fs_analyze(DyadicSeries::from_samples(ramp(3), 3));
    CHECK(p.slope() == 1.0);
    for (double th : p.coefficients()) CHECK(std::abs(th) < 1e-15);
}

TEST_CASE("hand-evaluated coefficients") {
    const auto p = fs_analyze(DyadicSeries::from_samples(std::vector<double>{0, 0.5, 0, -0.25, 0}, 2));
    CHECK(p.theta(0, 0) == doctest::Approx(0.0));
    CHECK(p.theta(1, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(p.theta(1, 1) == doctest::Approx(-0.5 * std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("coefficients match the direct formula on random paths") {
    for (int n : {1, 4, 9}) {
        const auto x = oracle::random_walk(n, 100 + n);
        const auto p = fs_analyze(DyadicSeries::from_samples(x, n));
        for (int m = 0; m < n; ++m) {
            for (std::size_t k = 0; k < (std::size_t{1} << m); ++k) {
                CHECK(p.theta(m, k) == doctest::Approx(oracle::theta_direct(x, n, m, k)).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("round trip at every resolution up to 16") {
    for (int n = 1; n <= 16; ++n) {
        const auto x = oracle::random_series(n, 7 * n);
        const auto y = fs_synthesize(fs_analyze(x));
        double scale = 0.0, err = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            scale = std::max(scale, std::abs(x[i]));
            err = std::max(err, std::abs(x[i] - y[i]));
        }
        CHECK(err <= 1e-12 * scale);
    }
}

TEST_CASE("synthesis agrees with summing hat functions") {
    const auto x = oracle::random_series(5, 33);
    const auto p = fs_analyze(x);
    for (int n = 1; n <= 5; ++n) {
        const auto fast = fs_synthesize(p, n);
        const auto slow = oracle::synthesize_direct(p, n);
        for (std::size_t i = 0; i < slow.size(); ++i) CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-12));
    }
}

TEST_CASE("synthesis of a lone coefficient is the sampled hat") {
    std::vector<double> theta(7, 0.0);
    theta[0] = 1.0;
    const FaberSchauderPyramid p(0.0, 0.0, theta, 3);
    const auto y = fs_synthesize(p, 3);
    const auto want = sample_hat(0, 0, 3);
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(y[i] == doctest::Approx(want[i]));
    CHECK(code_of([&] { (void)fs_synthesize(p, 4); }) == ErrorCode::DepthExceeded);
}

TEST_CASE("a sampled hat e_mk yields exactly one unit coefficient") {
    for (int n = 2; n <= 7; ++n) {
        for (int m = 0; m < n; ++m) {
            for (long long k : {0LL, (1LL << m) - 1, (1LL << m) / 2}) {
                const auto p = fs_analyze(DyadicSeries::from_samples(sample_hat(m, k, n), n));
                int nonzero = 0;
                for (int mm = 0; mm < n; ++mm) {
                    for (std::size_t kk = 0; kk < (std::size_t{1} << mm); ++kk) {
                        const double th = p.theta(mm, kk);
                        if (std::abs(th) > 1e-13) {
                            ++nonzero;
                            CHECK(mm == m);
                            CHECK(static_cast<long long>(kk) == k);
                            CHECK(th == doctest::Approx(1.0).epsilon(1e-13));
                        }
                    }
                }
                CHECK(nonzero == 1);
            }
        }
    }
}

TEST_CASE("fs_eval values, support and errors") {
    CHECK(fs_eval(0, 0, 0.5) == 0.5);
    CHECK(fs_eval(0, 0, 0.0) == 0.0);
    CHECK(fs_eval(3, 2, 0.1) == 0.0);
    CHECK(fs_eval(3, 2, 0.5) == 0.0);
    CHECK(fs_eval(3, 2, 0.3125) == doctest::Approx(std::pow(2.0, -1.5) * 0.5));
    CHECK(code_of([] { (void)fs_eval(2, 4, 0.5); }) == ErrorCode::IndexOutOfRange);
    CHECK(code_of([] { (void)fs_eval(2, -1, 0.5); }) == ErrorCode::IndexOutOfRange);
    CHECK(code_of([] { (void)fs_eval(2, 0, 1.5); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("binary-expansion increment identity, exhaustive for n <= 8") {
    for (int n = 1; n <= 8; ++n) {
        const double step = std::ldexp(1.0, -n);
        for (int m = 0; m < n; ++m) {
            for (long long k = 0; k < (1LL << m); ++k) {
                for (long long j = 0; j < (1LL << n); ++j) {
                    const double t = static_cast<double>(j) * step;
                    const int a = static_cast<int>((j >> (n - m - 1)) & 1); // a_{m+1}
                    const bool hit = (j >> (n - m)) == k;                  // floor(2^m t) == k
                    const double want = hit ? std::ldexp(std::pow(2.0, m / 2.0), -n) * (1 - 2 * a) : 0.0;
                    const double got = fs_eval(m, k, t + step) - fs_eval(m, k, t);
                    REQUIRE(got == doctest::Approx(want).epsilon(1e-14).scale(1.0));
                }
            }
        }
    }
}

TEST_CASE("energy trace basics") {
    std::vector<double> theta(7, 0.0);
    theta[0] = 1.0;
    const auto tr = energy_trace(FaberSchauderPyramid(0.0, 0.0, theta, 3));
    for (int j = 1; j <= 3; ++j) {
        CHECK(tr.s(j) == 1.0);
        REQUIRE(tr.xi(j).has_value());
        CHECK(*tr.xi(j) == 0.0);
    }
    const auto zero = energy_trace(FaberSchauderPyramid(0.0, 0.0, std::vector<double>(7, 0.0), 3));
    for (int j = 1; j <= 3; ++j) {
        CHECK(zero.s(j) == 0.0);
        CHECK_FALSE(zero.xi(j).has_value());
    }
}

TEST_CASE("energy trace is non-decreasing and matches a direct sum") {
    const auto p = fs_analyze(oracle::random_series(10, 5));
    const auto tr = energy_trace(p);
    double acc = 0.0;
    for (int j = 1; j <= 10; ++j) {
        for (double th : p.level(j - 1)) acc += th * th;
        CHECK(tr.s(j) == doctest::Approx(std::sqrt(acc)).epsilon(1e-13));
        if (j > 1) CHECK(tr.s(j) >= tr.s(j - 1));
        CHECK(*tr.xi(j) == doctest::Approx(std::log2(tr.s(j)) / j));
    }
}

TEST_CASE("quadratic variation identity on pinned paths") {
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 12;
        const auto x = oracle::random_series(n, 1000 + trial, true);
        const auto tr = energy_trace(fs_analyze(x));
        for (int j = 1; j <= n; ++j) {
            const double v = pth_variation(x, 2.0, j);
            CHECK(v == doctest::Approx(std::ldexp(tr.s(j) * tr.s(j), -j)).epsilon(1e-12));
        }
    }
}

TEST_CASE("quadratic variation with free endpoints carries the chord term") {
    const auto x = oracle::random_series(9, 77);
    const auto p = fs_analyze(x);
    const auto tr = energy_trace(p);
    for (int j = 1; j <= 9; ++j) {
        const double want = std::ldexp(tr.s(j) * tr.s(j) + p.slope() * p.slope(), -j);
        CHECK(pth_variation(x, 2.0, j) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("sign flips leave the energy trace unchanged") {
    const auto p = fs_analyze(oracle::random_series(8, 3));
    auto flipped_theta = std::vector<double>(p.coefficients().begin(), p.coefficients().end());
    std::mt19937 rng(4);
    for (auto& th : flipped_theta) {
        if (rng() & 1U) th = -th;
    }
    const FaberSchauderPyramid q(p.x0(), p.slope(), flipped_theta, p.depth());
    const auto a = energy_trace(p), b = energy_trace(q);
    for (int j = 1; j <= 8; ++j) CHECK(a.s(j) == b.s(j));
}

TEST_CASE("scaling multiplies coefficients and s by lambda") {
    const auto x = oracle::random_series(8, 12);
    for (double lam : {-3.0, 0.25, 1e6}) {
        const auto p = fs_analyze(x);
        const auto q = fs_analyze(x.scaled(lam));
        CHECK(q.x0() == doctest::Approx(lam * p.x0()));
        CHECK(q.slope() == doctest::Approx(lam * p.slope()));
        double sup = 0.0;
        for (double v : x.values()) sup = std::max(sup, std::abs(v));
        // Second differences cancel, so the error is relative to the sample scale.
        for (std::size_t i = 0; i < p.coefficients().size(); ++i) {
            CHECK(std::abs(q.coefficients()[i] - lam * p.coefficients()[i]) <= 1e-13 * std::abs(lam) * sup);
        }
        const auto a = energy_trace(p), b = energy_trace(q);
        for (int j = 1; j <= 8; ++j) CHECK(b.s(j) == doctest::Approx(std::abs(lam) * a.s(j)).epsilon(1e-13));
    }
}

TEST_CASE("coarsening and detrending") {
    const auto x = oracle::random_series(6, 9);
    const auto c = x.coarsened(3);
    CHECK(c.resolution() == 3);
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == x[i * 8]);
    const auto d = x.affine_detrended();
    CHECK(d[0] == 0.0);
    CHECK(d[d.size() - 1] == 0.0);
    const auto pd = fs_analyze(d), px = fs_analyze(x);
    for (std::size_t i = 0; i < px.coefficients().size(); ++i) {
        CHECK(pd.coefficients()[i] == doctest::Approx(px.coefficients()[i]).epsilon(1e-12).scale(1.0));
    }
}
