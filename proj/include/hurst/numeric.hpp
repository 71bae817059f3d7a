#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>

namespace hurst {

/// Neumaier-compensated accumulator. Summation order is the caller's order,
/// so results are reproducible as long as the order is fixed.
class CompensatedSum {
public:
    void add(double v) noexcept {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }

    CompensatedSum& operator+=(double v) noexcept {
        add(v);
        return *this;
    }

    [[nodiscard]] double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

[[nodiscard]] inline double compensated_sum(std::span<const double> xs) noexcept {
    CompensatedSum acc;
    for (double v : xs) acc.add(v);
    return acc.value();
}

/// |x|^p for continuous p, with 0^p = 0.
[[nodiscard]] inline double abs_pow(double x, double p) noexcept {
    const double a = std::abs(x);
    if (a == 0.0) return 0.0;
    return std::exp(p * std::log(a));
}

/// Worker count: HURST_THREADS if set and positive, else hardware concurrency.
[[nodiscard]] std::size_t default_thread_count();

/// Runs body(i) for i in [0, count). Each index is visited exactly once; the
/// caller writes results into pre-sized storage so the outcome does not depend
/// on scheduling. threads == 0 means default_thread_count().
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  std::size_t threads = 0);

} // namespace hurst
