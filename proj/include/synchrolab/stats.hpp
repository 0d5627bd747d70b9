#pragma once

#include <cmath>
#include <cstdint>

namespace synchrolab {

// Wilson score interval for a binomial proportion; stable near 0 and 1.
struct Proportion {
    uint64_t count = 0;
    uint64_t trials = 0;
    double estimate = 0;
    double lower = 0;
    double upper = 0;
};

inline Proportion wilson_interval(uint64_t count, uint64_t trials, double z = 1.959963984540054) {
    Proportion p;
    p.count = count;
    p.trials = trials;
    if (trials == 0) return p;
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(count) / n;
    p.estimate = phat;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (phat + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    p.lower = count == 0 ? 0.0 : std::max(0.0, center - half);
    p.upper = count == trials ? 1.0 : std::min(1.0, center + half);
    return p;
}

// Sample mean/variance from exact integer power sums, so that parallel
// aggregation is order-insensitive.
struct IntMoments {
    uint64_t count = 0;
    long long sum = 0;
    long long sum_sq = 0;

    void add(long long x) {
        ++count;
        sum += x;
        sum_sq += x * x;
    }
    void merge(const IntMoments& o) {
        count += o.count;
        sum += o.sum;
        sum_sq += o.sum_sq;
    }
    double mean() const { return count ? static_cast<double>(sum) / static_cast<double>(count) : 0.0; }
    // unbiased sample variance
    double variance() const {
        if (count < 2) return 0.0;
        const double n = static_cast<double>(count);
        const double s1 = static_cast<double>(sum);
        const double s2 = static_cast<double>(sum_sq);
        return (s2 - s1 * s1 / n) / (n - 1.0);
    }
    double stderr_of_mean() const {
        return count ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
    }
};

} // namespace synchrolab
