#include "mgmt/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mgmt {

namespace {

// ln(n!), cached per thread so parallel feature scans never contend.
double ln_factorial(std::int64_t n) {
    thread_local std::vector<double> cache{0.0, 0.0}; // 0!, 1!
    if (n < static_cast<std::int64_t>(cache.size())) return cache[n];
    while (static_cast<std::int64_t>(cache.size()) <= n)
        cache.push_back(std::lgamma(static_cast<double>(cache.size()) + 1.0));
    return cache[n];
}

double ln_choose(std::int64_t n, std::int64_t k) {
    return ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k);
}

} // namespace

double fisher_exact_two_sided(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
    if (a < 0 || b < 0 || c < 0 || d < 0)
        throw std::invalid_argument("fisher_exact_two_sided: negative cell count");
    const std::int64_t r1 = a + b;
    const std::int64_t r2 = c + d;
    const std::int64_t c1 = a + c;
    const std::int64_t n = r1 + r2;
    if (n == 0) return 1.0;

    const std::int64_t lo = std::max<std::int64_t>(0, c1 - r2);
    const std::int64_t hi = std::min(r1, c1);
    const double ln_denom = ln_choose(n, c1);
    auto ln_prob = [&](std::int64_t x) {
        return ln_choose(r1, x) + ln_choose(r2, c1 - x) - ln_denom;
    };

    const double ln_obs = ln_prob(a);
    const double ln_cut = ln_obs + std::log1p(1e-7);
    double p = 0.0;
    for (std::int64_t x = lo; x <= hi; ++x) {
        double lp = ln_prob(x);
        if (lp <= ln_cut) p += std::exp(lp);
    }
    return std::min(p, 1.0);
}

} // namespace mgmt
