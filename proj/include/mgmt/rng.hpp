#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace mgmt {

// All randomness in the pipeline flows from one root seed through named
// derivations, so adding or removing parallelism never changes outputs.
// The generator is xoshiro256++ with all transforms spelled out here;
// nothing is delegated to implementation-defined std:: distributions.

/// Derive a child seed from a root seed and a label, e.g. ("folds"), ("tree", 17).
std::uint64_t derive_seed(std::uint64_t root, std::string_view label);
std::uint64_t derive_seed(std::uint64_t root, std::string_view label, std::uint64_t index);

class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform();

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t uniform_int(std::uint64_t bound);

    /// Standard normal via Box-Muller.
    double normal();
    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_int(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    /// k distinct values from [0, n), returned in ascending order.
    std::vector<int> sample_without_replacement(int n, int k);

private:
    std::uint64_t state_[4];
};

} // namespace mgmt
