#include "mgmt/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mgmt {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace

std::uint64_t derive_seed(std::uint64_t root, std::string_view label) {
    // FNV-1a over the label, mixed with the root through splitmix64.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    std::uint64_t s = root ^ h;
    return splitmix64(s);
}

std::uint64_t derive_seed(std::uint64_t root, std::string_view label, std::uint64_t index) {
    std::uint64_t s = derive_seed(root, label) ^ (index * 0x9e3779b97f4a7c15ULL);
    return splitmix64(s);
}

Rng::Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (auto& w : state_) w = splitmix64(s);
}

std::uint64_t Rng::next_u64() {
    // xoshiro256++
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::uniform_int(std::uint64_t bound) {
    // Multiply-shift reduction; bias is O(bound / 2^64), negligible here.
    return static_cast<std::uint64_t>(
        (static_cast<__uint128_t>(next_u64()) * bound) >> 64);
}

double Rng::normal() {
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<int> Rng::sample_without_replacement(int n, int k) {
    // Partial Fisher-Yates over [0, n).
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    if (k > n) k = n;
    for (int i = 0; i < k; ++i) {
        int j = i + static_cast<int>(uniform_int(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[i], pool[j]);
    }
    std::vector<int> out(pool.begin(), pool.begin() + k);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace mgmt
