#include "weakforge/rng.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "weakforge/errors.hpp"

namespace weakforge {

std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t seed) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    return fnv1a64(bytes.data(), bytes.size());
}

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::string_view> labels) {
    std::uint64_t s = seed;
    for (std::string_view label : labels) {
        SplitMix64 mix{s ^ fnv1a64(label)};
        s = mix.next();
    }
    return s;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
    return derive_seed(seed, {label});
}

Xoshiro256ss::Xoshiro256ss(std::uint64_t seed) {
    SplitMix64 mix{seed};
    for (auto& word : s_) word = mix.next();
}

std::uint64_t Xoshiro256ss::next() {
    const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

double Xoshiro256ss::next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Xoshiro256ss::next_normal() {
    // u1 in (0, 1] so the log is finite.
    const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Xoshiro256ss::next_below(std::uint64_t n) {
    if (n == 0) throw ContractViolation("next_below: bound must be positive");
    const std::uint64_t rem = (~std::uint64_t{0} % n + 1) % n;
    const std::uint64_t lim = ~std::uint64_t{0} - rem;
    std::uint64_t x = next();
    while (x > lim) x = next();
    return x % n;
}

Xoshiro256ss stream_rng(std::uint64_t seed, std::initializer_list<std::string_view> labels) {
    return Xoshiro256ss(derive_seed(seed, labels));
}

}  // namespace weakforge
