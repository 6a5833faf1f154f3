#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string_view>
#include <vector>

namespace weakforge {

// FNV-1a over an octet string. Used for stream labels, vocab hashes and the
// checkpoint checksum.
std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t seed = 0xcbf29ce484222325ull);

// Vigna's splitmix64. One 64-bit word of state, full-period, used both as a
// seed expander and as the label mixer for stream derivation.
struct SplitMix64 {
    std::uint64_t state = 0;
    std::uint64_t next();
};

// Derives a child seed from (seed, label path). Each label folds into the
// state through one splitmix64 step so "a"/"b" and "ab"/"" cannot collide.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::string_view> labels);
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);

// xoshiro256** seeded through splitmix64. All randomness in the project flows
// through this generator so runs replay identically across platforms.
class Xoshiro256ss {
public:
    explicit Xoshiro256ss(std::uint64_t seed);

    std::uint64_t next();

    // Uniform in [0, 1), 53-bit resolution.
    double next_double();

    // Standard normal via Box-Muller; consumes exactly two draws per call.
    double next_normal();

    // Uniform integer in [0, n). Rejection sampled, unbiased. n must be > 0.
    std::uint64_t next_below(std::uint64_t n);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::array<std::uint64_t, 4> s_{};
};

// Convenience: generator for a labeled child stream of a run seed.
Xoshiro256ss stream_rng(std::uint64_t seed, std::initializer_list<std::string_view> labels);

}  // namespace weakforge
