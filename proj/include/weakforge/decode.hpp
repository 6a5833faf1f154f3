#pragma once

#include <cstdint>

#include "weakforge/model.hpp"

namespace weakforge {

struct DecodeConfig {
    // 0 means greedy argmax with ties broken toward the lowest token id.
    double temperature = 1.0;
    // 0 means unlimited; otherwise only the k most probable tokens survive
    // (ties at the boundary resolved toward lower ids).
    int top_k = 0;
    int max_new_tokens = 48;
    std::uint64_t rng_seed = 0;
};

// Decodes a continuation of the prompt. Stops at EOS (which is kept in the
// output), at max_new_tokens, or when the context window is full. The result
// is a pure function of (snapshot, prompt, cfg).
TokenSequence sample(const PolicySnapshot& snapshot, const Vocab& vocab, const TokenSequence& prompt,
                     const DecodeConfig& cfg);

}  // namespace weakforge
