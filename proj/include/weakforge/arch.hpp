#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace weakforge {

// Shape of the decoder: token embedding + learned positional embedding, then
// n_layers blocks of (causal multi-head self-attention, feed-forward), each
// with a residual connection, and a tied output projection onto the token
// embedding. All parameters are 64-bit reals.
struct ArchConfig {
    int vocab_size = 100;
    int embed_dim = 32;
    int context_len = 64;
    int n_layers = 1;
    int n_heads = 2;
    int ff_hidden = 128;

    std::size_t param_count() const;
    void validate() const;  // throws ContractViolation on bad shapes

    // Canonical single-line JSON with sorted keys; embedded in checkpoints
    // and hashed into snapshot ids, so the rendering must stay stable.
    std::string to_json() const;
    static ArchConfig from_json(std::string_view text);

    bool operator==(const ArchConfig&) const = default;
};

// Offsets of the named parameter blocks inside the flat parameter vector.
struct ParamLayout {
    struct Block {
        std::string name;
        std::size_t offset;
        std::size_t size;
    };

    struct LayerOffsets {
        std::size_t wq, wk, wv, wo;  // each embed_dim x embed_dim
        std::size_t w1, b1, w2, b2;  // embed_dim x ff, ff, ff x embed_dim, embed_dim
    };

    std::size_t tok_emb = 0;  // vocab_size x embed_dim, row-major by token id
    std::size_t pos_emb = 0;  // context_len x embed_dim
    std::vector<LayerOffsets> layers;
    std::vector<Block> blocks;
    std::size_t total = 0;

    static ParamLayout for_arch(const ArchConfig& arch);
    std::string_view block_for_index(std::size_t index) const;
};

}  // namespace weakforge
