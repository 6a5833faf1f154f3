#include "weakforge/arch.hpp"

#include <nlohmann/json.hpp>

#include "weakforge/errors.hpp"

namespace weakforge {

std::size_t ArchConfig::param_count() const {
    const auto v = static_cast<std::size_t>(vocab_size);
    const auto d = static_cast<std::size_t>(embed_dim);
    const auto c = static_cast<std::size_t>(context_len);
    const auto f = static_cast<std::size_t>(ff_hidden);
    const std::size_t per_layer = 4 * d * d + d * f + f + f * d + d;
    return v * d + c * d + static_cast<std::size_t>(n_layers) * per_layer;
}

void ArchConfig::validate() const {
    if (vocab_size <= 0 || embed_dim <= 0 || context_len <= 0 || n_layers <= 0 || n_heads <= 0 ||
        ff_hidden <= 0)
        throw ContractViolation("arch config fields must be positive");
    if (embed_dim % n_heads != 0)
        throw ContractViolation("embed_dim must be divisible by n_heads");
}

std::string ArchConfig::to_json() const {
    // nlohmann objects keep keys sorted, which is exactly the canonical form
    // we want for hashing and the checkpoint header.
    nlohmann::json j;
    j["context_len"] = context_len;
    j["embed_dim"] = embed_dim;
    j["ff_hidden"] = ff_hidden;
    j["n_heads"] = n_heads;
    j["n_layers"] = n_layers;
    j["vocab_size"] = vocab_size;
    return j.dump();
}

ArchConfig ArchConfig::from_json(std::string_view text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ArchConfig a;
    a.context_len = j.at("context_len").get<int>();
    a.embed_dim = j.at("embed_dim").get<int>();
    a.ff_hidden = j.at("ff_hidden").get<int>();
    a.n_heads = j.at("n_heads").get<int>();
    a.n_layers = j.at("n_layers").get<int>();
    a.vocab_size = j.at("vocab_size").get<int>();
    a.validate();
    return a;
}

ParamLayout ParamLayout::for_arch(const ArchConfig& arch) {
    arch.validate();
    const auto d = static_cast<std::size_t>(arch.embed_dim);
    const auto f = static_cast<std::size_t>(arch.ff_hidden);

    ParamLayout layout;
    std::size_t pos = 0;
    auto add = [&](std::string name, std::size_t size) {
        layout.blocks.push_back({std::move(name), pos, size});
        const std::size_t off = pos;
        pos += size;
        return off;
    };

    layout.tok_emb = add("tok_emb", static_cast<std::size_t>(arch.vocab_size) * d);
    layout.pos_emb = add("pos_emb", static_cast<std::size_t>(arch.context_len) * d);
    for (int l = 0; l < arch.n_layers; ++l) {
        const std::string p = "layer" + std::to_string(l) + ".";
        LayerOffsets lo;
        lo.wq = add(p + "attn_wq", d * d);
        lo.wk = add(p + "attn_wk", d * d);
        lo.wv = add(p + "attn_wv", d * d);
        lo.wo = add(p + "attn_wo", d * d);
        lo.w1 = add(p + "ff_w1", d * f);
        lo.b1 = add(p + "ff_b1", f);
        lo.w2 = add(p + "ff_w2", f * d);
        lo.b2 = add(p + "ff_b2", d);
        layout.layers.push_back(lo);
    }
    layout.total = pos;
    return layout;
}

std::string_view ParamLayout::block_for_index(std::size_t index) const {
    for (const auto& b : blocks)
        if (index >= b.offset && index < b.offset + b.size) return b.name;
    return "<out of range>";
}

}  // namespace weakforge
