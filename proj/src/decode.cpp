#include "weakforge/decode.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "weakforge/errors.hpp"
#include "weakforge/rng.hpp"

namespace weakforge {

namespace {

int argmax_lowest_id(const std::vector<double>& dist) {
    int best = 0;
    for (int v = 1; v < static_cast<int>(dist.size()); ++v)
        if (dist[static_cast<std::size_t>(v)] > dist[static_cast<std::size_t>(best)]) best = v;
    return best;
}

int draw_token(const std::vector<double>& dist, const DecodeConfig& cfg, Xoshiro256ss& rng) {
    if (cfg.temperature == 0.0) return argmax_lowest_id(dist);

    const int V = static_cast<int>(dist.size());
    std::vector<int> keep(static_cast<std::size_t>(V));
    std::iota(keep.begin(), keep.end(), 0);
    if (cfg.top_k > 0 && cfg.top_k < V) {
        // Stable partial sort by probability descending, id ascending.
        std::partial_sort(keep.begin(), keep.begin() + cfg.top_k, keep.end(), [&](int a, int b) {
            if (dist[static_cast<std::size_t>(a)] != dist[static_cast<std::size_t>(b)])
                return dist[static_cast<std::size_t>(a)] > dist[static_cast<std::size_t>(b)];
            return a < b;
        });
        keep.resize(static_cast<std::size_t>(cfg.top_k));
        std::sort(keep.begin(), keep.end());
    }

    // p^(1/T), renormalized over the kept set.
    const double inv_temp = 1.0 / cfg.temperature;
    std::vector<double> w(keep.size());
    double total = 0.0;
    for (std::size_t i = 0; i < keep.size(); ++i) {
        const double p = dist[static_cast<std::size_t>(keep[i])];
        w[i] = p > 0.0 ? std::exp(std::log(p) * inv_temp) : 0.0;
        total += w[i];
    }
    if (total <= 0.0) return argmax_lowest_id(dist);  // extreme temperature underflow

    const double u = rng.next_double() * total;
    double cum = 0.0;
    for (std::size_t i = 0; i < keep.size(); ++i) {
        cum += w[i];
        if (u < cum) return keep[i];
    }
    return keep.back();
}

}  // namespace

TokenSequence sample(const PolicySnapshot& snapshot, const Vocab& vocab, const TokenSequence& prompt,
                     const DecodeConfig& cfg) {
    snapshot.require_vocab(vocab);
    if (cfg.temperature < 0.0) throw ContractViolation("temperature must be nonnegative");
    if (cfg.top_k < 0) throw ContractViolation("top_k must be positive or 0 for unlimited");
    if (cfg.max_new_tokens < 0) throw ContractViolation("max_new_tokens must be nonnegative");
    if (prompt.empty()) throw ContractViolation("prompt must be nonempty");
    if (prompt.length() > snapshot.arch().context_len)
        throw ContractViolation("prompt longer than the model context length");

    Model model(snapshot.arch(), snapshot.params());
    Xoshiro256ss rng(derive_seed(cfg.rng_seed, {"sample"}));

    std::vector<int> ids = prompt.ids;
    TokenSequence continuation;
    while (static_cast<int>(continuation.ids.size()) < cfg.max_new_tokens &&
           static_cast<int>(ids.size()) < snapshot.arch().context_len) {
        const std::vector<double> dist = model.forward_dist(ids);
        const int tok = draw_token(dist, cfg, rng);
        ids.push_back(tok);
        continuation.ids.push_back(tok);
        if (tok == Vocab::id(Special::Eos)) break;
    }
    return continuation;
}

}  // namespace weakforge
