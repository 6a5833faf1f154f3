#pragma once

// Independent reference implementation of the decoder forward pass, written
// against the parameter layout contract only. Everything is recomputed from
// scratch for every query, position by position, with plain nested vectors —
// deliberately sharing no code with weakforge::Model.

#include <cmath>
#include <span>
#include <vector>

#include "weakforge/arch.hpp"
#include "weakforge/snapshot.hpp"

namespace weakforge::testsupport {

using Mat = std::vector<std::vector<double>>;

inline double naive_gelu(double z) {
    return 0.5 * z * (1.0 + std::erf(z / std::sqrt(2.0)));
}

inline Mat fetch(std::span<const double> params, std::size_t off, int rows, int cols) {
    Mat m(static_cast<std::size_t>(rows), std::vector<double>(static_cast<std::size_t>(cols)));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                params[off + static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) +
                       static_cast<std::size_t>(c)];
    return m;
}

// Logits over the vocabulary for the next token after `ctx`.
inline std::vector<double> naive_logits(const PolicySnapshot& snap, std::span<const int> ctx) {
    const ArchConfig& arch = snap.arch();
    const ParamLayout layout = ParamLayout::for_arch(arch);
    const auto params = snap.params();
    const int T = static_cast<int>(ctx.size());
    const int D = arch.embed_dim;
    const int H = arch.n_heads;
    const int dh = D / H;

    const Mat E = fetch(params, layout.tok_emb, arch.vocab_size, D);
    const Mat P = fetch(params, layout.pos_emb, arch.context_len, D);

    Mat x(static_cast<std::size_t>(T), std::vector<double>(static_cast<std::size_t>(D)));
    for (int t = 0; t < T; ++t)
        for (int d = 0; d < D; ++d)
            x[t][d] = E[static_cast<std::size_t>(ctx[static_cast<std::size_t>(t)])][d] + P[t][d];

    for (int l = 0; l < arch.n_layers; ++l) {
        const auto& off = layout.layers[static_cast<std::size_t>(l)];
        const Mat Wq = fetch(params, off.wq, D, D);
        const Mat Wk = fetch(params, off.wk, D, D);
        const Mat Wv = fetch(params, off.wv, D, D);
        const Mat Wo = fetch(params, off.wo, D, D);
        const Mat W1 = fetch(params, off.w1, D, arch.ff_hidden);
        const Mat B1 = fetch(params, off.b1, 1, arch.ff_hidden);
        const Mat W2 = fetch(params, off.w2, arch.ff_hidden, D);
        const Mat B2 = fetch(params, off.b2, 1, D);

        auto matvec = [&](const Mat& W, const std::vector<double>& in) {
            std::vector<double> out(W[0].size(), 0.0);
            for (std::size_t i = 0; i < W.size(); ++i)
                for (std::size_t j = 0; j < out.size(); ++j) out[j] += in[i] * W[i][j];
            return out;
        };

        Mat q(static_cast<std::size_t>(T)), k(static_cast<std::size_t>(T)), v(static_cast<std::size_t>(T));
        for (int t = 0; t < T; ++t) {
            q[t] = matvec(Wq, x[t]);
            k[t] = matvec(Wk, x[t]);
            v[t] = matvec(Wv, x[t]);
        }

        Mat attn_out(static_cast<std::size_t>(T), std::vector<double>(static_cast<std::size_t>(D), 0.0));
        for (int t = 0; t < T; ++t) {
            for (int h = 0; h < H; ++h) {
                std::vector<double> logit;
                for (int u = 0; u <= t; ++u) {
                    double s = 0.0;
                    for (int j = 0; j < dh; ++j)
                        s += q[t][static_cast<std::size_t>(h * dh + j)] * k[u][static_cast<std::size_t>(h * dh + j)];
                    logit.push_back(s / std::sqrt(static_cast<double>(dh)));
                }
                // softmax, the plain exp/sum way
                double denom = 0.0;
                std::vector<double> ex;
                double mx = logit[0];
                for (double s : logit) mx = std::max(mx, s);
                for (double s : logit) {
                    ex.push_back(std::exp(s - mx));
                    denom += ex.back();
                }
                for (int u = 0; u <= t; ++u)
                    for (int j = 0; j < dh; ++j)
                        attn_out[t][static_cast<std::size_t>(h * dh + j)] +=
                            (ex[static_cast<std::size_t>(u)] / denom) * v[u][static_cast<std::size_t>(h * dh + j)];
            }
        }

        for (int t = 0; t < T; ++t) {
            const std::vector<double> o = matvec(Wo, attn_out[t]);
            for (int d = 0; d < D; ++d) x[t][d] += o[d];
        }

        for (int t = 0; t < T; ++t) {
            std::vector<double> u1 = matvec(W1, x[t]);
            for (std::size_t f = 0; f < u1.size(); ++f) u1[f] = naive_gelu(u1[f] + B1[0][f]);
            const std::vector<double> f_out = matvec(W2, u1);
            for (int d = 0; d < D; ++d) x[t][d] += f_out[d] + B2[0][d];
        }
    }

    std::vector<double> logits(static_cast<std::size_t>(arch.vocab_size), 0.0);
    for (int v2 = 0; v2 < arch.vocab_size; ++v2)
        for (int d = 0; d < D; ++d) logits[static_cast<std::size_t>(v2)] += x[static_cast<std::size_t>(T - 1)][static_cast<std::size_t>(d)] * E[static_cast<std::size_t>(v2)][static_cast<std::size_t>(d)];
    return logits;
}

// Softmax of the naive logits.
inline std::vector<double> naive_dist(const PolicySnapshot& snap, std::span<const int> ctx) {
    std::vector<double> logits = naive_logits(snap, ctx);
    double mx = logits[0];
    for (double l : logits) mx = std::max(mx, l);
    double z = 0.0;
    for (double l : logits) z += std::exp(l - mx);
    std::vector<double> dist(logits.size());
    for (std::size_t i = 0; i < logits.size(); ++i) dist[i] = std::exp(logits[i] - mx) / z;
    return dist;
}

// Sum of log p over the continuation, each step scored with a fresh
// from-scratch forward over its own prefix.
inline double naive_sequence_logprob(const PolicySnapshot& snap, std::span<const int> prompt,
                                     std::span<const int> continuation) {
    std::vector<int> ctx(prompt.begin(), prompt.end());
    double total = 0.0;
    for (int tok : continuation) {
        const std::vector<double> dist = naive_dist(snap, ctx);
        total += std::log(dist[static_cast<std::size_t>(tok)]);
        ctx.push_back(tok);
    }
    return total;
}

}  // namespace weakforge::testsupport
