#include "weakforge/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "weakforge/errors.hpp"

namespace weakforge {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kInvSqrt2Pi = 0.39894228040143267794;

inline double gelu(double z) { return 0.5 * z * std::erfc(-z * kInvSqrt2); }

inline double gelu_deriv(double z) {
    const double cdf = 0.5 * std::erfc(-z * kInvSqrt2);
    const double pdf = kInvSqrt2Pi * std::exp(-0.5 * z * z);
    return cdf + z * pdf;
}

inline double log_sum_exp(const double* row, int n) {
    double m = row[0];
    for (int i = 1; i < n; ++i) m = std::max(m, row[i]);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::exp(row[i] - m);
    return m + std::log(s);
}

}  // namespace

struct Model::Workspace {
    struct Layer {
        std::vector<double> x_in;   // T x D, stream entering the block
        std::vector<double> q, k, v;  // T x D
        std::vector<double> p;      // H x T x T attention probabilities
        std::vector<double> a;      // T x D, concatenated head outputs
        std::vector<double> x_mid;  // T x D, after the attention residual
        std::vector<double> u1, g;  // T x F, pre/post activation
    };
    int T = 0;
    std::vector<Layer> layers;
    std::vector<double> x_final;  // T x D
    std::vector<double> logits;   // T x V
};

Model::Model(const ArchConfig& arch, std::span<const double> params)
    : arch_(arch), layout_(ParamLayout::for_arch(arch)), params_(params) {
    if (params.size() != layout_.total)
        throw ContractViolation("parameter vector length does not match arch");
}

void Model::check_context(std::span<const int> ids) const {
    if (ids.empty()) throw ContractViolation("context must be nonempty");
    if (static_cast<int>(ids.size()) > arch_.context_len)
        throw ContractViolation("context longer than the model context length");
    for (int id : ids)
        if (id < 0 || id >= arch_.vocab_size) throw ContractViolation("token id out of vocabulary");
}

void Model::forward(std::span<const int> ids, Workspace& ws) const {
    const int T = static_cast<int>(ids.size());
    const int D = arch_.embed_dim;
    const int V = arch_.vocab_size;
    const int F = arch_.ff_hidden;
    const int H = arch_.n_heads;
    const int dh = D / H;
    const double inv_sqrt_dh = 1.0 / std::sqrt(static_cast<double>(dh));

    const double* E = params_.data() + layout_.tok_emb;
    const double* P = params_.data() + layout_.pos_emb;

    ws.T = T;
    ws.layers.resize(static_cast<std::size_t>(arch_.n_layers));

    std::vector<double> x(static_cast<std::size_t>(T) * D);
    for (int t = 0; t < T; ++t) {
        const double* e = E + static_cast<std::size_t>(ids[t]) * D;
        const double* p = P + static_cast<std::size_t>(t) * D;
        for (int d = 0; d < D; ++d) x[static_cast<std::size_t>(t) * D + d] = e[d] + p[d];
    }

    std::vector<double> scores(static_cast<std::size_t>(T));
    for (int l = 0; l < arch_.n_layers; ++l) {
        auto& lw = ws.layers[static_cast<std::size_t>(l)];
        const auto& off = layout_.layers[static_cast<std::size_t>(l)];
        const double* Wq = params_.data() + off.wq;
        const double* Wk = params_.data() + off.wk;
        const double* Wv = params_.data() + off.wv;
        const double* Wo = params_.data() + off.wo;
        const double* W1 = params_.data() + off.w1;
        const double* b1 = params_.data() + off.b1;
        const double* W2 = params_.data() + off.w2;
        const double* b2 = params_.data() + off.b2;

        lw.x_in = x;
        lw.q.assign(static_cast<std::size_t>(T) * D, 0.0);
        lw.k.assign(static_cast<std::size_t>(T) * D, 0.0);
        lw.v.assign(static_cast<std::size_t>(T) * D, 0.0);
        for (int t = 0; t < T; ++t) {
            const double* xt = &lw.x_in[static_cast<std::size_t>(t) * D];
            double* qt = &lw.q[static_cast<std::size_t>(t) * D];
            double* kt = &lw.k[static_cast<std::size_t>(t) * D];
            double* vt = &lw.v[static_cast<std::size_t>(t) * D];
            for (int d = 0; d < D; ++d) {
                const double xv = xt[d];
                if (xv == 0.0) continue;
                const double* wq = Wq + static_cast<std::size_t>(d) * D;
                const double* wk = Wk + static_cast<std::size_t>(d) * D;
                const double* wv = Wv + static_cast<std::size_t>(d) * D;
                for (int j = 0; j < D; ++j) {
                    qt[j] += xv * wq[j];
                    kt[j] += xv * wk[j];
                    vt[j] += xv * wv[j];
                }
            }
        }

        lw.p.assign(static_cast<std::size_t>(H) * T * T, 0.0);
        lw.a.assign(static_cast<std::size_t>(T) * D, 0.0);
        for (int h = 0; h < H; ++h) {
            const int base = h * dh;
            double* phead = &lw.p[static_cast<std::size_t>(h) * T * T];
            for (int t = 0; t < T; ++t) {
                const double* qt = &lw.q[static_cast<std::size_t>(t) * D + base];
                for (int u = 0; u <= t; ++u) {
                    const double* ku = &lw.k[static_cast<std::size_t>(u) * D + base];
                    double s = 0.0;
                    for (int j = 0; j < dh; ++j) s += qt[j] * ku[j];
                    scores[static_cast<std::size_t>(u)] = s * inv_sqrt_dh;
                }
                double m = scores[0];
                for (int u = 1; u <= t; ++u) m = std::max(m, scores[static_cast<std::size_t>(u)]);
                double z = 0.0;
                for (int u = 0; u <= t; ++u) {
                    const double e = std::exp(scores[static_cast<std::size_t>(u)] - m);
                    phead[static_cast<std::size_t>(t) * T + u] = e;
                    z += e;
                }
                const double inv_z = 1.0 / z;
                double* arow = &lw.a[static_cast<std::size_t>(t) * D + base];
                for (int u = 0; u <= t; ++u) {
                    const double pw = phead[static_cast<std::size_t>(t) * T + u] * inv_z;
                    phead[static_cast<std::size_t>(t) * T + u] = pw;
                    const double* vu = &lw.v[static_cast<std::size_t>(u) * D + base];
                    for (int j = 0; j < dh; ++j) arow[j] += pw * vu[j];
                }
            }
        }

        lw.x_mid.assign(static_cast<std::size_t>(T) * D, 0.0);
        for (int t = 0; t < T; ++t) {
            const double* at = &lw.a[static_cast<std::size_t>(t) * D];
            double* xm = &lw.x_mid[static_cast<std::size_t>(t) * D];
            const double* xi = &lw.x_in[static_cast<std::size_t>(t) * D];
            for (int j = 0; j < D; ++j) xm[j] = xi[j];
            for (int d = 0; d < D; ++d) {
                const double av = at[d];
                if (av == 0.0) continue;
                const double* wo = Wo + static_cast<std::size_t>(d) * D;
                for (int j = 0; j < D; ++j) xm[j] += av * wo[j];
            }
        }

        lw.u1.assign(static_cast<std::size_t>(T) * F, 0.0);
        lw.g.assign(static_cast<std::size_t>(T) * F, 0.0);
        for (int t = 0; t < T; ++t) {
            const double* xm = &lw.x_mid[static_cast<std::size_t>(t) * D];
            double* u1 = &lw.u1[static_cast<std::size_t>(t) * F];
            for (int f = 0; f < F; ++f) u1[f] = b1[f];
            for (int d = 0; d < D; ++d) {
                const double xv = xm[d];
                if (xv == 0.0) continue;
                const double* w1 = W1 + static_cast<std::size_t>(d) * F;
                for (int f = 0; f < F; ++f) u1[f] += xv * w1[f];
            }
            double* g = &lw.g[static_cast<std::size_t>(t) * F];
            for (int f = 0; f < F; ++f) g[f] = gelu(u1[f]);
            double* xt = &x[static_cast<std::size_t>(t) * D];
            for (int d = 0; d < D; ++d) xt[d] = xm[d] + b2[d];
            for (int f = 0; f < F; ++f) {
                const double gv = g[f];
                if (gv == 0.0) continue;
                const double* w2 = W2 + static_cast<std::size_t>(f) * D;
                for (int d = 0; d < D; ++d) xt[d] += gv * w2[d];
            }
        }
    }

    ws.x_final = x;
    ws.logits.assign(static_cast<std::size_t>(T) * V, 0.0);
    for (int t = 0; t < T; ++t) {
        const double* xt = &ws.x_final[static_cast<std::size_t>(t) * D];
        double* lrow = &ws.logits[static_cast<std::size_t>(t) * V];
        for (int v = 0; v < V; ++v) {
            const double* ev = E + static_cast<std::size_t>(v) * D;
            double s = 0.0;
            for (int d = 0; d < D; ++d) s += xt[d] * ev[d];
            lrow[v] = s;
        }
    }
}

void Model::backward(std::span<const int> ids, const Workspace& ws, std::span<const double> dlogits,
                     std::span<double> grad) const {
    const int T = ws.T;
    const int D = arch_.embed_dim;
    const int V = arch_.vocab_size;
    const int F = arch_.ff_hidden;
    const int H = arch_.n_heads;
    const int dh = D / H;
    const double inv_sqrt_dh = 1.0 / std::sqrt(static_cast<double>(dh));

    const double* E = params_.data() + layout_.tok_emb;
    double* gE = grad.data() + layout_.tok_emb;
    double* gP = grad.data() + layout_.pos_emb;

    // Tied projection: gradient reaches both the stream and the embedding.
    std::vector<double> dx(static_cast<std::size_t>(T) * D, 0.0);
    for (int t = 0; t < T; ++t) {
        const double* drow = dlogits.data() + static_cast<std::size_t>(t) * V;
        const double* xt = &ws.x_final[static_cast<std::size_t>(t) * D];
        double* dxt = &dx[static_cast<std::size_t>(t) * D];
        for (int v = 0; v < V; ++v) {
            const double dl = drow[v];
            if (dl == 0.0) continue;
            const double* ev = E + static_cast<std::size_t>(v) * D;
            double* gev = gE + static_cast<std::size_t>(v) * D;
            for (int d = 0; d < D; ++d) {
                dxt[d] += dl * ev[d];
                gev[d] += dl * xt[d];
            }
        }
    }

    std::vector<double> dxm(static_cast<std::size_t>(T) * D);
    std::vector<double> dg(static_cast<std::size_t>(T) * F);
    std::vector<double> du1(static_cast<std::size_t>(T) * F);
    std::vector<double> da(static_cast<std::size_t>(T) * D);
    std::vector<double> dq(static_cast<std::size_t>(T) * D);
    std::vector<double> dk(static_cast<std::size_t>(T) * D);
    std::vector<double> dv(static_cast<std::size_t>(T) * D);
    std::vector<double> dp_row(static_cast<std::size_t>(T));

    for (int l = arch_.n_layers - 1; l >= 0; --l) {
        const auto& lw = ws.layers[static_cast<std::size_t>(l)];
        const auto& off = layout_.layers[static_cast<std::size_t>(l)];
        const double* Wq = params_.data() + off.wq;
        const double* Wk = params_.data() + off.wk;
        const double* Wv = params_.data() + off.wv;
        const double* Wo = params_.data() + off.wo;
        const double* W1 = params_.data() + off.w1;
        const double* W2 = params_.data() + off.w2;
        double* gWq = grad.data() + off.wq;
        double* gWk = grad.data() + off.wk;
        double* gWv = grad.data() + off.wv;
        double* gWo = grad.data() + off.wo;
        double* gW1 = grad.data() + off.w1;
        double* gb1 = grad.data() + off.b1;
        double* gW2 = grad.data() + off.w2;
        double* gb2 = grad.data() + off.b2;

        // Feed-forward backward; dx holds dL/d(x_out).
        dxm = dx;  // residual path
        for (int t = 0; t < T; ++t) {
            const double* dxt = &dx[static_cast<std::size_t>(t) * D];
            const double* g = &lw.g[static_cast<std::size_t>(t) * F];
            const double* u1 = &lw.u1[static_cast<std::size_t>(t) * F];
            double* dgt = &dg[static_cast<std::size_t>(t) * F];
            double* du1t = &du1[static_cast<std::size_t>(t) * F];
            for (int d = 0; d < D; ++d) gb2[d] += dxt[d];
            for (int f = 0; f < F; ++f) {
                const double* w2 = W2 + static_cast<std::size_t>(f) * D;
                double* gw2 = gW2 + static_cast<std::size_t>(f) * D;
                double s = 0.0;
                const double gv = g[f];
                for (int d = 0; d < D; ++d) {
                    s += dxt[d] * w2[d];
                    gw2[d] += gv * dxt[d];
                }
                dgt[f] = s;
                du1t[f] = s * gelu_deriv(u1[f]);
                gb1[f] += du1t[f];
            }
            const double* xm = &lw.x_mid[static_cast<std::size_t>(t) * D];
            double* dxmt = &dxm[static_cast<std::size_t>(t) * D];
            for (int d = 0; d < D; ++d) {
                const double* w1 = W1 + static_cast<std::size_t>(d) * F;
                double* gw1 = gW1 + static_cast<std::size_t>(d) * F;
                double s = 0.0;
                const double xv = xm[d];
                for (int f = 0; f < F; ++f) {
                    s += du1t[f] * w1[f];
                    gw1[f] += xv * du1t[f];
                }
                dxmt[d] += s;
            }
        }

        // Attention backward; dxm holds dL/d(x_mid). dx becomes dL/d(x_in).
        dx = dxm;  // residual path
        da.assign(static_cast<std::size_t>(T) * D, 0.0);
        for (int t = 0; t < T; ++t) {
            const double* dxmt = &dxm[static_cast<std::size_t>(t) * D];
            const double* at = &lw.a[static_cast<std::size_t>(t) * D];
            double* dat = &da[static_cast<std::size_t>(t) * D];
            for (int d = 0; d < D; ++d) {
                const double* wo = Wo + static_cast<std::size_t>(d) * D;
                double* gwo = gWo + static_cast<std::size_t>(d) * D;
                double s = 0.0;
                const double av = at[d];
                for (int j = 0; j < D; ++j) {
                    s += dxmt[j] * wo[j];
                    gwo[j] += av * dxmt[j];
                }
                dat[d] = s;
            }
        }

        dq.assign(static_cast<std::size_t>(T) * D, 0.0);
        dk.assign(static_cast<std::size_t>(T) * D, 0.0);
        dv.assign(static_cast<std::size_t>(T) * D, 0.0);
        for (int h = 0; h < H; ++h) {
            const int base = h * dh;
            const double* phead = &lw.p[static_cast<std::size_t>(h) * T * T];
            for (int t = 0; t < T; ++t) {
                const double* dat = &da[static_cast<std::size_t>(t) * D + base];
                const double* prow = phead + static_cast<std::size_t>(t) * T;
                double dot = 0.0;
                for (int u = 0; u <= t; ++u) {
                    const double* vu = &lw.v[static_cast<std::size_t>(u) * D + base];
                    double s = 0.0;
                    for (int j = 0; j < dh; ++j) s += dat[j] * vu[j];
                    dp_row[static_cast<std::size_t>(u)] = s;
                    dot += prow[u] * s;
                    double* dvu = &dv[static_cast<std::size_t>(u) * D + base];
                    for (int j = 0; j < dh; ++j) dvu[j] += prow[u] * dat[j];
                }
                const double* qt = &lw.q[static_cast<std::size_t>(t) * D + base];
                double* dqt = &dq[static_cast<std::size_t>(t) * D + base];
                for (int u = 0; u <= t; ++u) {
                    const double ds = prow[u] * (dp_row[static_cast<std::size_t>(u)] - dot) * inv_sqrt_dh;
                    if (ds == 0.0) continue;
                    const double* ku = &lw.k[static_cast<std::size_t>(u) * D + base];
                    double* dku = &dk[static_cast<std::size_t>(u) * D + base];
                    for (int j = 0; j < dh; ++j) {
                        dqt[j] += ds * ku[j];
                        dku[j] += ds * qt[j];
                    }
                }
            }
        }

        for (int t = 0; t < T; ++t) {
            const double* xi = &lw.x_in[static_cast<std::size_t>(t) * D];
            const double* dqt = &dq[static_cast<std::size_t>(t) * D];
            const double* dkt = &dk[static_cast<std::size_t>(t) * D];
            const double* dvt = &dv[static_cast<std::size_t>(t) * D];
            double* dxt = &dx[static_cast<std::size_t>(t) * D];
            for (int d = 0; d < D; ++d) {
                const double* wq = Wq + static_cast<std::size_t>(d) * D;
                const double* wk = Wk + static_cast<std::size_t>(d) * D;
                const double* wv = Wv + static_cast<std::size_t>(d) * D;
                double* gwq = gWq + static_cast<std::size_t>(d) * D;
                double* gwk = gWk + static_cast<std::size_t>(d) * D;
                double* gwv = gWv + static_cast<std::size_t>(d) * D;
                double s = 0.0;
                const double xv = xi[d];
                for (int j = 0; j < D; ++j) {
                    s += dqt[j] * wq[j] + dkt[j] * wk[j] + dvt[j] * wv[j];
                    gwq[j] += xv * dqt[j];
                    gwk[j] += xv * dkt[j];
                    gwv[j] += xv * dvt[j];
                }
                dxt[d] += s;
            }
        }
    }

    for (int t = 0; t < T; ++t) {
        const double* dxt = &dx[static_cast<std::size_t>(t) * D];
        double* ge = gE + static_cast<std::size_t>(ids[t]) * D;
        double* gp = gP + static_cast<std::size_t>(t) * D;
        for (int d = 0; d < D; ++d) {
            ge[d] += dxt[d];
            gp[d] += dxt[d];
        }
    }
}

std::vector<double> Model::forward_dist(std::span<const int> context) const {
    check_context(context);
    Workspace ws;
    forward(context, ws);
    const int V = arch_.vocab_size;
    const int t = ws.T - 1;
    const double* row = &ws.logits[static_cast<std::size_t>(t) * V];
    for (int v = 0; v < V; ++v)
        if (!std::isfinite(row[v])) throw NumericOverflowError("non-finite logits at block tok_emb");
    const double lse = log_sum_exp(row, V);
    std::vector<double> dist(static_cast<std::size_t>(V));
    double total = 0.0;
    for (int v = 0; v < V; ++v) {
        dist[static_cast<std::size_t>(v)] = std::exp(row[v] - lse);
        total += dist[static_cast<std::size_t>(v)];
    }
    for (double& d : dist) d /= total;
    return dist;
}

double Model::weighted_logprob(std::span<const int> ids, std::span<const double> weights,
                               std::span<double> grad) const {
    const int T = static_cast<int>(ids.size());
    if (T < 2) return 0.0;
    check_context(ids);
    if (static_cast<int>(weights.size()) != T - 1)
        throw ContractViolation("weights length must be ids length - 1");
    bool any = false;
    for (double w : weights)
        if (w != 0.0) any = true;
    if (!any) return 0.0;

    Workspace ws;
    forward(ids, ws);
    const int V = arch_.vocab_size;

    double total = 0.0;
    std::vector<double> dlogits;
    if (!grad.empty()) {
        if (grad.size() != layout_.total)
            throw ContractViolation("gradient vector length does not match arch");
        dlogits.assign(static_cast<std::size_t>(T) * V, 0.0);
    }
    for (int t = 0; t + 1 < T; ++t) {
        const double w = weights[static_cast<std::size_t>(t)];
        if (w == 0.0) continue;
        const double* row = &ws.logits[static_cast<std::size_t>(t) * V];
        const double lse = log_sum_exp(row, V);
        const int target = ids[t + 1];
        total += w * (row[target] - lse);
        if (!grad.empty()) {
            double* drow = &dlogits[static_cast<std::size_t>(t) * V];
            for (int v = 0; v < V; ++v) drow[v] = -w * std::exp(row[v] - lse);
            drow[target] += w;
        }
    }
    if (!grad.empty()) backward(ids, ws, dlogits, grad);
    return total;
}

double Model::sequence_logprob(std::span<const int> prompt, std::span<const int> continuation) const {
    if (prompt.empty()) throw ContractViolation("prompt must be nonempty");
    if (continuation.empty()) return 0.0;
    std::vector<int> ids(prompt.begin(), prompt.end());
    ids.insert(ids.end(), continuation.begin(), continuation.end());
    std::vector<double> weights(ids.size() - 1, 0.0);
    for (std::size_t t = prompt.size() - 1; t < ids.size() - 1; ++t) weights[t] = 1.0;
    return weighted_logprob(ids, weights);
}

std::vector<double> forward_dist(const PolicySnapshot& snapshot, const Vocab& vocab,
                                 const TokenSequence& context) {
    snapshot.require_vocab(vocab);
    Model model(snapshot.arch(), snapshot.params());
    return model.forward_dist(context.view());
}

double sequence_logprob(const PolicySnapshot& snapshot, const Vocab& vocab,
                        const TokenSequence& prompt, const TokenSequence& continuation) {
    snapshot.require_vocab(vocab);
    Model model(snapshot.arch(), snapshot.params());
    if (prompt.length() + continuation.length() > snapshot.arch().context_len)
        throw ContractViolation("prompt plus continuation exceeds the context length");
    return model.sequence_logprob(prompt.view(), continuation.view());
}

std::vector<double> grad_loss(const PolicySnapshot& snapshot, const LossSpec& loss) {
    std::vector<double> grad(snapshot.params().size(), 0.0);
    loss.accumulate_grad(snapshot, grad);
    const ParamLayout layout = ParamLayout::for_arch(snapshot.arch());
    for (const auto& block : layout.blocks) {
        for (std::size_t i = block.offset; i < block.offset + block.size; ++i) {
            if (!std::isfinite(grad[i]))
                throw NumericOverflowError(loss.name() + ": non-finite gradient in block " + block.name);
        }
    }
    return grad;
}

PolicySnapshot apply_update(const PolicySnapshot& snapshot, std::span<const double> grad, double lr) {
    if (grad.size() != snapshot.params().size())
        throw ContractViolation("gradient length does not match parameter count");
    if (lr < 0.0) throw ContractViolation("learning rate must be nonnegative");
    std::vector<double> next(snapshot.params().begin(), snapshot.params().end());
    for (std::size_t i = 0; i < next.size(); ++i) next[i] -= lr * grad[i];
    return snapshot.child(std::move(next));
}

}  // namespace weakforge
