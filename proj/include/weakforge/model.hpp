#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "weakforge/snapshot.hpp"
#include "weakforge/tokens.hpp"

namespace weakforge {

// Stateless math over a snapshot's parameters. All heavy lifting happens on
// raw id spans; the snapshot-level wrappers below add the vocabulary and
// contract checks.
class Model {
public:
    Model(const ArchConfig& arch, std::span<const double> params);

    // Next-token distribution after the full context. Strictly positive,
    // sums to 1 (within rounding), length vocab_size.
    std::vector<double> forward_dist(std::span<const int> context) const;

    // Sum over continuation positions of log p(token | all earlier tokens).
    double sequence_logprob(std::span<const int> prompt, std::span<const int> continuation) const;

    // Core primitive: returns sum_t weights[t] * log p(ids[t+1] | ids[0..t]).
    // weights has length ids.size()-1, indexed by context position. When grad
    // is nonempty (length param_count) the analytic d/dtheta of that weighted
    // sum is accumulated into it.
    double weighted_logprob(std::span<const int> ids, std::span<const double> weights,
                            std::span<double> grad = {}) const;

    const ArchConfig& arch() const { return arch_; }
    const ParamLayout& layout() const { return layout_; }

private:
    struct Workspace;
    void forward(std::span<const int> ids, Workspace& ws) const;
    void backward(std::span<const int> ids, const Workspace& ws, std::span<const double> dlogits,
                  std::span<double> grad) const;
    void check_context(std::span<const int> ids) const;

    ArchConfig arch_;
    ParamLayout layout_;
    std::span<const double> params_;
};

// A differentiable scalar objective over snapshot parameters. Training losses
// implement this; the finite-difference harness only needs value().
class LossSpec {
public:
    virtual ~LossSpec() = default;
    virtual double value(const PolicySnapshot& snapshot) const = 0;
    virtual void accumulate_grad(const PolicySnapshot& snapshot, std::span<double> grad) const = 0;
    virtual std::string name() const = 0;
};

// --- snapshot-level operations ---

std::vector<double> forward_dist(const PolicySnapshot& snapshot, const Vocab& vocab,
                                 const TokenSequence& context);

double sequence_logprob(const PolicySnapshot& snapshot, const Vocab& vocab,
                        const TokenSequence& prompt, const TokenSequence& continuation);

// Exact analytic gradient of the loss at the snapshot's parameters. Throws
// NumericOverflowError naming the parameter block if anything non-finite
// appears.
std::vector<double> grad_loss(const PolicySnapshot& snapshot, const LossSpec& loss);

// Plain gradient-descent step: params - lr * grad, returned as a child
// snapshot. The input snapshot is untouched.
PolicySnapshot apply_update(const PolicySnapshot& snapshot, std::span<const double> grad, double lr);

}  // namespace weakforge
