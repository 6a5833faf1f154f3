#include <doctest.h>

#include <cmath>

#include "support/finite_diff.hpp"
#include "support/naive_model.hpp"
#include "weakforge/errors.hpp"
#include "weakforge/model.hpp"
#include "weakforge/rng.hpp"

using namespace weakforge;
using namespace weakforge::testsupport;

namespace {

const Vocab& ascii() {
    static const Vocab v = Vocab::printable_ascii();
    return v;
}

ArchConfig tiny_arch() {
    ArchConfig a;
    a.vocab_size = 7;
    a.embed_dim = 6;
    a.context_len = 10;
    a.n_layers = 1;
    a.n_heads = 2;
    a.ff_hidden = 5;
    return a;
}

PolicySnapshot random_snapshot(const ArchConfig& arch, std::uint64_t seed, double scale) {
    auto rng = stream_rng(seed, {"test-snapshot"});
    std::vector<double> params(arch.param_count());
    for (double& p : params) p = scale * rng.next_normal();
    return PolicySnapshot::from_params(arch, 0xABCD, std::move(params));
}

std::vector<int> random_context(const ArchConfig& arch, std::uint64_t seed, int len) {
    auto rng = stream_rng(seed, {"test-context"});
    std::vector<int> ids;
    for (int i = 0; i < len; ++i)
        ids.push_back(static_cast<int>(rng.next_below(static_cast<std::uint64_t>(arch.vocab_size))));
    return ids;
}

// Weighted next-token log-likelihood as a LossSpec, for the finite-difference
// harness.
struct SeqLogprobLoss final : LossSpec {
    std::vector<int> ids;
    std::vector<double> weights;

    double value(const PolicySnapshot& s) const override {
        return Model(s.arch(), s.params()).weighted_logprob(ids, weights);
    }
    void accumulate_grad(const PolicySnapshot& s, std::span<double> g) const override {
        Model(s.arch(), s.params()).weighted_logprob(ids, weights, g);
    }
    std::string name() const override { return "seq-logprob"; }
};

struct ConstantLoss final : LossSpec {
    double value(const PolicySnapshot&) const override { return 5.0; }
    void accumulate_grad(const PolicySnapshot&, std::span<double>) const override {}
    std::string name() const override { return "constant"; }
};

}  // namespace

TEST_CASE("forward_dist is normalized and strictly positive") {
    ArchConfig arch;
    arch.vocab_size = ascii().size();
    arch.embed_dim = 8;
    arch.context_len = 16;
    arch.n_heads = 2;
    arch.ff_hidden = 12;
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const PolicySnapshot snap = PolicySnapshot::random_init(arch, ascii(), seed, 0.2);
        TokenSequence ctx;
        ctx.ids = random_context(arch, seed + 10, 9);
        const auto dist = forward_dist(snap, ascii(), ctx);
        double total = 0.0;
        for (double p : dist) {
            CHECK(p > 0.0);
            total += p;
        }
        CHECK(std::abs(total - 1.0) <= 1e-12);
    }
}

TEST_CASE("all-zero parameters give the uniform distribution") {
    const ArchConfig arch = tiny_arch();
    const PolicySnapshot snap =
        PolicySnapshot::from_params(arch, 0, std::vector<double>(arch.param_count(), 0.0));
    Model model(arch, snap.params());
    const auto dist = model.forward_dist(std::vector<int>{0, 3, 5});
    for (double p : dist) CHECK(p == doctest::Approx(1.0 / 7.0).epsilon(1e-14));
}

TEST_CASE("forward_dist equals the stepwise enumeration oracle") {
    const ArchConfig arch = tiny_arch();
    for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
        const PolicySnapshot snap = random_snapshot(arch, seed, 0.4);
        const std::vector<int> ctx = {2, 4, 1};
        Model model(arch, snap.params());
        const auto got = model.forward_dist(ctx);
        const auto want = naive_dist(snap, ctx);
        for (std::size_t i = 0; i < got.size(); ++i)
            CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
    }
}

TEST_CASE("multi-layer multi-head forward matches the oracle") {
    ArchConfig arch = tiny_arch();
    arch.n_layers = 2;
    arch.n_heads = 3;
    const PolicySnapshot snap = random_snapshot(arch, 77, 0.3);
    const std::vector<int> ctx = {1, 0, 6, 3, 3, 2};
    Model model(arch, snap.params());
    const auto got = model.forward_dist(ctx);
    const auto want = naive_dist(snap, ctx);
    for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-12));
}

TEST_CASE("forward_dist contract errors") {
    const ArchConfig arch = tiny_arch();
    const PolicySnapshot snap = random_snapshot(arch, 5, 0.1);
    Model model(arch, snap.params());
    CHECK_THROWS_AS(model.forward_dist(std::vector<int>{}), ContractViolation);
    CHECK_THROWS_AS(model.forward_dist(random_context(arch, 1, 11)), ContractViolation);
    CHECK_THROWS_AS(model.forward_dist(std::vector<int>{0, 99}), ContractViolation);

    // Snapshot built against a different vocabulary is refused.
    TokenSequence ctx;
    ctx.ids = {0, 1};
    CHECK_THROWS_AS(forward_dist(snap, ascii(), ctx), IncompatibleSnapshotError);
}

TEST_CASE("sequence_logprob trivial cases") {
    const ArchConfig arch = tiny_arch();
    const PolicySnapshot snap = random_snapshot(arch, 21, 0.3);
    Model model(arch, snap.params());

    CHECK(model.sequence_logprob(std::vector<int>{1, 2}, std::vector<int>{}) == 0.0);
    CHECK_THROWS_AS(model.sequence_logprob(std::vector<int>{}, std::vector<int>{1}),
                    ContractViolation);

    // Uniform model, V = 4: two continuation tokens cost 2 ln(1/4).
    ArchConfig uarch = tiny_arch();
    uarch.vocab_size = 4;
    const PolicySnapshot uniform =
        PolicySnapshot::from_params(uarch, 0, std::vector<double>(uarch.param_count(), 0.0));
    Model umodel(uarch, uniform.params());
    const double lp = umodel.sequence_logprob(std::vector<int>{0}, std::vector<int>{1, 2});
    CHECK(lp == doctest::Approx(2.0 * std::log(0.25)).epsilon(1e-12));
    CHECK(lp == doctest::Approx(-2.772589).epsilon(1e-6));
}

TEST_CASE("sequence_logprob equals the stepwise oracle and is nonpositive") {
    const ArchConfig arch = tiny_arch();
    for (std::uint64_t seed : {31ull, 32ull}) {
        const PolicySnapshot snap = random_snapshot(arch, seed, 0.4);
        Model model(arch, snap.params());
        const std::vector<int> prompt = {0, 5, 2};
        const std::vector<int> cont = {1, 6, 3, 3};
        const double got = model.sequence_logprob(prompt, cont);
        const double want = naive_sequence_logprob(snap, prompt, cont);
        CHECK(got == doctest::Approx(want).epsilon(1e-10));
        CHECK(got <= 0.0);
    }
}

TEST_CASE("sequence_logprob is additive over split continuations") {
    const ArchConfig arch = tiny_arch();
    for (std::uint64_t seed = 41; seed < 46; ++seed) {
        const PolicySnapshot snap = random_snapshot(arch, seed, 0.35);
        Model model(arch, snap.params());
        auto rng = stream_rng(seed, {"addsplit"});
        std::vector<int> prompt = random_context(arch, seed, 2);
        std::vector<int> a = random_context(arch, seed + 100, 3);
        std::vector<int> b = random_context(arch, seed + 200, 3);
        std::vector<int> ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        std::vector<int> prompt_a = prompt;
        prompt_a.insert(prompt_a.end(), a.begin(), a.end());

        const double whole = model.sequence_logprob(prompt, ab);
        const double parts = model.sequence_logprob(prompt, a) + model.sequence_logprob(prompt_a, b);
        CHECK(whole == doctest::Approx(parts).epsilon(1e-10));
    }
}

TEST_CASE("analytic gradient of the sequence loss matches finite differences") {
    for (std::uint64_t seed : {51ull, 52ull, 53ull}) {
        const ArchConfig arch = tiny_arch();
        const PolicySnapshot snap = random_snapshot(arch, seed, 0.3);
        SeqLogprobLoss loss;
        loss.ids = random_context(arch, seed + 7, 8);
        loss.weights.assign(7, 0.0);
        loss.weights[2] = -1.0;
        loss.weights[4] = 0.5;
        loss.weights[6] = -0.25;

        const auto analytic = grad_loss(snap, loss);
        const auto numeric = finite_diff_grad(snap, loss);
        CHECK(max_rel_err(analytic, numeric) < 1e-4);
    }
}

TEST_CASE("gradient check covers stacked layers and heads") {
    ArchConfig arch = tiny_arch();
    arch.n_layers = 2;
    arch.n_heads = 3;
    const PolicySnapshot snap = random_snapshot(arch, 99, 0.25);
    SeqLogprobLoss loss;
    loss.ids = random_context(arch, 17, 7);
    loss.weights.assign(6, -0.5);

    const auto analytic = grad_loss(snap, loss);
    const auto numeric = finite_diff_grad(snap, loss);
    CHECK(max_rel_err(analytic, numeric) < 1e-4);
}

TEST_CASE("a loss constant in the parameters has a zero gradient") {
    const PolicySnapshot snap = random_snapshot(tiny_arch(), 61, 0.3);
    const auto grad = grad_loss(snap, ConstantLoss{});
    for (double g : grad) CHECK(g == 0.0);
}

TEST_CASE("non-finite intermediates raise a numeric overflow naming the block") {
    const ArchConfig arch = tiny_arch();
    std::vector<double> params(arch.param_count(), 1e200);
    const PolicySnapshot snap = PolicySnapshot::from_params(arch, 0, std::move(params));
    SeqLogprobLoss loss;
    loss.ids = {0, 1, 2};
    loss.weights = {1.0, 1.0};
    try {
        grad_loss(snap, loss);
        FAIL("expected NumericOverflowError");
    } catch (const NumericOverflowError& e) {
        CHECK(std::string(e.what()).find("block") != std::string::npos);
    }
}

TEST_CASE("apply_update implements a plain descent step") {
    const ArchConfig arch = tiny_arch();
    const PolicySnapshot snap = random_snapshot(arch, 71, 0.2);
    const std::vector<double> before(snap.params().begin(), snap.params().end());

    SUBCASE("zero gradient keeps parameters, issues a new id") {
        const std::vector<double> zero(arch.param_count(), 0.0);
        const PolicySnapshot next = apply_update(snap, zero, 0.1);
        CHECK(std::vector<double>(next.params().begin(), next.params().end()) == before);
        CHECK(next.id() != snap.id());
        CHECK(next.parent_id() == snap.id());
    }
    SUBCASE("lr 0 keeps parameters") {
        std::vector<double> grad(arch.param_count(), 3.0);
        const PolicySnapshot next = apply_update(snap, grad, 0.0);
        CHECK(std::vector<double>(next.params().begin(), next.params().end()) == before);
    }
    SUBCASE("unit gradient moves one coordinate by exactly -lr") {
        std::vector<double> grad(arch.param_count(), 0.0);
        grad[10] = 1.0;
        const PolicySnapshot next = apply_update(snap, grad, 0.5);
        CHECK(next.params()[10] == before[10] - 0.5);
        for (std::size_t i = 0; i < before.size(); ++i)
            if (i != 10) CHECK(next.params()[i] == before[i]);
    }
    SUBCASE("length mismatch is a contract violation") {
        CHECK_THROWS_AS(apply_update(snap, std::vector<double>(3, 0.0), 0.1), ContractViolation);
    }

    // The input snapshot never moves.
    CHECK(std::vector<double>(snap.params().begin(), snap.params().end()) == before);
}
