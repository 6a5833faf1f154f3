#include "weakforge/snapshot.hpp"

#include <cstring>

#include "weakforge/errors.hpp"
#include "weakforge/rng.hpp"

namespace weakforge {

namespace {
std::string hex16(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}
}  // namespace

std::string PolicySnapshot::derive_id(const std::string& parent, const ArchConfig& arch,
                                      std::uint64_t vocab_hash, std::span<const double> params) {
    std::uint64_t h = fnv1a64(parent);
    h = fnv1a64("\x1f", 1, h);
    const std::string arch_json = arch.to_json();
    h = fnv1a64(arch_json.data(), arch_json.size(), h);
    h = fnv1a64(&vocab_hash, sizeof vocab_hash, h);
    h = fnv1a64(params.data(), params.size() * sizeof(double), h);
    return hex16(h);
}

PolicySnapshot PolicySnapshot::random_init(const ArchConfig& arch, const Vocab& vocab,
                                           std::uint64_t seed, double scale) {
    arch.validate();
    if (arch.vocab_size != vocab.size())
        throw ContractViolation("arch vocab_size does not match the vocabulary");
    auto rng = stream_rng(seed, {"init"});
    std::vector<double> params(arch.param_count());
    for (double& p : params) p = scale * rng.next_normal();
    return from_params(arch, vocab.hash(), std::move(params));
}

PolicySnapshot PolicySnapshot::from_params(const ArchConfig& arch, std::uint64_t vocab_hash,
                                           std::vector<double> params, std::string parent_id) {
    arch.validate();
    if (params.size() != arch.param_count())
        throw ContractViolation("parameter count does not match arch config");
    PolicySnapshot snap;
    snap.arch_ = arch;
    snap.vocab_hash_ = vocab_hash;
    snap.params_ = std::move(params);
    snap.parent_id_ = std::move(parent_id);
    snap.id_ = derive_id(snap.parent_id_, snap.arch_, snap.vocab_hash_, snap.params_);
    return snap;
}

PolicySnapshot PolicySnapshot::child(std::vector<double> params) const {
    if (params.size() != params_.size())
        throw ContractViolation("child parameter vector has wrong length");
    return from_params(arch_, vocab_hash_, std::move(params), id_);
}

void PolicySnapshot::require_vocab(const Vocab& vocab) const {
    if (vocab.hash() != vocab_hash_)
        throw IncompatibleSnapshotError("snapshot was built against a different vocabulary");
}

}  // namespace weakforge
