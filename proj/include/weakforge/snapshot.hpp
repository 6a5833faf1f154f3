#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "weakforge/arch.hpp"
#include "weakforge/vocab.hpp"

namespace weakforge {

// An immutable versioned parameter set. Snapshots never change after
// construction; training produces children whose parent id records lineage,
// with the untrained base at the root.
class PolicySnapshot {
public:
    // Fresh base: every parameter is scale * standard normal, drawn from the
    // "init" stream of the given seed.
    static PolicySnapshot random_init(const ArchConfig& arch, const Vocab& vocab, std::uint64_t seed,
                                      double scale = 0.02);

    // Exact parameter vector; parent left empty. Used for fixtures and IO.
    static PolicySnapshot from_params(const ArchConfig& arch, std::uint64_t vocab_hash,
                                      std::vector<double> params, std::string parent_id = {});

    // Child with the given parameters and this snapshot as parent.
    PolicySnapshot child(std::vector<double> params) const;

    const ArchConfig& arch() const { return arch_; }
    std::span<const double> params() const { return params_; }
    std::uint64_t vocab_hash() const { return vocab_hash_; }
    const std::string& id() const { return id_; }
    const std::string& parent_id() const { return parent_id_; }

    void require_vocab(const Vocab& vocab) const;  // IncompatibleSnapshotError on mismatch

private:
    PolicySnapshot() = default;
    static std::string derive_id(const std::string& parent, const ArchConfig& arch,
                                 std::uint64_t vocab_hash, std::span<const double> params);

    ArchConfig arch_;
    std::vector<double> params_;
    std::uint64_t vocab_hash_ = 0;
    std::string id_;
    std::string parent_id_;
};

}  // namespace weakforge
