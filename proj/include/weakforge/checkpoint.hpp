#pragma once

#include <filesystem>

#include "weakforge/snapshot.hpp"

namespace weakforge {

// Checkpoint layout, all integers little-endian:
//   magic "WKFG" | format version u16 | vocab hash u64 | arch JSON (u32
//   length prefix + UTF-8 bytes) | parameter count u64 | parameters as
//   IEEE-754 binary64 | FNV-1a 64 checksum of everything prior.
inline constexpr char kCheckpointMagic[4] = {'W', 'K', 'F', 'G'};
inline constexpr std::uint16_t kCheckpointVersion = 1;

void save_snapshot(const PolicySnapshot& snapshot, const std::filesystem::path& path);

// Loaded snapshots are lineage roots: the file format carries parameters and
// shape only, not ids. Throws CorruptCheckpointError on any mismatch.
PolicySnapshot load_snapshot(const std::filesystem::path& path);

}  // namespace weakforge
