#include "weakforge/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "weakforge/errors.hpp"
#include "weakforge/rng.hpp"

namespace weakforge {

namespace {

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

struct Reader {
    const unsigned char* p;
    std::size_t left;

    void take(void* dst, std::size_t n) {
        if (left < n) throw CorruptCheckpointError("checkpoint truncated");
        std::memcpy(dst, p, n);
        p += n;
        left -= n;
    }
    std::uint16_t u16() {
        unsigned char b[2];
        take(b, 2);
        return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
    }
    std::uint32_t u32() {
        unsigned char b[4];
        take(b, 4);
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
        return v;
    }
    std::uint64_t u64() {
        unsigned char b[8];
        take(b, 8);
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
        return v;
    }
};

}  // namespace

void save_snapshot(const PolicySnapshot& snapshot, const std::filesystem::path& path) {
    std::string body;
    body.append(kCheckpointMagic, sizeof kCheckpointMagic);
    put_u16(body, kCheckpointVersion);
    put_u64(body, snapshot.vocab_hash());
    const std::string arch = snapshot.arch().to_json();
    put_u32(body, static_cast<std::uint32_t>(arch.size()));
    body += arch;
    put_u64(body, static_cast<std::uint64_t>(snapshot.params().size()));
    for (double d : snapshot.params()) put_u64(body, std::bit_cast<std::uint64_t>(d));
    put_u64(body, fnv1a64(body));

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open checkpoint for writing: " + path.string());
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out) throw std::runtime_error("checkpoint write failed: " + path.string());
}

PolicySnapshot load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CorruptCheckpointError("cannot open checkpoint: " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    Reader r{reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size()};
    char magic[4];
    r.take(magic, 4);
    if (std::memcmp(magic, kCheckpointMagic, 4) != 0)
        throw CorruptCheckpointError("bad checkpoint magic");
    const std::uint16_t version = r.u16();
    if (version != kCheckpointVersion)
        throw CorruptCheckpointError("unsupported checkpoint version " + std::to_string(version));
    const std::uint64_t vocab_hash = r.u64();
    const std::uint32_t arch_len = r.u32();
    std::string arch_json(arch_len, '\0');
    r.take(arch_json.data(), arch_len);
    ArchConfig arch;
    try {
        arch = ArchConfig::from_json(arch_json);
    } catch (const std::exception& e) {
        throw CorruptCheckpointError(std::string("bad arch header: ") + e.what());
    }
    const std::uint64_t count = r.u64();
    if (count != arch.param_count())
        throw CorruptCheckpointError("parameter count does not match arch header");
    std::vector<double> params(count);
    for (std::uint64_t i = 0; i < count; ++i) params[i] = std::bit_cast<double>(r.u64());

    const std::size_t body_len = bytes.size() - r.left;
    const std::uint64_t want = fnv1a64(bytes.data(), body_len);
    const std::uint64_t got = r.u64();
    if (want != got) throw CorruptCheckpointError("checksum mismatch");
    if (r.left != 0) throw CorruptCheckpointError("trailing bytes after checksum");

    return PolicySnapshot::from_params(arch, vocab_hash, std::move(params));
}

}  // namespace weakforge
