#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace weakforge {

// Reserved marker tokens. They occupy ids 0..4, ahead of all content symbols.
enum class Special : int {
    Boq = 0,  // begin question
    Bor = 1,  // begin rationale
    Boa = 2,  // begin answer
    Eos = 3,
    Pad = 4,
};

inline constexpr int kNumSpecials = 5;

// Character-level vocabulary: five specials followed by a fixed content
// alphabet. Token ids are dense 0..size()-1.
class Vocab {
public:
    // Specials plus printable ASCII 0x20..0x7e (95 symbols, 100 tokens total).
    static Vocab printable_ascii();

    int size() const { return kNumSpecials + static_cast<int>(symbols_.size()); }

    static constexpr int id(Special s) { return static_cast<int>(s); }
    static bool is_special(int token_id) { return token_id >= 0 && token_id < kNumSpecials; }

    // Id of a content character; throws ContractViolation for characters
    // outside the alphabet.
    int encode_char(char c) const;
    bool contains_char(char c) const;
    std::vector<int> encode(std::string_view text) const;

    char symbol(int token_id) const;  // content tokens only

    // Text rendering. Content tokens print verbatim; specials print as the
    // markers <q> <r> <a> <eos> <pad>.
    std::string decode(std::span<const int> ids) const;

    // Rendering with specials dropped instead of printed.
    std::string decode_content(std::span<const int> ids) const;

    static std::string_view marker(Special s);

    // Stable 64-bit digest of the full symbol table; stored in checkpoints to
    // reject snapshots built against a different alphabet.
    std::uint64_t hash() const;

private:
    Vocab() = default;
    std::vector<char> symbols_;        // content symbols in id order
    std::vector<int> char_to_id_;      // 256-entry lookup, -1 when absent
};

}  // namespace weakforge
