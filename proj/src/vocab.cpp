#include "weakforge/vocab.hpp"

#include <array>

#include "weakforge/errors.hpp"
#include "weakforge/rng.hpp"

namespace weakforge {

namespace {
constexpr std::array<std::string_view, kNumSpecials> kMarkers = {"<q>", "<r>", "<a>", "<eos>", "<pad>"};
}

Vocab Vocab::printable_ascii() {
    Vocab v;
    v.char_to_id_.assign(256, -1);
    for (int c = 0x20; c <= 0x7e; ++c) {
        v.char_to_id_[static_cast<std::size_t>(c)] = kNumSpecials + static_cast<int>(v.symbols_.size());
        v.symbols_.push_back(static_cast<char>(c));
    }
    return v;
}

bool Vocab::contains_char(char c) const {
    return char_to_id_[static_cast<unsigned char>(c)] >= 0;
}

int Vocab::encode_char(char c) const {
    const int id = char_to_id_[static_cast<unsigned char>(c)];
    if (id < 0)
        throw ContractViolation("character outside the vocabulary alphabet: code " +
                                std::to_string(static_cast<int>(static_cast<unsigned char>(c))));
    return id;
}

std::vector<int> Vocab::encode(std::string_view text) const {
    std::vector<int> ids;
    ids.reserve(text.size());
    for (char c : text) ids.push_back(encode_char(c));
    return ids;
}

char Vocab::symbol(int token_id) const {
    if (token_id < kNumSpecials || token_id >= size())
        throw ContractViolation("symbol: id " + std::to_string(token_id) + " is not a content token");
    return symbols_[static_cast<std::size_t>(token_id - kNumSpecials)];
}

std::string_view Vocab::marker(Special s) {
    return kMarkers[static_cast<std::size_t>(s)];
}

std::string Vocab::decode(std::span<const int> ids) const {
    std::string out;
    for (int id : ids) {
        if (is_special(id))
            out += kMarkers[static_cast<std::size_t>(id)];
        else
            out += symbol(id);
    }
    return out;
}

std::string Vocab::decode_content(std::span<const int> ids) const {
    std::string out;
    for (int id : ids)
        if (!is_special(id)) out += symbol(id);
    return out;
}

std::uint64_t Vocab::hash() const {
    std::string blob;
    for (auto m : kMarkers) {
        blob += m;
        blob += '\x1f';
    }
    blob.append(symbols_.begin(), symbols_.end());
    return fnv1a64(blob);
}

}  // namespace weakforge
