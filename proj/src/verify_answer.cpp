#include <algorithm>
#include <cctype>
#include <optional>

#include "weakforge/corpus.hpp"
#include "weakforge/errors.hpp"

namespace weakforge {

namespace {

bool trimmable(char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isspace(u) || std::ispunct(u);
}

std::string trim_ws_punct(std::string s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && trimmable(s[b])) ++b;
    while (e > b && trimmable(s[e - 1])) --e;
    return s.substr(b, e - b);
}

std::string trim_ws(std::string s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lowered(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::optional<long long> parse_int_strict(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t i = 0;
    bool negative = false;
    if (s[0] == '+' || s[0] == '-') {
        negative = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) return std::nullopt;
    long long v = 0;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
        v = v * 10 + (s[i] - '0');
        if (v > 1'000'000'000'000ll) return std::nullopt;
    }
    return negative ? -v : v;
}

// Candidate answer text per the extraction rule documented in corpus.hpp.
std::string extract_candidate(const std::string& text) {
    std::string cand;
    const std::size_t marker = text.rfind("<a>");
    if (marker != std::string::npos) {
        cand = text.substr(marker + 3);
    } else {
        const std::string low = lowered(text);
        const std::size_t ans = low.rfind("answer:");
        cand = ans != std::string::npos ? text.substr(ans + 7) : text;
    }
    for (const char* stop : {"<eos>", "<pad>", "<q>", "<r>"}) {
        const std::size_t cut = cand.find(stop);
        if (cut != std::string::npos) cand.resize(cut);
    }
    return trim_ws_punct(cand);
}

}  // namespace

bool verify_answer(const Example& ex, const std::string& predicted) {
    if (ex.answer.empty())
        throw ContractViolation("verify_answer needs a gold answer for " + ex.id);
    const std::string gold = trim_ws(ex.answer);
    const std::string cand = extract_candidate(predicted);
    if (cand.empty()) return false;

    if (!ex.options.empty()) {
        // Leading option letter, case-insensitive; a second alphanumeric
        // character means the prediction is not a bare letter.
        if (cand.size() > 1 && std::isalnum(static_cast<unsigned char>(cand[1]))) return false;
        if (gold.size() != 1) return false;
        return std::tolower(static_cast<unsigned char>(cand[0])) ==
               std::tolower(static_cast<unsigned char>(gold[0]));
    }

    if (const auto gold_int = parse_int_strict(gold)) {
        const auto cand_int = parse_int_strict(cand);
        return cand_int && *cand_int == *gold_int;
    }

    return cand == gold;
}

}  // namespace weakforge
