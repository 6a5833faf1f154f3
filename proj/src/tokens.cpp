#include "weakforge/tokens.hpp"

#include "weakforge/errors.hpp"

namespace weakforge {

void check_spans(const TokenSequence& seq, const Vocab& vocab) {
    if (!seq.spans) return;
    const auto& s = *seq.spans;
    const int n = seq.length();
    auto check_range = [&](const TokenRange& r, const char* name) {
        if (r.begin < 0 || r.end < r.begin || r.end > n)
            throw ContractViolation(std::string("span out of bounds: ") + name);
        for (int i = r.begin; i < r.end; ++i)
            if (Vocab::is_special(seq.ids[i]))
                throw ContractViolation(std::string("special token inside span: ") + name);
    };
    check_range(s.question, "question");
    check_range(s.rationale, "rationale");
    check_range(s.answer, "answer");
    if (s.question.end > s.rationale.begin || s.rationale.end > s.answer.begin)
        throw ContractViolation("spans must be ordered question < rationale < answer");
    // Spans must cover every content token.
    for (int i = 0; i < n; ++i) {
        if (Vocab::is_special(seq.ids[i])) continue;
        const bool covered = (i >= s.question.begin && i < s.question.end) ||
                             (i >= s.rationale.begin && i < s.rationale.end) ||
                             (i >= s.answer.begin && i < s.answer.end);
        if (!covered) throw ContractViolation("content token not covered by any role span");
    }
    for (int i = 0; i < n; ++i) {
        if (!Vocab::is_special(seq.ids[i])) continue;
        if (seq.ids[i] >= vocab.size()) throw ContractViolation("token id out of vocabulary");
    }
}

TokenSequence make_question_prompt(const Vocab& vocab, std::string_view question) {
    TokenSequence seq;
    seq.ids.push_back(Vocab::id(Special::Boq));
    for (char c : question) seq.ids.push_back(vocab.encode_char(c));
    seq.ids.push_back(Vocab::id(Special::Bor));
    RoleSpans spans;
    spans.question = {1, 1 + static_cast<int>(question.size())};
    spans.rationale = {seq.length(), seq.length()};
    spans.answer = {seq.length(), seq.length()};
    seq.spans = spans;
    return seq;
}

TokenSequence make_response_continuation(const Vocab& vocab, std::string_view rationale,
                                         std::string_view answer) {
    TokenSequence seq;
    for (char c : rationale) seq.ids.push_back(vocab.encode_char(c));
    seq.ids.push_back(Vocab::id(Special::Boa));
    for (char c : answer) seq.ids.push_back(vocab.encode_char(c));
    seq.ids.push_back(Vocab::id(Special::Eos));
    return seq;
}

TokenSequence concat(const TokenSequence& a, const TokenSequence& b) {
    TokenSequence out;
    out.ids = a.ids;
    out.ids.insert(out.ids.end(), b.ids.begin(), b.ids.end());
    return out;
}

}  // namespace weakforge
