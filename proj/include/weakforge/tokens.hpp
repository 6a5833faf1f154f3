#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weakforge/vocab.hpp"

namespace weakforge {

// Half-open index range into a token id vector.
struct TokenRange {
    int begin = 0;
    int end = 0;
    int length() const { return end - begin; }
    bool empty() const { return begin >= end; }
};

// Segment annotations for a serialized example. Ordered question < rationale
// < answer, pairwise disjoint, covering exactly the non-special content.
struct RoleSpans {
    TokenRange question;
    TokenRange rationale;
    TokenRange answer;
};

// A token id sequence. Spans are present on serialized examples and absent on
// raw sampled continuations.
struct TokenSequence {
    std::vector<int> ids;
    std::optional<RoleSpans> spans;

    int length() const { return static_cast<int>(ids.size()); }
    bool empty() const { return ids.empty(); }
    std::span<const int> view() const { return ids; }
};

// Validates the span invariants against the sequence; throws ContractViolation.
void check_spans(const TokenSequence& seq, const Vocab& vocab);

// Prompt layout used everywhere a model is asked to continue a question:
// BOQ question-chars BOR.
TokenSequence make_question_prompt(const Vocab& vocab, std::string_view question);

// Canonical continuation layout for a (rationale, answer) response:
// rationale-chars BOA answer-chars EOS. Sampled responses are re-serialized
// through this before scoring so strong and weak responses are measured on
// identical footing.
TokenSequence make_response_continuation(const Vocab& vocab, std::string_view rationale,
                                         std::string_view answer);

// Concatenation (spans dropped).
TokenSequence concat(const TokenSequence& a, const TokenSequence& b);

}  // namespace weakforge
