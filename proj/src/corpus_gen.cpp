#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

#include "weakforge/corpus.hpp"
#include "weakforge/errors.hpp"
#include "weakforge/rng.hpp"

namespace weakforge {

namespace {

constexpr std::array<const char*, 8> kNames = {"al", "bo", "cy", "di", "ed", "fo", "gi", "hu"};
constexpr std::array<const char*, 8> kAttrs = {"cat", "dog", "fox", "owl", "bee", "ant", "elk", "hen"};

std::string short_tag(Category c) {
    switch (c) {
        case Category::Brainteaser: return "bt";
        case Category::Riddle: return "rid";
        case Category::Puzzle: return "puz";
        case Category::Parajumble: return "pj";
        case Category::CriticalReasoning: return "cr";
    }
    throw ContractViolation("unknown category");
}

int apply_op(char op, int lhs, int rhs) {
    switch (op) {
        case '+': return lhs + rhs;
        case '-': return lhs - rhs;
        case '*': return lhs * rhs;
        default: throw ContractViolation("unsupported operator");
    }
}

}  // namespace

std::string to_string(Category c) {
    switch (c) {
        case Category::Brainteaser: return "brainteaser";
        case Category::Riddle: return "riddle";
        case Category::Puzzle: return "puzzle";
        case Category::Parajumble: return "parajumble";
        case Category::CriticalReasoning: return "critical-reasoning";
    }
    throw ContractViolation("unknown category");
}

Category category_from_string(const std::string& s) {
    for (Category c : kAllCategories)
        if (to_string(c) == s) return c;
    throw ValidationError("unknown category: " + s);
}

std::string to_string(Split s) {
    switch (s) {
        case Split::Seed: return "seed";
        case Split::Unlabeled: return "unlabeled";
        case Split::Test: return "test";
    }
    throw ContractViolation("unknown split");
}

Split split_from_string(const std::string& s) {
    if (s == "seed") return Split::Seed;
    if (s == "unlabeled") return Split::Unlabeled;
    if (s == "test") return Split::Test;
    throw ValidationError("unknown split: " + s);
}

SizeBounds size_bounds(Category c) {
    switch (c) {
        case Category::Brainteaser: return {3, 6};        // digit count
        case Category::Riddle: return {3, 8};             // name/attribute pool
        case Category::Puzzle: return {2, 9};             // operand magnitude
        case Category::Parajumble: return {2, 4};         // fragments to order
        case Category::CriticalReasoning: return {4, 12};  // rule interval width
    }
    throw ContractViolation("unknown category");
}

double difficulty_for_size(Category c, int size) {
    const SizeBounds b = size_bounds(c);
    if (size < b.lo || size > b.hi)
        throw ContractViolation("size parameter out of bounds for " + to_string(c));
    if (b.hi == b.lo) return 1.0;
    return 1.0 + 3.0 * static_cast<double>(size - b.lo) / static_cast<double>(b.hi - b.lo);
}

namespace synth {

Example make_puzzle(int a, char op1, int b, char op2, int c) {
    const int step = apply_op(op1, a, b);
    const int result = apply_op(op2, step, c);
    if (step < 0 || result < 0)
        throw ContractViolation("puzzle instance has a negative intermediate or result");
    Example ex;
    ex.category = Category::Puzzle;
    ex.question = "(" + std::to_string(a) + op1 + std::to_string(b) + ")" + op2 + std::to_string(c);
    ex.rationale = std::to_string(a) + op1 + std::to_string(b) + "=" + std::to_string(step) + ". " +
                   std::to_string(step) + op2 + std::to_string(c) + "=" + std::to_string(result) + ".";
    ex.answer = std::to_string(result);
    return ex;
}

Example make_parajumble(const std::vector<std::string>& fragments_in_order,
                        const std::vector<int>& label_of_logical) {
    const std::size_t k = fragments_in_order.size();
    if (k < 2 || label_of_logical.size() != k)
        throw ContractViolation("parajumble needs >= 2 fragments and a full label permutation");
    // label_of_logical[i] is the label index under which logical fragment i
    // is displayed; the answer lists those labels in logical order.
    std::vector<std::string> shown(k);
    for (std::size_t i = 0; i < k; ++i) {
        const int lab = label_of_logical[i];
        if (lab < 0 || static_cast<std::size_t>(lab) >= k || !shown[static_cast<std::size_t>(lab)].empty())
            throw ContractViolation("label assignment is not a permutation");
        shown[static_cast<std::size_t>(lab)] = fragments_in_order[i];
    }
    Example ex;
    ex.category = Category::Parajumble;
    for (std::size_t j = 0; j < k; ++j) {
        if (j) ex.question += ' ';
        ex.question += static_cast<char>('A' + j);
        ex.question += ':';
        ex.question += shown[j];
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (i) ex.rationale += '>';
        ex.rationale += fragments_in_order[i];
    }
    for (std::size_t i = 0; i < k; ++i)
        ex.answer += static_cast<char>('A' + label_of_logical[i]);
    return ex;
}

Example make_riddle(const std::string& n1, const std::string& a1, const std::string& n2,
                    const std::string& a2, const std::string& n3, const std::string& a3) {
    Example ex;
    ex.category = Category::Riddle;
    ex.question = n1 + ":" + a1 + " " + n2 + ":" + a2 + " " + a3 + "?";
    ex.rationale = "not " + n1 + ",not " + n2 + ",so " + n3;
    ex.answer = n3;
    return ex;
}

Example make_critical(int lower, int upper, int fit, int misfit, bool fit_is_a) {
    if (!(fit > lower && fit < upper) || (misfit > lower && misfit < upper))
        throw ContractViolation("critical-reasoning values must have exactly one fit");
    const int va = fit_is_a ? fit : misfit;
    const int vb = fit_is_a ? misfit : fit;
    Example ex;
    ex.category = Category::CriticalReasoning;
    ex.question = "x>" + std::to_string(lower) + ". x<" + std::to_string(upper) + ". A:x=" +
                  std::to_string(va) + " B:x=" + std::to_string(vb);
    const char letter = fit_is_a ? 'A' : 'B';
    ex.rationale = std::to_string(fit) + ">" + std::to_string(lower) + "," + std::to_string(fit) +
                   "<" + std::to_string(upper) + " so " + letter;
    ex.answer = std::string(1, letter);
    ex.options = {{"A", "x=" + std::to_string(va)}, {"B", "x=" + std::to_string(vb)}};
    return ex;
}

Example make_brainteaser(const std::string& digits, int variant) {
    if (digits.empty()) throw ContractViolation("brainteaser needs digits");
    for (char c : digits)
        if (c < '0' || c > '9') throw ContractViolation("brainteaser digits must be 0-9");
    Example ex;
    ex.category = Category::Brainteaser;
    std::string listed;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i) listed += variant == 2 ? '+' : ',';
        listed += digits[i];
    }
    if (variant == 0) {
        const char m = *std::max_element(digits.begin(), digits.end());
        ex.question = "max digit of " + digits + "?";
        ex.rationale = listed + ";max " + m;
        ex.answer = std::string(1, m);
    } else if (variant == 1) {
        const char m = *std::min_element(digits.begin(), digits.end());
        ex.question = "min digit of " + digits + "?";
        ex.rationale = listed + ";min " + m;
        ex.answer = std::string(1, m);
    } else if (variant == 2) {
        int total = 0;
        for (char c : digits) total += c - '0';
        ex.question = "digit sum of " + digits + "?";
        ex.rationale = listed + "=" + std::to_string(total);
        ex.answer = std::to_string(total);
    } else {
        throw ContractViolation("unknown brainteaser variant");
    }
    return ex;
}

}  // namespace synth

namespace {

Example gen_one(Category cat, int size, Xoshiro256ss& rng) {
    switch (cat) {
        case Category::Puzzle: {
            static constexpr std::array<std::pair<char, char>, 4> kForms = {
                {{'+', '*'}, {'-', '*'}, {'+', '-'}, {'*', '+'}}};
            const auto [op1, op2] = kForms[rng.next_below(kForms.size())];
            int a = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(size)));
            int b = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(size)));
            if (op1 == '-' && b > a) std::swap(a, b);
            const int step = apply_op(op1, a, b);
            int c;
            if (op2 == '*')
                c = 2 + static_cast<int>(rng.next_below(4));  // 2..5, keeps results below 100
            else if (op2 == '-')
                c = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(std::min(9, std::max(1, step)))));
            else
                c = 1 + static_cast<int>(rng.next_below(9));
            return synth::make_puzzle(a, op1, b, op2, c);
        }
        case Category::Parajumble: {
            const int k = size;
            // k+1 distinct letters make an overlap chain with a unique order.
            std::vector<char> alphabet(26);
            for (int i = 0; i < 26; ++i) alphabet[static_cast<std::size_t>(i)] = static_cast<char>('a' + i);
            rng.shuffle(alphabet);
            std::vector<std::string> frags;
            for (int i = 0; i < k; ++i)
                frags.push_back({alphabet[static_cast<std::size_t>(i)], alphabet[static_cast<std::size_t>(i + 1)]});
            std::vector<int> label_of(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i) label_of[static_cast<std::size_t>(i)] = i;
            rng.shuffle(label_of);
            return synth::make_parajumble(frags, label_of);
        }
        case Category::Riddle: {
            std::vector<int> names(static_cast<std::size_t>(size));
            std::vector<int> attrs(static_cast<std::size_t>(size));
            for (int i = 0; i < size; ++i) {
                names[static_cast<std::size_t>(i)] = i;
                attrs[static_cast<std::size_t>(i)] = i;
            }
            rng.shuffle(names);
            rng.shuffle(attrs);
            return synth::make_riddle(kNames[static_cast<std::size_t>(names[0])],
                                      kAttrs[static_cast<std::size_t>(attrs[0])],
                                      kNames[static_cast<std::size_t>(names[1])],
                                      kAttrs[static_cast<std::size_t>(attrs[1])],
                                      kNames[static_cast<std::size_t>(names[2])],
                                      kAttrs[static_cast<std::size_t>(attrs[2])]);
        }
        case Category::CriticalReasoning: {
            const int width = size;
            const int lower = 1 + static_cast<int>(rng.next_below(9));
            const int upper = lower + width;
            const int fit = lower + 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(width - 1)));
            const bool low_side = rng.next_below(2) == 0;
            const int misfit = low_side ? static_cast<int>(rng.next_below(static_cast<std::uint64_t>(lower + 1)))
                                        : upper + static_cast<int>(rng.next_below(6));
            const bool fit_is_a = rng.next_below(2) == 0;
            return synth::make_critical(lower, upper, fit, misfit, fit_is_a);
        }
        case Category::Brainteaser: {
            std::string digits(1, static_cast<char>('1' + rng.next_below(9)));
            for (int i = 1; i < size; ++i) digits += static_cast<char>('0' + rng.next_below(10));
            const int variant = static_cast<int>(rng.next_below(3));
            return synth::make_brainteaser(digits, variant);
        }
    }
    throw ContractViolation("unsupported category");
}

}  // namespace

Dataset gen_synthetic(const TaskSpec& spec, int n) {
    if (n < 1) throw ContractViolation("gen_synthetic requires n >= 1");
    const double difficulty = difficulty_for_size(spec.category, spec.size);
    const std::string cat = to_string(spec.category);
    const std::string size_label = "s" + std::to_string(spec.size);

    Dataset ds;
    for (int i = 0; i < n; ++i) {
        auto rng = stream_rng(spec.rng_seed, {"gen", cat, size_label, std::to_string(i)});
        Example ex = gen_one(spec.category, spec.size, rng);
        char idx[16];
        std::snprintf(idx, sizeof idx, "%04d", i);
        ex.id = short_tag(spec.category) + "-" + size_label + "-" + idx;
        ex.difficulty = difficulty;
        if (spec.category == Category::Brainteaser)
            ex.fun = 1.0 + static_cast<double>(rng.next_below(301)) / 100.0;
        ex.split = Split::Seed;
        if (!verify_answer(ex, ex.answer))
            throw std::logic_error("generator self-check failed for " + ex.id);
        ds.examples.push_back(std::move(ex));
    }

    const std::string tag = "gen|" + cat + "|" + size_label + "|" + std::to_string(spec.rng_seed) +
                            "|" + std::to_string(n);
    char prov[24];
    std::snprintf(prov, sizeof prov, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(tag)));
    ds.provenance = prov;
    ds.validate();
    return ds;
}

Dataset build_synthetic_corpus(std::uint64_t seed, int n_total) {
    if (n_total < 1) throw ContractViolation("corpus size must be >= 1");
    constexpr int n_cats = static_cast<int>(std::size(kAllCategories));
    Dataset out;
    for (int ci = 0; ci < n_cats; ++ci) {
        const Category cat = kAllCategories[static_cast<std::size_t>(ci)];
        int cat_count = n_total / n_cats + (ci < n_total % n_cats ? 1 : 0);
        if (cat_count == 0) continue;
        const SizeBounds b = size_bounds(cat);
        const int n_sizes = b.hi - b.lo + 1;
        for (int si = 0; si < n_sizes; ++si) {
            const int size = b.lo + si;
            const int count = cat_count / n_sizes + (si < cat_count % n_sizes ? 1 : 0);
            if (count == 0) continue;
            TaskSpec spec;
            spec.category = cat;
            spec.size = size;
            spec.rng_seed = derive_seed(seed, {"corpus", to_string(cat), std::to_string(size)});
            Dataset part = gen_synthetic(spec, count);
            for (auto& ex : part.examples) out.examples.push_back(std::move(ex));
        }
    }
    char prov[24];
    std::snprintf(prov, sizeof prov, "%016llx",
                  static_cast<unsigned long long>(
                      fnv1a64("corpus|" + std::to_string(seed) + "|" + std::to_string(n_total))));
    out.provenance = prov;
    out.validate();
    return out;
}

}  // namespace weakforge
