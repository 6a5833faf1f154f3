#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace weakforge {

enum class Category { Brainteaser, Riddle, Puzzle, Parajumble, CriticalReasoning };
enum class Split { Seed, Unlabeled, Test };

std::string to_string(Category c);
std::string to_string(Split s);
Category category_from_string(const std::string& s);
Split split_from_string(const std::string& s);

inline constexpr Category kAllCategories[] = {Category::Brainteaser, Category::Riddle,
                                              Category::Puzzle, Category::Parajumble,
                                              Category::CriticalReasoning};

// One reasoning item. For synthetic unlabeled examples the answer field keeps
// the generator's gold answer for offline grading; the training and
// pair-generation paths only ever read the question text.
struct Example {
    std::string id;
    Category category = Category::Puzzle;
    std::string question;
    std::vector<std::pair<std::string, std::string>> options;  // (letter, text)
    std::string rationale;
    std::string answer;
    std::optional<double> difficulty;
    std::optional<double> fun;
    Split split = Split::Seed;
};

struct Dataset {
    std::vector<Example> examples;
    std::string provenance;

    std::size_t size() const { return examples.size(); }
    void validate() const;  // ids unique, per-split invariants; throws ValidationError
};

// Per-category size parameter bounds. The size parameter maps linearly onto
// the [1,4] difficulty scale.
struct SizeBounds {
    int lo;
    int hi;
};
SizeBounds size_bounds(Category c);
double difficulty_for_size(Category c, int size);

struct TaskSpec {
    Category category = Category::Puzzle;
    int size = 0;  // within size_bounds(category)
    std::uint64_t rng_seed = 0;
};

// n examples of one category at one size, each with a programmatically
// checkable gold answer and a templated rationale. Example i is generated
// from its own derived stream, so generation order never matters.
Dataset gen_synthetic(const TaskSpec& spec, int n);

// Balanced corpus: categories get near-equal counts (earlier categories take
// the remainder) and sizes cycle across each category's full range.
Dataset build_synthetic_corpus(std::uint64_t seed, int n_total);

// Deterministic instance builders behind gen_synthetic; exposed so tests can
// pin down exact instances.
namespace synth {
Example make_puzzle(int a, char op1, int b, char op2, int c);
Example make_parajumble(const std::vector<std::string>& fragments_in_order,
                        const std::vector<int>& shuffled_position_of);
Example make_riddle(const std::string& n1, const std::string& a1, const std::string& n2,
                    const std::string& a2, const std::string& n3, const std::string& a3);
Example make_critical(int lower, int upper, int fit, int misfit, bool fit_is_a);
Example make_brainteaser(const std::string& digits, int variant);  // 0 max, 1 min, 2 sum
}  // namespace synth

// JSONL ingestion/emission. One object per line, UTF-8, LF endings.
Dataset ingest_jsonl(const std::filesystem::path& path);
void emit_jsonl(const Dataset& ds, const std::filesystem::path& path);

// Deterministic three-way partition: a Fisher-Yates shuffle of the index
// space drawn from the "split" stream of the seed, then the first n_seed
// indices become the seed set, the next n_unlabeled the unlabeled pool, and
// the rest the test set. Original dataset order is preserved inside each
// part. Unlabeled rationales are blanked; their answers remain as privately
// retained gold.
struct SplitResult {
    Dataset seed;
    Dataset unlabeled;
    Dataset test;
};
SplitResult split_seed_unlabeled(const Dataset& ds, int n_seed, int n_unlabeled, std::uint64_t seed);

// Grades a raw prediction against the example's gold answer. Extraction: the
// text after the last <a> marker (cut at the next <eos>/<pad> marker), else
// after the last "answer:", else the whole text; trimmed of surrounding
// whitespace and punctuation. Multiple choice compares the leading option
// letter case-insensitively, numeric golds compare as integers, anything
// else must match the canonical answer exactly. Unparseable predictions
// grade false.
bool verify_answer(const Example& ex, const std::string& predicted);

}  // namespace weakforge
