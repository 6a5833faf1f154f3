#include <fstream>
#include <map>
#include <nlohmann/json.hpp>

#include "weakforge/corpus.hpp"
#include "weakforge/errors.hpp"
#include "weakforge/rng.hpp"

namespace weakforge {

using nlohmann::json;

namespace {

void check_example(const Example& ex, const std::string& where) {
    if (ex.id.empty()) throw ValidationError(where + ": missing field id");
    switch (ex.split) {
        case Split::Seed:
            if (ex.answer.empty()) throw ValidationError(where + ": seed example has empty answer");
            if (ex.rationale.empty())
                throw ValidationError(where + ": seed example has empty rationale");
            break;
        case Split::Test:
            if (ex.answer.empty()) throw ValidationError(where + ": test example has empty answer");
            break;
        case Split::Unlabeled:
            if (!ex.rationale.empty())
                throw ValidationError(where + ": unlabeled example has nonempty rationale");
            break;
    }
    if (ex.difficulty && (*ex.difficulty < 1.0 || *ex.difficulty > 4.0))
        throw ValidationError(where + ": difficulty outside [1,4]");
    if (!ex.options.empty() && !ex.answer.empty()) {
        bool found = false;
        for (const auto& [letter, text] : ex.options) {
            if (letter.size() == 1 && ex.answer.size() == 1 &&
                std::tolower(static_cast<unsigned char>(letter[0])) ==
                    std::tolower(static_cast<unsigned char>(ex.answer[0])))
                found = true;
        }
        if (!found) throw ValidationError(where + ": answer is not one of the option letters");
    }
}

}  // namespace

void Dataset::validate() const {
    std::map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < examples.size(); ++i) {
        const Example& ex = examples[i];
        const std::string where = "example " + std::to_string(i) + " (" + ex.id + ")";
        check_example(ex, where);
        auto [it, inserted] = seen.emplace(ex.id, i);
        if (!inserted)
            throw ValidationError("duplicate id " + ex.id + " at examples " +
                                  std::to_string(it->second) + " and " + std::to_string(i));
    }
}

Dataset ingest_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset: " + path.string());
    std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    Dataset ds;
    std::map<std::string, std::size_t> id_lines;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < contents.size()) {
        std::size_t end = contents.find('\n', start);
        if (end == std::string::npos) end = contents.size();
        const std::string line = contents.substr(start, end - start);
        start = end + 1;
        ++line_no;

        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError(line_no, std::string("malformed JSON: ") + e.what());
        }
        if (!j.is_object()) throw ParseError(line_no, "expected a JSON object");

        static const std::set<std::string> kKeys = {"id",        "category", "question",
                                                    "options",   "rationale", "answer",
                                                    "difficulty", "fun",      "split"};
        for (const auto& [key, _] : j.items())
            if (!kKeys.count(key)) throw ParseError(line_no, "unexpected field " + key);

        auto need_string = [&](const char* key) {
            if (!j.contains(key) || !j[key].is_string())
                throw ParseError(line_no, std::string("missing or non-string field ") + key);
            return j[key].get<std::string>();
        };
        auto opt_string = [&](const char* key) -> std::string {
            if (!j.contains(key) || j[key].is_null()) return {};
            if (!j[key].is_string()) throw ParseError(line_no, std::string("non-string field ") + key);
            return j[key].get<std::string>();
        };
        auto opt_number = [&](const char* key) -> std::optional<double> {
            if (!j.contains(key) || j[key].is_null()) return std::nullopt;
            if (!j[key].is_number()) throw ParseError(line_no, std::string("non-numeric field ") + key);
            return j[key].get<double>();
        };

        Example ex;
        ex.id = need_string("id");
        try {
            ex.category = category_from_string(need_string("category"));
            ex.split = split_from_string(need_string("split"));
        } catch (const ValidationError& e) {
            throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
        }
        ex.question = need_string("question");
        ex.rationale = opt_string("rationale");
        ex.answer = opt_string("answer");
        ex.difficulty = opt_number("difficulty");
        ex.fun = opt_number("fun");
        if (j.contains("options") && !j["options"].is_null()) {
            if (!j["options"].is_array()) throw ParseError(line_no, "options must be an array");
            for (const auto& item : j["options"]) {
                if (!item.is_array() || item.size() != 2 || !item[0].is_string() || !item[1].is_string())
                    throw ParseError(line_no, "each option must be a [letter, text] pair");
                ex.options.emplace_back(item[0].get<std::string>(), item[1].get<std::string>());
            }
        }

        try {
            check_example(ex, "line " + std::to_string(line_no));
        } catch (const ValidationError&) {
            throw;
        }
        auto [it, inserted] = id_lines.emplace(ex.id, line_no);
        if (!inserted)
            throw ValidationError("line " + std::to_string(line_no) + ": duplicate id " + ex.id +
                                  " (first at line " + std::to_string(it->second) + ")");
        ds.examples.push_back(std::move(ex));
    }

    char prov[24];
    std::snprintf(prov, sizeof prov, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(contents)));
    ds.provenance = prov;
    return ds;
}

void emit_jsonl(const Dataset& ds, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    for (const Example& ex : ds.examples) {
        json j;
        j["id"] = ex.id;
        j["category"] = to_string(ex.category);
        j["question"] = ex.question;
        if (ex.options.empty()) {
            j["options"] = nullptr;
        } else {
            json arr = json::array();
            for (const auto& [letter, text] : ex.options) arr.push_back(json::array({letter, text}));
            j["options"] = arr;
        }
        j["rationale"] = ex.rationale.empty() ? json(nullptr) : json(ex.rationale);
        j["answer"] = ex.answer.empty() ? json(nullptr) : json(ex.answer);
        j["difficulty"] = ex.difficulty ? json(*ex.difficulty) : json(nullptr);
        j["fun"] = ex.fun ? json(*ex.fun) : json(nullptr);
        j["split"] = to_string(ex.split);
        out << j.dump() << '\n';
    }
}

}  // namespace weakforge
