#include <algorithm>
#include <numeric>

#include "weakforge/corpus.hpp"
#include "weakforge/errors.hpp"
#include "weakforge/rng.hpp"

namespace weakforge {

SplitResult split_seed_unlabeled(const Dataset& ds, int n_seed, int n_unlabeled, std::uint64_t seed) {
    if (n_seed < 0 || n_unlabeled < 0) throw ContractViolation("split counts must be nonnegative");
    if (static_cast<std::size_t>(n_seed) + static_cast<std::size_t>(n_unlabeled) > ds.size())
        throw ContractViolation("split counts exceed the dataset size");

    std::vector<std::size_t> order(ds.size());
    std::iota(order.begin(), order.end(), 0);
    auto rng = stream_rng(seed, {"split"});
    rng.shuffle(order);

    auto build = [&](std::size_t from, std::size_t count, Split split, const char* tag) {
        std::vector<std::size_t> picked(order.begin() + static_cast<std::ptrdiff_t>(from),
                                        order.begin() + static_cast<std::ptrdiff_t>(from + count));
        std::sort(picked.begin(), picked.end());  // keep the input ordering
        Dataset part;
        for (std::size_t idx : picked) {
            Example ex = ds.examples[idx];
            ex.split = split;
            if (split == Split::Unlabeled) ex.rationale.clear();
            part.examples.push_back(std::move(ex));
        }
        char prov[24];
        std::snprintf(prov, sizeof prov, "%016llx",
                      static_cast<unsigned long long>(fnv1a64(
                          ds.provenance + "|" + tag + "|" + std::to_string(n_seed) + "|" +
                          std::to_string(n_unlabeled) + "|" + std::to_string(seed))));
        part.provenance = prov;
        part.validate();
        return part;
    };

    SplitResult result;
    result.seed = build(0, static_cast<std::size_t>(n_seed), Split::Seed, "seed");
    result.unlabeled =
        build(static_cast<std::size_t>(n_seed), static_cast<std::size_t>(n_unlabeled), Split::Unlabeled, "unlabeled");
    result.test = build(static_cast<std::size_t>(n_seed) + static_cast<std::size_t>(n_unlabeled),
                        ds.size() - static_cast<std::size_t>(n_seed) - static_cast<std::size_t>(n_unlabeled),
                        Split::Test, "test");
    return result;
}

}  // namespace weakforge
