#include <doctest.h>

#include <set>

#include "weakforge/errors.hpp"
#include "weakforge/rng.hpp"

using namespace weakforge;

// Published reference sequence for Vigna's splitmix64.
TEST_CASE("splitmix64 matches the reference sequence") {
    SplitMix64 a{0};
    CHECK(a.next() == 16294208416658607535ull);
    CHECK(a.next() == 7960286522194355700ull);
    CHECK(a.next() == 487617019471545679ull);
    CHECK(a.next() == 17909611376780542444ull);

    SplitMix64 b{1234567};
    CHECK(b.next() == 6457827717110365317ull);
    CHECK(b.next() == 3203168211198807973ull);
    CHECK(b.next() == 9817491932198370423ull);
    CHECK(b.next() == 4593380528125082431ull);
}

TEST_CASE("xoshiro256** from a splitmix-expanded seed") {
    Xoshiro256ss rng(42);
    CHECK(rng.next() == 1546998764402558742ull);
    CHECK(rng.next() == 6990951692964543102ull);
    CHECK(rng.next() == 12544586762248559009ull);
    CHECK(rng.next() == 17057574109182124193ull);
}

TEST_CASE("labeled stream derivation is stable") {
    CHECK(derive_seed(42, {"split"}) == 11380159506012374609ull);

    // Golden first draws of the (42, "split") stream.
    auto rng = stream_rng(42, {"split"});
    CHECK(rng.next() == 16686069640984453505ull);
    CHECK(rng.next() == 6466911991074418766ull);
    CHECK(rng.next() == 5090433017078246920ull);
    CHECK(rng.next() == 8662324409458949908ull);
}

TEST_CASE("same seed and labels replay identically") {
    auto a = stream_rng(7, {"sft", "epoch0"});
    auto b = stream_rng(7, {"sft", "epoch0"});
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("differing labels separate streams") {
    auto base = stream_rng(7, {"pairs"});
    auto label = stream_rng(7, {"pairs2"});
    auto nested = stream_rng(7, {"pairs", "x"});
    const auto v = base.next();
    CHECK(v != label.next());
    CHECK(v != nested.next());
    CHECK(derive_seed(7, {"a", "b"}) != derive_seed(7, {"ab"}));
    CHECK(derive_seed(7, {"a", "b"}) != derive_seed(7, {"b", "a"}));
}

TEST_CASE("next_below is in range and rejects zero") {
    auto rng = stream_rng(3, {"t"});
    for (int i = 0; i < 1000; ++i) {
        const auto v = rng.next_below(7);
        CHECK(v < 7);
    }
    CHECK_THROWS_AS(rng.next_below(0), ContractViolation);
}

TEST_CASE("next_double is in [0,1) and next_normal is finite") {
    auto rng = stream_rng(3, {"d"});
    for (int i = 0; i < 1000; ++i) {
        const double u = rng.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    double mean = 0.0;
    for (int i = 0; i < 4000; ++i) mean += rng.next_normal();
    mean /= 4000.0;
    CHECK(std::abs(mean) < 0.1);
}

TEST_CASE("shuffle is a permutation and deterministic") {
    std::vector<int> v(20);
    for (int i = 0; i < 20; ++i) v[static_cast<std::size_t>(i)] = i;
    auto w = v;
    auto a = stream_rng(9, {"shuffle"});
    auto b = stream_rng(9, {"shuffle"});
    a.shuffle(v);
    b.shuffle(w);
    CHECK(v == w);
    CHECK(std::set<int>(v.begin(), v.end()).size() == 20);
}
