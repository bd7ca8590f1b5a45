#include "doctest.h"
#include "helpers.hpp"
#include "random_programs.hpp"

#include "microasp/grounder.hpp"
#include "microasp/oracle.hpp"
#include "microasp/theorybase.hpp"

using namespace microasp;
using testing::model_of;
using testing::naive;

namespace {

std::vector<std::string> stable(const std::string& text) {
    auto gp = naive(text);
    return testing::texts(enumerate_bruteforce(gp), gp.atoms);
}

std::vector<std::string> supported(const std::string& text) {
    auto gp = naive(text);
    return testing::texts(supported_models(clark_completion(gp)), gp.atoms);
}

PositiveRule fact(AtomId a) { return {a, {}, {}}; }

}  // namespace

TEST_CASE("reduct of a normal rule") {
    auto gp = naive("a :- not b.");
    const AtomId a = *gp.atoms.find(parse_atom("a"));
    auto pp = reduct(gp, model_of(gp, {"a"}));
    REQUIRE(pp.rules.size() == 1);
    CHECK(pp.rules[0] == fact(a));
    CHECK(reduct(gp, model_of(gp, {"b"})).rules.empty());
}

TEST_CASE("reduct of a choice rule keeps chosen heads") {
    auto gp = naive("{ p; q }.");
    const AtomId p = *gp.atoms.find(parse_atom("p"));
    auto pp = reduct(gp, model_of(gp, {"p"}));
    REQUIRE(pp.rules.size() == 1);
    CHECK(pp.rules[0] == fact(p));
    CHECK(is_stable(gp, model_of(gp, {"p"})));
}

TEST_CASE("reduct drops rules whose upper bound is exceeded") {
    auto gp = naive("{ x; y }. h :- 0 { x; y } 1.");
    CHECK(reduct(gp, model_of(gp, {"x", "y"})).rules.size() == 2);
    CHECK(reduct(gp, model_of(gp, {"x", "h"})).rules.size() == 2);
    CHECK(is_stable(gp, model_of(gp, {"x", "h"})));
    CHECK_FALSE(is_stable(gp, model_of(gp, {"x", "y", "h"})));
    CHECK(is_stable(gp, model_of(gp, {"x", "y"})));
}

TEST_CASE("least model by counters") {
    // a. b :- a. c :- b, d.
    PositiveProgram pp{4, {fact(1), {2, {1}, {}}, {3, {2, 4}, {}}}};
    CHECK(least_model(pp) == Model{1, 2});
    CHECK(least_model(PositiveProgram{}).empty());
    // p :- 2 {x; y}. x. y.   with p=1 x=2 y=3
    PositiveProgram card{3, {{1, {}, {{2, {2, 3}}}}, fact(2), fact(3)}};
    CHECK(least_model(card) == Model{1, 2, 3});
}

TEST_CASE("least model is monotone under added rules") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 300; ++i) {
        PositiveProgram pp{8, {}};
        Model before;
        for (int r = 0; r < 12; ++r) {
            PositiveRule rule{static_cast<AtomId>(testing::pick(rng, 1, 8)), testing::distinct(rng, 8, testing::pick(rng, 0, 2)), {}};
            pp.rules.push_back(rule);
            Model after = least_model(pp);
            CHECK(std::includes(after.begin(), after.end(), before.begin(), before.end()));
            before = after;
        }
    }
}

TEST_CASE("even loop stability") {
    auto gp = naive("a :- not b. b :- not a.");
    CHECK(is_stable(gp, model_of(gp, {"a"})));
    CHECK(is_stable(gp, model_of(gp, {"b"})));
    CHECK_FALSE(is_stable(gp, model_of(gp, {"a", "b"})));
    CHECK_FALSE(is_stable(gp, {}));
    CHECK(stable("a :- not b. b :- not a.") == std::vector<std::string>{"a", "b"});
}

TEST_CASE("odd loop has no stable model") {
    auto gp = naive("a :- not a.");
    CHECK_FALSE(is_stable(gp, {}));
    CHECK_FALSE(is_stable(gp, model_of(gp, {"a"})));
    CHECK(enumerate_bruteforce(gp).models.empty());
}

TEST_CASE("free choice") {
    auto gp = naive("{ p }.");
    CHECK(is_stable(gp, {}));
    CHECK(is_stable(gp, model_of(gp, {"p"})));
}

TEST_CASE("constraints are checked outside the reduct") {
    auto gp = naive("{ p; q }. :- p, q.");
    CHECK(testing::texts(enumerate_bruteforce(gp), gp.atoms) == std::vector<std::string>{"p", "q", ""});
}

TEST_CASE("empty program has the empty model") {
    GroundProgram gp;
    auto ms = enumerate_bruteforce(gp);
    REQUIRE(ms.models.size() == 1);
    CHECK(ms.models[0].empty());
}

TEST_CASE("K3 coloring has six stable models") {
    BenchmarkSpec spec{Problem::Coloring, make_graph("cycle(3)"), 3};
    CHECK(enumerate_bruteforce(ground(encode_program(spec)), 24).models.size() == 6);
}

TEST_CASE("oracle refuses large programs") {
    GroundProgram gp;
    for (int i = 0; i < 25; ++i) gp.atoms.intern(Atom{"a" + std::to_string(i), {}});
    CHECK_THROWS_AS(enumerate_bruteforce(gp), LimitExceeded);
    try {
        enumerate_bruteforce(gp, 20);
    } catch (const LimitExceeded& e) {
        CHECK(std::string(e.what()).find("--limit") != std::string::npos);
    }
}

TEST_CASE("parallel and serial enumeration agree") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        auto gp = testing::random_ground_program(rng, {10, 15, true, true});
        CHECK(enumerate_bruteforce(gp).models == enumerate_bruteforce_serial(gp).models);
    }
}

TEST_CASE("models are ordered by bitset with set bits first") {
    auto gp = naive("{ a; b }.");
    CHECK(testing::texts(enumerate_bruteforce(gp), gp.atoms) == std::vector<std::string>{"a b", "a", "b", ""});
}

TEST_CASE("normal-program stable models are minimal") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
        auto gp = testing::random_ground_program(rng, {8, 12, false, false});
        auto models = enumerate_bruteforce(gp).models;
        for (const auto& m : models) {
            for (const auto& other : models) {
                if (other != m) CHECK_FALSE(std::includes(m.begin(), m.end(), other.begin(), other.end()));
            }
        }
    }
}

TEST_CASE("completion examples") {
    CHECK(supported("a :- not b.") == std::vector<std::string>{"a"});
    CHECK(supported("a :- a.") == std::vector<std::string>{"a", ""});
    CHECK(supported("a :- not b. b :- not a.") == std::vector<std::string>{"a", "b"});
    CHECK(supported(":- a. a :- not b. b :- not a.") == std::vector<std::string>{"b"});
}

TEST_CASE("completion text") {
    auto gp = naive("a :- not b. a :- c, not d. :- c, d.");
    CHECK(to_string(clark_completion(gp), gp.atoms) ==
          "b | a\n-c | d | a\n-c | -d\n-a | -b | (c & -d)\n-b\n-c\n-d\n");
}

TEST_CASE("completion refuses choice rules") {
    CHECK_THROWS_AS(clark_completion(naive("{ a }.")), UnsupportedFeature);
    CHECK_THROWS_AS(clark_completion(naive("a :- 1 { b }. b.")), UnsupportedFeature);
}

TEST_CASE("tightness") {
    CHECK(is_tight(naive("a :- not b. b :- not a.")));
    CHECK_FALSE(is_tight(naive("a :- a.")));
    CHECK_FALSE(is_tight(naive("a :- b. b :- c, not d. c :- a.")));
    CHECK(is_tight(naive("a :- b. b :- c. c.")));
}

TEST_CASE("hamiltonian encodings are not tight") {
    for (const char* g : {"cycle(3)", "complete(4)", "path(2)", "dcycle(4)"}) {
        BenchmarkSpec spec{Problem::Hamiltonian, make_graph(g), std::nullopt};
        CHECK_FALSE(is_tight(ground(encode_program(spec))));
    }
}

TEST_CASE("tight programs: stable equals supported") {
    std::mt19937_64 rng(29);
    int tight = 0;
    for (int i = 0; i < 400; ++i) {
        auto gp = testing::random_ground_program(rng, {10, 14, false, false});
        if (!is_tight(gp)) continue;
        ++tight;
        CHECK(enumerate_bruteforce(gp).models == supported_models(clark_completion(gp)).models);
        CHECK(supported_models(clark_completion(gp)).models == supported_models_serial(clark_completion(gp)).models);
    }
    CHECK(tight > 50);
}
