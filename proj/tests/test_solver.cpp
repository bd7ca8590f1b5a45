#include "doctest.h"
#include "helpers.hpp"
#include "random_programs.hpp"

#include "microasp/grounder.hpp"
#include "microasp/oracle.hpp"
#include "microasp/solver.hpp"
#include "microasp/theorybase.hpp"

using namespace microasp;
using testing::naive;

namespace {

Value value_of(const GroundProgram& gp, const Assignment& a, const std::string& atom) {
    return a.value(*gp.atoms.find(parse_atom(atom)));
}

std::vector<Model> sorted(std::vector<Model> ms) {
    sort_models(ms);
    return ms;
}

}  // namespace

TEST_CASE("forward propagation") {
    auto gp = naive("a. b :- a.");
    auto out = propagate(gp, Assignment(gp.atom_count()));
    REQUIRE(out);
    CHECK(value_of(gp, *out, "a") == Value::True);
    CHECK(value_of(gp, *out, "b") == Value::True);
}

TEST_CASE("positive loop is unfounded") {
    auto gp = naive("a :- b. b :- a.");
    auto out = propagate(gp, Assignment(gp.atom_count()));
    REQUIRE(out);
    CHECK(value_of(gp, *out, "a") == Value::False);
    CHECK(value_of(gp, *out, "b") == Value::False);
}

TEST_CASE("constraint propagation") {
    // b has a way to be true, so only the constraint decides it
    auto gp = naive("{ a; b }. :- a, b.");
    Assignment start(gp.atom_count());
    start.assign(*gp.atoms.find(parse_atom("a")), Value::True, 0);
    auto out = propagate(gp, start);
    REQUIRE(out);
    CHECK(value_of(gp, *out, "b") == Value::False);
}

TEST_CASE("bare constraint with an unsupported true atom conflicts") {
    // a has no rule at all, so a=true is already refuted by support
    auto gp = naive(":- a, b.");
    Assignment start(gp.atom_count());
    start.assign(*gp.atoms.find(parse_atom("a")), Value::True, 0);
    CHECK_FALSE(propagate(gp, start));
}

TEST_CASE("backchaining through the only supporting rule") {
    auto gp = naive("{ b; c }. a :- b, not c.");
    Assignment start(gp.atom_count());
    start.assign(*gp.atoms.find(parse_atom("a")), Value::True, 0);
    auto out = propagate(gp, start);
    REQUIRE(out);
    CHECK(value_of(gp, *out, "b") == Value::True);
    CHECK(value_of(gp, *out, "c") == Value::False);
}

TEST_CASE("cardinality forcing") {
    auto gp2 = naive("{ x; y; z }. ok :- 3 { x; y; z }. :- not ok.");
    auto out = propagate(gp2, Assignment(gp2.atom_count()));
    REQUIRE(out);
    CHECK(value_of(gp2, *out, "x") == Value::True);
    CHECK(value_of(gp2, *out, "y") == Value::True);
    CHECK(value_of(gp2, *out, "z") == Value::True);

    auto gp3 = naive("{ x; y; z }. :- 2 { x; y; z }.");
    Assignment start(gp3.atom_count());
    start.assign(*gp3.atoms.find(parse_atom("x")), Value::True, 0);
    auto out3 = propagate(gp3, start);
    REQUIRE(out3);
    CHECK(value_of(gp3, *out3, "y") == Value::False);
    CHECK(value_of(gp3, *out3, "z") == Value::False);
}

TEST_CASE("assignment trail") {
    Assignment a(3);
    CHECK(a.assign(1, Value::True, 0));
    CHECK(a.assign(1, Value::True, 0));
    CHECK_FALSE(a.assign(1, Value::False, 0));
    CHECK(a.assign(2, Value::False, 1));
    CHECK(a.assigned_count() == 2);
    CHECK(a.consistent_with_trail());
    a.pop();
    CHECK_FALSE(a.is_assigned(2));
    CHECK(a.true_atoms() == Model{1});
}

TEST_CASE("even loop") {
    auto gp = naive("a :- not b. b :- not a.");
    auto ms = solve(gp);
    CHECK(testing::texts(ms, gp.atoms) == std::vector<std::string>{"a", "b"});
    CHECK_FALSE(ms.truncated);
}

TEST_CASE("odd loop") {
    CHECK(solve(naive("a :- not a.")).models.empty());
}

TEST_CASE("K3 coloring") {
    BenchmarkSpec spec{Problem::Coloring, make_graph("cycle(3)"), 3};
    auto gp = ground(encode_program(spec));
    SolveStats st;
    auto ms = solve(gp, {}, &st);
    CHECK(ms.models.size() == 6);
    for (const auto& m : ms.models) CHECK(check_model(gp, m));
    CHECK(st.guard_rejections == 0);
}

TEST_CASE("directed odd cycle has no kernel") {
    BenchmarkSpec spec{Problem::Kernel, make_graph("dcycle(3)"), std::nullopt};
    CHECK(solve(ground(encode_program(spec))).models.empty());
}

TEST_CASE("check_model") {
    auto gp = naive("a :- not b.");
    CHECK(check_model(gp, testing::model_of(gp, {"a"})));
    CHECK_FALSE(check_model(gp, testing::model_of(gp, {"b"})));
}

TEST_CASE("max_models truncates") {
    auto gp = naive("{ a; b; c }.");
    SearchConfig cfg;
    cfg.max_models = 3;
    auto ms = solve(gp, cfg);
    CHECK(ms.models.size() == 3);
    CHECK(ms.truncated);
    cfg.max_models = 8;
    auto all = solve(gp, cfg);
    CHECK(all.models.size() == 8);
    CHECK_FALSE(all.truncated);
}

TEST_CASE("conflict limit") {
    BenchmarkSpec spec{Problem::Coloring, make_graph("complete(5)"), 4};
    auto gp = ground(encode_program(spec));
    SearchConfig cfg;
    cfg.conflict_limit = 1;
    cfg.heuristic = Heuristic::FirstUnassigned;
    CHECK_THROWS_AS(solve(gp, cfg), IncompleteResult);
}

TEST_CASE("heuristic names") {
    CHECK(parse_heuristic("occurrence") == Heuristic::Occurrence);
    CHECK(parse_heuristic("first-unassigned") == Heuristic::FirstUnassigned);
    CHECK_FALSE(parse_heuristic("vsids"));
    CHECK(std::string(to_string(Heuristic::FirstUnassigned)) == "first-unassigned");
}

TEST_CASE("solver agrees with the oracle on random programs") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 300; ++i) {
        auto gp = testing::random_ground_program(rng, {});
        const auto expected = enumerate_bruteforce(gp).models;
        for (auto h : {Heuristic::Occurrence, Heuristic::FirstUnassigned}) {
            for (bool look : {false, true}) {
                SearchConfig cfg;
                cfg.heuristic = h;
                cfg.lookahead = look;
                cfg.check_counters = true;
                cfg.seed = static_cast<std::uint64_t>(i);
                SolveStats st;
                CHECK(sorted(solve(gp, cfg, &st).models) == expected);
                CHECK(st.guard_rejections == 0);
            }
        }
    }
}

TEST_CASE("propagation is sound") {
    // forced values hold in every stable model extending the start assignment
    std::mt19937_64 rng(43);
    for (int i = 0; i < 300; ++i) {
        auto gp = testing::random_ground_program(rng, {8, 14, true, true});
        const auto models = enumerate_bruteforce(gp).models;
        Assignment start(gp.atom_count());
        const AtomId a = static_cast<AtomId>(testing::pick(rng, 1, gp.atom_count()));
        start.assign(a, testing::chance(rng, 0.5) ? Value::True : Value::False, 0);
        auto out = propagate(gp, start);
        for (const auto& m : models) {
            Interpretation in(gp.atom_count(), m);
            if (in.contains(a) != (start.value(a) == Value::True)) continue;
            REQUIRE(out);
            for (const auto& e : out->trail()) CHECK(in.contains(e.atom) == (e.value == Value::True));
        }
    }
}

TEST_CASE("seed changes only tie breaking") {
    BenchmarkSpec spec{Problem::Coloring, make_graph("cycle(5)"), 3};
    auto gp = ground(encode_program(spec));
    SearchConfig a, b;
    b.seed = 99;
    CHECK(sorted(solve(gp, a).models) == sorted(solve(gp, b).models));
    CHECK(solve(gp, b).models == solve(gp, b).models);
}
