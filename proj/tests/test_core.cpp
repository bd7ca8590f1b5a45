#include "doctest.h"
#include "helpers.hpp"

#include "microasp/core.hpp"
#include "microasp/printer.hpp"
#include "microasp/theorybase.hpp"

using namespace microasp;

namespace {

std::vector<std::string> messages(const std::string& text) {
    std::vector<std::string> out;
    for (const auto& d : validate(parse_program(text))) out.push_back(d.message);
    return out;
}

std::string ground_text(const std::string& text) { return to_string(testing::naive(text)); }

}  // namespace

TEST_CASE("term order puts integers before constants") {
    CHECK(Term::integer(-3) < Term::integer(2));
    CHECK(Term::integer(100) < Term::constant("a"));
    CHECK(Term::constant("a") < Term::constant("b"));
    CHECK(Term::constant("a") == Term::constant("a"));
}

TEST_CASE("atom text") {
    Atom a{"p", {Term::constant("a"), Term::integer(1)}};
    CHECK(a.str() == "p(a,1)");
    CHECK(Atom{"q", {}}.str() == "q");
    CHECK(a.is_ground());
    CHECK_FALSE(Atom{"p", {Term::variable("X")}}.is_ground());
}

TEST_CASE("validate flags an unsafe variable") {
    CHECK(messages("p(X) :- q.") == std::vector<std::string>{"unsafe variable X"});
    CHECK(messages("p(X) :- q(X), not r(Y).") == std::vector<std::string>{"unsafe variable Y"});
    CHECK(messages("p(X) :- q(Y), X < Y.") == std::vector<std::string>{"unsafe variable X"});
    CHECK(messages("p(X) :- 1 { q(X) }.") == std::vector<std::string>{"unsafe variable X"});
}

TEST_CASE("validate flags an arity mismatch") {
    CHECK(messages("p(a,b). p(a).") == std::vector<std::string>{"arity mismatch p"});
}

TEST_CASE("validate diagnostics carry the rule index") {
    auto ds = validate(parse_program("a. b :- a.\nc(X) :- a."));
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].index == 1);
    CHECK(ds[0].str() == "error: rule 2: unsafe variable X");
}

TEST_CASE("unsatisfiable cardinality bound is a warning") {
    auto ds = validate(parse_program(":- 3 { p(a); p(b) } ."));
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].severity == Severity::Warning);
    CHECK_FALSE(has_errors(ds));
}

TEST_CASE("generated coloring encoding validates cleanly") {
    BenchmarkSpec spec{Problem::Coloring, make_graph("cycle(3)"), 3};
    CHECK(validate(encode_program(spec)).empty());
}

TEST_CASE("herbrand instantiation substitutes every constant") {
    CHECK(ground_text("p(X) :- q(X). q(a). q(b).") ==
          "q(a).\nq(b).\np(a) :- q(a).\np(b) :- q(b).\n");
}

TEST_CASE("herbrand instantiation evaluates builtins") {
    CHECK(ground_text("p(X) :- q(X), X != a. q(a). q(b).") == "q(a).\nq(b).\np(b) :- q(b).\n");
}

TEST_CASE("herbrand instantiation keeps a ground rule") {
    auto gp = testing::naive("r :- p, not q.");
    REQUIRE(gp.rules.size() == 1);
    CHECK(to_string(gp) == "r :- p, not q.\n");
}

TEST_CASE("herbrand instantiation rejects unsafe rules") {
    CHECK_THROWS_AS(testing::naive("p(X) :- q."), ValidationError);
    try {
        testing::naive("p(X) :- q.");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("unsafe variable X") != std::string::npos);
    }
}

TEST_CASE("herbrand instantiation is idempotent on ground programs") {
    const std::string text = "a :- not b.\nb :- not a.\n{ c; d } :- a.\n:- 1 { c; d } 1, b.\ne.\n";
    auto once = testing::naive(text);
    auto twice = herbrand_instantiation(once.to_program());
    CHECK(to_string(once.to_program()) == to_string(twice.to_program()));
    CHECK(once.rules == twice.rules);
}

TEST_CASE("atom table is a bijection") {
    auto gp = testing::naive("p(X,Y) :- q(X), q(Y). q(1). q(a).");
    for (AtomId a = 1; a <= gp.atom_count(); ++a) {
        CHECK(gp.atoms.find(gp.atoms.atom(a)) == a);
        CHECK(parse_atom(gp.atoms.name(a)) == gp.atoms.atom(a));
    }
}

TEST_CASE("printer round trip") {
    const std::string text =
        "q(a). q(1).\n"
        "p(X) :- q(X), not r(X), X != a, 1 { q(a); q(b) } 2.\n"
        "{ r(X); s(X) } :- q(X).\n"
        ":- r(X), s(X).\n"
        ":- .\n"
        "t :- 0 { q(a) }, { q(b) } 1, X <= Y, q(X), q(Y), X = Y, X < 3.\n";
    const auto p = parse_program(text);
    const auto printed = to_string(p);
    CHECK(parse_program(printed) == p);
    CHECK(to_string(parse_program(printed)) == printed);
}
