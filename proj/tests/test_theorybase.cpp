#include "doctest.h"

#include "microasp/grounder.hpp"
#include "microasp/oracle.hpp"
#include "microasp/printer.hpp"
#include "microasp/solver.hpp"
#include "microasp/theorybase.hpp"

#include <map>
#include <set>

using namespace microasp;

namespace {

BenchmarkSpec spec_of(Problem p, const char* graph, std::optional<std::int64_t> k = std::nullopt) {
    return {p, make_graph(graph), k};
}

std::size_t pipeline_count(const BenchmarkSpec& spec) {
    return solve(ground(encode_program(spec))).models.size();
}

}  // namespace

TEST_CASE("cycle(3) is a triangle") {
    auto g = make_graph("cycle(3)");
    CHECK(g.id == "cycle(3)");
    CHECK(g.n == 3);
    CHECK(g.edges == std::vector<Edge>{{1, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("grid(2,2)") {
    auto g = make_graph("grid(2,2)");
    CHECK(g.n == 4);
    CHECK(g.edges.size() == 4);
}

TEST_CASE("random graphs are reproducible") {
    auto a = make_graph("random(10,20,42)");
    auto b = make_graph("random(10, 20, 42)");
    CHECK(a == b);
    CHECK(a.id == "random(10,20,42)");
    CHECK(a.edges.size() == 20);
    CHECK(make_graph("random(10,20,43)").edges != a.edges);
}

TEST_CASE("LCG reference values") {
    // state1 = 1*a + c, state2 = state1*a + c, both mod 2^64; output is the high word
    Lcg rng(1);
    const std::uint64_t s1 = 6364136223846793005ULL + 1442695040888963407ULL;
    const std::uint64_t s2 = s1 * 6364136223846793005ULL + 1442695040888963407ULL;
    CHECK(rng.next() == static_cast<std::uint32_t>(s1 >> 32));
    CHECK(rng.next() == static_cast<std::uint32_t>(s2 >> 32));
}

TEST_CASE("directed families") {
    CHECK(make_graph("dcycle(2)").edges == std::vector<Edge>{{1, 2}, {2, 1}});
    CHECK(make_graph("dcomplete(3)").edges.size() == 6);
    CHECK(make_graph("dpath(3)").directed);
    CHECK(make_graph("drandom(5,20,1)").edges.size() == 20);
    CHECK(make_graph("cyclechords(10,5,3)").edges.size() == 15);
}

TEST_CASE("bad families are rejected") {
    CHECK_THROWS_AS(make_graph("cycle(2)"), InvalidArgument);
    CHECK_THROWS_AS(make_graph("star(4)"), InvalidArgument);
    CHECK_THROWS_AS(make_graph("cycle"), InvalidArgument);
    CHECK_THROWS_AS(make_graph("cycle(x)"), InvalidArgument);
    CHECK_THROWS_AS(make_graph("grid(2)"), InvalidArgument);
    CHECK_THROWS_AS(make_graph("random(4,7,1)"), InvalidArgument);
    CHECK_THROWS_AS(make_graph("path(0)"), InvalidArgument);
}

TEST_CASE("inconsistent benchmarks are rejected") {
    CHECK_THROWS_AS(encode_program(spec_of(Problem::Coloring, "cycle(3)")), InvalidArgument);
    CHECK_THROWS_AS(encode_program(spec_of(Problem::Kernel, "cycle(3)")), InvalidArgument);
    CHECK_THROWS_AS(encode_program(spec_of(Problem::Hamiltonian, "path(1)")), InvalidArgument);
    CHECK_THROWS_AS(encode_program(spec_of(Problem::VertexCover, "path(3)", 0)), InvalidArgument);
    CHECK_THROWS_AS(encode_default_theory(spec_of(Problem::IndependentSet, "path(3)", 1)), UnsupportedFeature);
}

TEST_CASE("K3 coloring program has six models") {
    CHECK(pipeline_count(spec_of(Problem::Coloring, "cycle(3)", 3)) == 6);
}

TEST_CASE("coloring models project to proper colorings") {
    auto spec = spec_of(Problem::Coloring, "grid(2,3)", 3);
    auto gp = ground(encode_program(spec));
    std::set<std::map<std::string, std::string>> seen;
    for (const auto& m : solve(gp).models) {
        std::map<std::string, std::string> color;
        for (AtomId a : m) {
            const auto& atom = gp.atoms.atom(a);
            if (atom.predicate != "clrd") continue;
            CHECK(color.count(atom.args[0].str()) == 0);
            color[atom.args[0].str()] = atom.args[1].str();
        }
        CHECK(color.size() == spec.graph.n);
        for (const auto& [u, v] : spec.graph.edges) CHECK(color[std::to_string(u)] != color[std::to_string(v)]);
        CHECK(seen.insert(color).second);
    }
    CHECK(seen.size() == count_solutions_bruteforce(spec));
}

TEST_CASE("coloring theory without killing defaults") {
    auto spec = spec_of(Problem::Coloring, "cycle(3)", 2);
    spec.target = Target::DefaultTheory;
    spec.killing_defaults = false;
    CHECK(dl::extensions(encode_default_theory(spec)).extensions.size() == 8);
}

TEST_CASE("coloring theory text") {
    auto spec = spec_of(Problem::Coloring, "path(2)", 2);
    CHECK(dl::to_string(encode_default_theory(spec)) ==
          "d: true : -clrd(1,2) / clrd(1,1).\n"
          "d: true : -clrd(1,1) / clrd(1,2).\n"
          "d: true : -clrd(2,2) / clrd(2,1).\n"
          "d: true : -clrd(2,1) / clrd(2,2).\n"
          "d: clrd(1,1) & clrd(2,1) : -f / f.\n"
          "d: clrd(1,2) & clrd(2,2) : -f / f.\n");
}

TEST_CASE("coloring extensions match the program models") {
    for (const char* g : {"cycle(3)", "path(3)", "cycle(4)"}) {
        auto spec = spec_of(Problem::Coloring, g, 3);
        auto gp = ground(encode_program(spec));
        std::set<std::set<std::string>> from_program, from_theory;
        for (const auto& m : solve(gp).models) {
            std::set<std::string> s;
            for (AtomId a : m)
                if (gp.atoms.atom(a).predicate == "clrd") s.insert(gp.atoms.name(a));
            from_program.insert(s);
        }
        for (const auto& e : dl::extensions(encode_default_theory(spec)).extensions) {
            std::set<std::string> s;
            for (const auto& l : e.literals.lits)
                if (l.positive && l.atom.rfind("clrd", 0) == 0) s.insert(l.atom);
            from_theory.insert(s);
        }
        CHECK(from_program == from_theory);
    }
}

TEST_CASE("kernels of small directed cycles") {
    auto gp = ground(encode_program(spec_of(Problem::Kernel, "dcycle(2)")));
    std::vector<std::string> ins;
    for (const auto& m : solve(gp).models) {
        std::string s;
        for (AtomId a : m)
            if (gp.atoms.atom(a).predicate == "in") s += gp.atoms.name(a);
        ins.push_back(s);
    }
    std::sort(ins.begin(), ins.end());
    CHECK(ins == std::vector<std::string>{"in(1)", "in(2)"});
    CHECK(pipeline_count(spec_of(Problem::Kernel, "dcycle(3)")) == 0);
}

TEST_CASE("kernel default theory") {
    auto spec = spec_of(Problem::Kernel, "dcycle(4)");
    spec.target = Target::DefaultTheory;
    auto t = std::get<dl::DefaultTheory>(encode(spec));
    CHECK(dl::extensions(t).extensions.size() == 2);
}

TEST_CASE("brute-force counts") {
    CHECK(count_solutions_bruteforce(spec_of(Problem::Coloring, "cycle(4)", 2)) == 2);
    CHECK(count_solutions_bruteforce(spec_of(Problem::Hamiltonian, "complete(4)")) == 6);
    CHECK(count_solutions_bruteforce(spec_of(Problem::IndependentSet, "path(3)", 2)) == 1);
    CHECK(count_solutions_bruteforce(spec_of(Problem::VertexCover, "path(3)", 1)) == 1);
    CHECK(count_solutions_bruteforce(spec_of(Problem::Kernel, "dcycle(4)")) == 2);
    CHECK(count_solutions_bruteforce(spec_of(Problem::Hamiltonian, "path(2)")) == 1);
    CHECK(count_solutions_bruteforce(spec_of(Problem::Hamiltonian, "dcycle(5)")) == 1);
    CHECK_THROWS_AS(count_solutions_bruteforce(spec_of(Problem::Coloring, "cycle(13)", 2)), LimitExceeded);
}

TEST_CASE("parallel and serial counters agree") {
    for (const char* g : {"cycle(6)", "complete(5)", "grid(2,4)", "random(8,12,3)"}) {
        for (Problem p : {Problem::Coloring, Problem::Hamiltonian, Problem::IndependentSet, Problem::VertexCover}) {
            auto spec = spec_of(p, g, 3);
            CHECK(count_solutions_bruteforce(spec) == count_solutions_bruteforce_serial(spec));
        }
    }
}

TEST_CASE("encodings match brute force on small graphs") {
    for (const char* g : {"cycle(4)", "path(4)", "complete(4)", "grid(2,3)", "random(6,8,5)"}) {
        for (Problem p : {Problem::Coloring, Problem::Hamiltonian, Problem::IndependentSet, Problem::VertexCover}) {
            for (std::int64_t k : {1, 2, 3}) {
                auto spec = spec_of(p, g, k);
                INFO(g << " " << to_string(p) << " k=" << k);
                CHECK(pipeline_count(spec) == count_solutions_bruteforce(spec));
                if (p == Problem::Hamiltonian) break;
            }
        }
    }
    for (const char* g : {"dcycle(4)", "dpath(4)", "dcomplete(3)", "dgrid(2,3)", "drandom(6,10,5)"}) {
        auto spec = spec_of(Problem::Kernel, g);
        CHECK(pipeline_count(spec) == count_solutions_bruteforce(spec));
    }
}

TEST_CASE("encoding output is stable") {
    auto spec = spec_of(Problem::IndependentSet, "random(7,9,1)", 2);
    CHECK(to_string(encode_program(spec)) == to_string(encode_program(spec)));
    CHECK(to_string(encode_program(spec_of(Problem::VertexCover, "path(2)", 1))) ==
          "vtx(1).\nvtx(2).\nedge(1,2).\n{ in(V) } :- vtx(V).\n:- edge(U,V), not in(U), not in(V).\n:- 2 { in(1); in(2) }.\n");
}
