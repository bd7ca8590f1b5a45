#include "microasp/theorybase.hpp"

#include "microasp/error.hpp"
#include "microasp/grounder.hpp"
#include "microasp/parser.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <functional>
#include <memory>
#include <set>
#include <sstream>

namespace microasp {

namespace {

constexpr std::uint64_t max_vertices = 1'000'000;

std::string family_id(std::string_view family, const std::vector<std::uint64_t>& params) {
    std::string id(family);
    id += '(';
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) id += ',';
        id += std::to_string(params[i]);
    }
    return id + ')';
}

void need(bool ok, const std::string& id, const char* what) {
    if (!ok) throw InvalidArgument("bad graph " + id + ": " + what);
}

std::vector<Edge> cycle_edges(Vertex n, bool directed) {
    std::vector<Edge> e;
    for (Vertex v = 1; v < n; ++v) e.push_back({v, v + 1});
    if (directed || n > 2) e.push_back({n, 1});
    return e;
}

std::vector<Edge> grid_edges(Vertex r, Vertex c) {
    std::vector<Edge> e;
    auto at = [c](Vertex i, Vertex j) { return i * c + j + 1; };
    for (Vertex i = 0; i < r; ++i) {
        for (Vertex j = 0; j < c; ++j) {
            if (j + 1 < c) e.push_back({at(i, j), at(i, j + 1)});
            if (i + 1 < r) e.push_back({at(i, j), at(i + 1, j)});
        }
    }
    return e;
}

/// m distinct random edges, skipping those already in `taken`.
void add_random_edges(std::vector<Edge>& edges, Vertex n, std::uint64_t m, std::uint64_t seed, bool directed) {
    std::set<Edge> taken(edges.begin(), edges.end());
    Lcg rng(seed);
    for (std::uint64_t added = 0; added < m;) {
        Vertex u = rng.below(n) + 1;
        Vertex v = rng.below(n) + 1;
        if (u == v) continue;
        if (!directed && u > v) std::swap(u, v);
        if (!taken.insert({u, v}).second) continue;
        edges.push_back({u, v});
        ++added;
    }
}

}  // namespace

Graph make_graph(std::string_view family, const std::vector<std::uint64_t>& params) {
    const std::string id = family_id(family, params);
    const bool directed = family.size() > 1 && family[0] == 'd';
    const std::string_view base = directed ? family.substr(1) : family;

    auto arity = [&](std::size_t k) { need(params.size() == k, id, "wrong number of parameters"); };
    auto vertices = [&](std::uint64_t n, std::uint64_t min) {
        need(n >= min, id, "too few vertices");
        need(n <= max_vertices, id, "too many vertices");
        return static_cast<Vertex>(n);
    };
    const std::uint64_t pairs_factor = directed ? 1 : 2;

    std::vector<Edge> edges;
    Vertex n = 0;
    if (base == "cycle") {
        arity(1);
        n = vertices(params[0], directed ? 2 : 3);
        edges = cycle_edges(n, directed);
    } else if (base == "path") {
        arity(1);
        n = vertices(params[0], 1);
        for (Vertex v = 1; v < n; ++v) edges.push_back({v, v + 1});
    } else if (base == "complete") {
        arity(1);
        n = vertices(params[0], 1);
        for (Vertex u = 1; u <= n; ++u) {
            for (Vertex v = 1; v <= n; ++v) {
                if (u < v || (directed && u != v)) edges.push_back({u, v});
            }
        }
    } else if (base == "grid") {
        arity(2);
        need(params[0] >= 1 && params[1] >= 1, id, "grid sides must be positive");
        need(params[0] <= max_vertices && params[1] <= max_vertices / params[0], id, "too many vertices");
        n = static_cast<Vertex>(params[0] * params[1]);
        edges = grid_edges(static_cast<Vertex>(params[0]), static_cast<Vertex>(params[1]));
    } else if (base == "random") {
        arity(3);
        n = vertices(params[0], 1);
        const std::uint64_t max_edges = std::uint64_t{n} * (n - 1) / pairs_factor;
        need(params[1] <= max_edges, id, "more edges than vertex pairs");
        add_random_edges(edges, n, params[1], params[2], directed);
    } else if (base == "cyclechords" && !directed) {
        arity(3);
        n = vertices(params[0], 3);
        edges = cycle_edges(n, false);
        need(params[1] <= std::uint64_t{n} * (n - 1) / 2 - n, id, "more chords than vertex pairs");
        add_random_edges(edges, n, params[1], params[2], false);
    } else {
        throw InvalidArgument("unknown graph family '" + std::string(family) + "'");
    }
    std::sort(edges.begin(), edges.end(), [directed](Edge a, Edge b) {
        if (!directed) {
            if (a.first > a.second) std::swap(a.first, a.second);
            if (b.first > b.second) std::swap(b.first, b.second);
        }
        return a < b;
    });
    return Graph::make(id, n, directed, std::move(edges));
}

Graph make_graph(std::string_view text) {
    auto bad = [&]() { return InvalidArgument("malformed graph family '" + std::string(text) + "'"); };
    const auto open = text.find('(');
    if (open == std::string_view::npos || open == 0 || text.back() != ')') throw bad();
    const std::string_view family = text.substr(0, open);
    std::string_view rest = text.substr(open + 1, text.size() - open - 2);

    std::vector<std::uint64_t> params;
    while (true) {
        while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
        if (ec != std::errc()) throw bad();
        params.push_back(value);
        rest.remove_prefix(static_cast<std::size_t>(ptr - rest.data()));
        while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
        if (rest.empty()) break;
        if (rest.front() != ',') throw bad();
        rest.remove_prefix(1);
    }
    return make_graph(family, params);
}

std::optional<Problem> parse_problem(std::string_view name) {
    if (name == "coloring") return Problem::Coloring;
    if (name == "hamiltonian") return Problem::Hamiltonian;
    if (name == "kernel") return Problem::Kernel;
    if (name == "independentset") return Problem::IndependentSet;
    if (name == "vertexcover") return Problem::VertexCover;
    return std::nullopt;
}

const char* to_string(Problem p) noexcept {
    switch (p) {
        case Problem::Coloring: return "coloring";
        case Problem::Hamiltonian: return "hamiltonian";
        case Problem::Kernel: return "kernel";
        case Problem::IndependentSet: return "independentset";
        case Problem::VertexCover: return "vertexcover";
    }
    return "?";
}

const char* solution_predicate(Problem p) noexcept { return p == Problem::Coloring ? "clrd" : "in"; }

void check_spec(const BenchmarkSpec& spec) {
    const std::string name = to_string(spec.problem);
    switch (spec.problem) {
        case Problem::Coloring:
        case Problem::IndependentSet:
        case Problem::VertexCover:
            if (!spec.k) throw InvalidArgument(name + " needs --k");
            if (*spec.k < 1) throw InvalidArgument(name + " needs k >= 1");
            break;
        case Problem::Kernel:
            if (!spec.graph.directed) throw InvalidArgument("kernel needs a directed graph");
            break;
        case Problem::Hamiltonian:
            if (spec.graph.n < 2) throw InvalidArgument("hamiltonian needs at least 2 vertices");
            break;
    }
}

namespace {

void vertex_facts(std::ostringstream& out, Vertex n) {
    for (Vertex v = 1; v <= n; ++v) out << "vtx(" << v << ").\n";
}

void edge_facts(std::ostringstream& out, const Graph& g, const char* pred, bool both_directions) {
    for (const auto& [u, v] : g.edges) {
        out << pred << '(' << u << ',' << v << ").\n";
        if (both_directions && !g.directed) out << pred << '(' << v << ',' << u << ").\n";
    }
}

std::string in_elements(Vertex n) {
    std::string s;
    for (Vertex v = 1; v <= n; ++v) {
        if (v > 1) s += "; ";
        s += "in(" + std::to_string(v) + ")";
    }
    return s;
}

std::string clrd(Vertex v, std::int64_t c) { return "clrd(" + std::to_string(v) + "," + std::to_string(c) + ")"; }

}  // namespace

Program encode_program(const BenchmarkSpec& spec) {
    check_spec(spec);
    const Graph& g = spec.graph;
    std::ostringstream out;
    vertex_facts(out, g.n);
    switch (spec.problem) {
        case Problem::Coloring:
            for (std::int64_t c = 1; c <= *spec.k; ++c) out << "col(" << c << ").\n";
            edge_facts(out, g, "edge", false);
            out << "{ clrd(V,C) } :- vtx(V), col(C).\n"
                   "colored(V) :- clrd(V,C).\n"
                   ":- vtx(V), not colored(V).\n"
                   ":- clrd(V,C1), clrd(V,C2), C1 < C2.\n"
                   ":- edge(U,V), clrd(U,C), clrd(V,C).\n";
            break;
        case Problem::Hamiltonian:
            edge_facts(out, g, "arc", true);
            out << "{ in(U,V) } :- arc(U,V).\n"
                   ":- in(U,V), in(U,W), V < W.\n"
                   ":- in(U,W), in(V,W), U < V.\n"
                   "hasout(U) :- in(U,V).\n"
                   ":- vtx(U), not hasout(U).\n"
                   "hasin(V) :- in(U,V).\n"
                   ":- vtx(V), not hasin(V).\n"
                   "r(V) :- in(1,V).\n"
                   "r(V) :- r(U), in(U,V).\n"
                   ":- vtx(V), not r(V).\n";
            break;
        case Problem::Kernel:
            edge_facts(out, g, "arc", false);
            out << "in(V) :- vtx(V), not out(V).\n"
                   "out(V) :- vtx(V), not in(V).\n"
                   ":- in(U), in(V), arc(U,V).\n"
                   "dom(V) :- arc(V,U), in(U).\n"
                   ":- out(V), not dom(V).\n";
            break;
        case Problem::IndependentSet:
            edge_facts(out, g, "edge", false);
            out << "{ in(V) } :- vtx(V).\n"
                   ":- edge(U,V), in(U), in(V).\n"
                << "ok :- " << *spec.k << " { " << in_elements(g.n) << " }.\n"
                << ":- not ok.\n";
            break;
        case Problem::VertexCover:
            edge_facts(out, g, "edge", false);
            out << "{ in(V) } :- vtx(V).\n"
                   ":- edge(U,V), not in(U), not in(V).\n";
            // a cap of n or more can never be exceeded
            if (*spec.k < static_cast<std::int64_t>(g.n)) {
                out << ":- " << *spec.k + 1 << " { " << in_elements(g.n) << " }.\n";
            }
            break;
    }
    return parse_program(out.str());
}

dl::DefaultTheory encode_default_theory(const BenchmarkSpec& spec) {
    check_spec(spec);
    const Graph& g = spec.graph;
    if (spec.problem == Problem::Kernel) {
        return dl::program_to_defaults(ground(encode_program(spec)));
    }
    if (spec.problem != Problem::Coloring) {
        throw UnsupportedFeature(std::string("no default theory encoding for ") + to_string(spec.problem));
    }
    const std::int64_t k = *spec.k;
    dl::DefaultTheory t;
    for (Vertex v = 1; v <= g.n; ++v) {
        for (std::int64_t c = 1; c <= k; ++c) {
            dl::Default d;
            for (std::int64_t other = 1; other <= k; ++other) {
                if (other != c) d.justifications.push_back({{clrd(v, other), false}});
            }
            d.consequent.push_back({clrd(v, c), true});
            t.defaults.push_back(std::move(d));
        }
    }
    if (spec.killing_defaults) {
        for (const auto& [x, y] : g.edges) {
            for (std::int64_t c = 1; c <= k; ++c) {
                dl::Default d;
                d.prerequisite = {{clrd(x, c), true}, {clrd(y, c), true}};
                d.justifications.push_back({{"f", false}});
                d.consequent.push_back({"f", true});
                t.defaults.push_back(std::move(d));
            }
        }
    }
    return t;
}

std::variant<Program, dl::DefaultTheory> encode(const BenchmarkSpec& spec) {
    if (spec.target == Target::DefaultTheory) return encode_default_theory(spec);
    return encode_program(spec);
}

namespace {

/// Adjacency matrix; undirected graphs get both directions.
std::vector<std::vector<char>> adjacency(const Graph& g) {
    std::vector<std::vector<char>> adj(g.n + 1, std::vector<char>(g.n + 1, 0));
    for (const auto& [u, v] : g.edges) {
        adj[u][v] = 1;
        if (!g.directed) adj[v][u] = 1;
    }
    return adj;
}

std::uint64_t ipow(std::uint64_t base, Vertex e) {
    std::uint64_t r = 1;
    for (Vertex i = 0; i < e; ++i) r *= base;
    return r;
}

/// Number of solutions within index `i`, so counting is a sum over [0, range).
struct Counter {
    std::uint64_t range = 0;
    std::function<std::uint64_t(std::uint64_t)> count;
};

Counter make_counter(const BenchmarkSpec& spec) {
    check_spec(spec);
    const Graph& g = spec.graph;
    if (g.n > bruteforce_vertex_limit) {
        throw LimitExceeded(std::to_string(g.n) + " vertices exceed the brute-force limit of " +
                            std::to_string(bruteforce_vertex_limit));
    }
    const Vertex n = g.n;
    auto adj = std::make_shared<std::vector<std::vector<char>>>(adjacency(g));
    auto in = [](std::uint64_t mask, Vertex v) { return ((mask >> (v - 1)) & 1) != 0; };
    auto size = [](std::uint64_t mask) { return static_cast<std::int64_t>(__builtin_popcountll(mask)); };

    switch (spec.problem) {
        case Problem::Coloring: {
            const auto k = static_cast<std::uint64_t>(*spec.k);
            return {ipow(k, n), [g, k](std::uint64_t code) -> std::uint64_t {
                        std::array<std::uint64_t, bruteforce_vertex_limit + 1> color{};
                        for (Vertex v = 1; v <= g.n; ++v, code /= k) color[v] = code % k;
                        for (const auto& [u, v] : g.edges)
                            if (color[u] == color[v]) return 0;
                        return 1;
                    }};
        }
        case Problem::Kernel:
            return {std::uint64_t{1} << n, [adj, n, in](std::uint64_t mask) -> std::uint64_t {
                        for (Vertex u = 1; u <= n; ++u) {
                            bool into = false;
                            for (Vertex v = 1; v <= n; ++v) {
                                if (!(*adj)[u][v] || !in(mask, v)) continue;
                                if (in(mask, u)) return 0;  // arc inside the set
                                into = true;
                            }
                            if (!in(mask, u) && !into) return 0;
                        }
                        return 1;
                    }};
        case Problem::IndependentSet: {
            const std::int64_t k = *spec.k;
            return {std::uint64_t{1} << n, [g, k, in, size](std::uint64_t mask) -> std::uint64_t {
                        if (size(mask) < k) return 0;
                        for (const auto& [u, v] : g.edges)
                            if (in(mask, u) && in(mask, v)) return 0;
                        return 1;
                    }};
        }
        case Problem::VertexCover: {
            const std::int64_t k = *spec.k;
            return {std::uint64_t{1} << n, [g, k, in, size](std::uint64_t mask) -> std::uint64_t {
                        if (size(mask) > k) return 0;
                        for (const auto& [u, v] : g.edges)
                            if (!in(mask, u) && !in(mask, v)) return 0;
                        return 1;
                    }};
        }
        case Problem::Hamiltonian:
            // index = second vertex of the traversal 1 -> second -> ... -> 1
            return {std::uint64_t{n} + 1, [adj, n](std::uint64_t second) -> std::uint64_t {
                        if (second < 2 || !(*adj)[1][second]) return 0;
                        std::vector<char> used(n + 1, 0);
                        used[1] = used[second] = 1;
                        std::function<std::uint64_t(Vertex, Vertex)> walk = [&](Vertex at,
                                                                                 Vertex depth) -> std::uint64_t {
                            if (depth == n) return (*adj)[at][1] ? 1 : 0;
                            std::uint64_t total = 0;
                            for (Vertex v = 2; v <= n; ++v) {
                                if (used[v] || !(*adj)[at][v]) continue;
                                used[v] = 1;
                                total += walk(v, depth + 1);
                                used[v] = 0;
                            }
                            return total;
                        };
                        return walk(static_cast<Vertex>(second), 2);
                    }};
    }
    return {};
}

}  // namespace

std::uint64_t count_solutions_bruteforce(const BenchmarkSpec& spec) {
    const Counter c = make_counter(spec);
    const auto range = static_cast<std::int64_t>(c.range);
    std::uint64_t total = 0;
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : total)
    for (std::int64_t i = 0; i < range; ++i) total += c.count(static_cast<std::uint64_t>(i));
    return total;
}

std::uint64_t count_solutions_bruteforce_serial(const BenchmarkSpec& spec) {
    const Counter c = make_counter(spec);
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i < c.range; ++i) total += c.count(i);
    return total;
}

}  // namespace microasp
