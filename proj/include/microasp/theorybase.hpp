#pragma once

// Benchmark generator: deterministic graph families and graph-problem encodings.

#include "microasp/core.hpp"
#include "microasp/default_logic.hpp"
#include "microasp/graph.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace microasp {

/// Undirected: cycle(n) path(n) complete(n) grid(r,c) random(n,m,seed)
/// cyclechords(n,m,seed). Directed: dcycle dpath dcomplete dgrid drandom.
/// The id is the family text, e.g. "cycle(8)".
Graph make_graph(std::string_view family, const std::vector<std::uint64_t>& params);
/// Parses "family(p1,...,pk)" and calls the overload above.
Graph make_graph(std::string_view text);

/// 64-bit LCG with Knuth's MMIX constants; output is the high 32 bits.
class Lcg {
public:
    static constexpr std::uint64_t multiplier = 6364136223846793005ULL;
    static constexpr std::uint64_t increment = 1442695040888963407ULL;

    explicit Lcg(std::uint64_t seed) : state_(seed) {}
    std::uint32_t next() {
        state_ = state_ * multiplier + increment;
        return static_cast<std::uint32_t>(state_ >> 32);
    }
    /// Uniform-ish in [0, bound) by modulo reduction.
    std::uint32_t below(std::uint32_t bound) { return next() % bound; }

private:
    std::uint64_t state_;
};

enum class Problem { Coloring, Hamiltonian, Kernel, IndependentSet, VertexCover };
enum class Target { Program, DefaultTheory };

std::optional<Problem> parse_problem(std::string_view name);
const char* to_string(Problem p) noexcept;

struct BenchmarkSpec {
    Problem problem = Problem::Coloring;
    Graph graph;
    std::optional<std::int64_t> k;
    Target target = Target::Program;
    /// Coloring theory only: include the local(e,c) killing defaults.
    bool killing_defaults = true;
};

/// Throws InvalidArgument when the benchmark is inconsistent (missing k,
/// undirected kernel graph, hamiltonian on one vertex, ...).
void check_spec(const BenchmarkSpec& spec);

/// Generate-and-test program; vertices and colors are integers from 1.
Program encode_program(const BenchmarkSpec& spec);
/// Coloring: the color/local default theory. Kernel: program_to_defaults of
/// the ground kernel program. Other problems throw UnsupportedFeature.
dl::DefaultTheory encode_default_theory(const BenchmarkSpec& spec);
std::variant<Program, dl::DefaultTheory> encode(const BenchmarkSpec& spec);

/// Name of the solution predicate (clrd, in).
const char* solution_predicate(Problem p) noexcept;

inline constexpr Vertex bruteforce_vertex_limit = 12;

/// Counts solutions straight from the graph definitions. Hamiltonian cycles
/// are counted as directed traversals from vertex 1, so an undirected cycle
/// on n >= 3 vertices counts twice. Throws LimitExceeded above 12 vertices.
std::uint64_t count_solutions_bruteforce(const BenchmarkSpec& spec);
std::uint64_t count_solutions_bruteforce_serial(const BenchmarkSpec& spec);

}  // namespace microasp
