#pragma once

#include "microasp/core.hpp"
#include "microasp/ground_program.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace microasp {

/// Over-approximated extension of one predicate.
struct DomainRelation {
    std::string predicate;
    std::size_t arity = 0;
    std::vector<std::vector<Term>> tuples;  // sorted
};

struct GroundOptions {
    /// Drop `not a` for underivable a, prune cardinality elements outside the
    /// domains and remove instances whose body can never hold.
    bool simplify = true;
};

/// Least fixpoint of the program read positively: negative literals and
/// cardinality literals are assumed satisfiable, choice heads derivable.
/// Computed semi-naively. Sorted by predicate name.
std::vector<DomainRelation> compute_domains(const Program& program);

/// Instantiates `program` with substitutions drawn from the computed domains.
/// Stable models coincide with those of herbrand_instantiation(program).
/// Throws ValidationError when validate() reports errors.
GroundProgram ground(const Program& program, const GroundOptions& options = {});

struct GroundStats {
    std::size_t atoms = 0;
    std::size_t rules = 0;
    std::size_t body_literals = 0;  // positive + negative + cardinality literals

    bool operator==(const GroundStats&) const = default;
};

GroundStats ground_stats(const GroundProgram& gp);

/// `atoms=<n> rules=<m> bodyliterals=<k>`
std::string to_string(const GroundStats& stats);

}  // namespace microasp
