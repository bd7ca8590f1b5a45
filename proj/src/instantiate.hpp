#pragma once

// Substitution helpers shared by the naive instantiation and the grounder.

#include "microasp/core.hpp"
#include "microasp/ground_program.hpp"

#include <string>
#include <unordered_map>

namespace microasp::detail {

using Binding = std::unordered_map<std::string, Term>;

Term apply(const Term& t, const Binding& b);
Atom apply(const Atom& a, const Binding& b);
Rule apply(const Rule& r, const Binding& b);

/// Evaluates every builtin whose sides are ground under `b`; false if one fails.
bool builtins_hold(const Rule& r, const Binding& b);

/// Interns the atoms of a ground rule (head, positive body, negative body,
/// cardinality elements) and converts it. Duplicate cardinality elements are merged.
GroundRule to_ground_rule(const Rule& ground, AtomTable& atoms);

}  // namespace microasp::detail
