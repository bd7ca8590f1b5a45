#pragma once

// Reference semantics for ground programs. Everything else is tested against this.

#include "microasp/ground_program.hpp"
#include "microasp/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace microasp {

/// Monotone lower-bound body: at least `lower` of `elements` hold.
struct LowerBound {
    std::int64_t lower = 0;
    std::vector<AtomId> elements;

    bool operator==(const LowerBound&) const = default;
};

struct PositiveRule {
    AtomId head = 0;
    std::vector<AtomId> body;
    std::vector<LowerBound> cards;

    bool operator==(const PositiveRule&) const = default;
};

struct PositiveProgram {
    std::size_t atom_count = 0;
    std::vector<PositiveRule> rules;
};

/// Gelfond-Lifschitz reduct extended to choice rules and cardinality bodies.
/// Constraints are left out; is_stable checks them separately.
PositiveProgram reduct(const GroundProgram& gp, const Model& candidate);

/// Least model by counter propagation, linear in the program size.
Model least_model(const PositiveProgram& pp);

bool is_stable(const GroundProgram& gp, const Model& candidate);

inline constexpr std::size_t default_oracle_limit = 20;

/// Every stable model by testing all 2^n subsets, in canonical order.
/// Throws LimitExceeded when the atom count exceeds `atom_limit`.
/// Subsets are split across OpenMP threads.
ModelSet enumerate_bruteforce(const GroundProgram& gp, std::size_t atom_limit = default_oracle_limit);

/// Single-threaded reference calling is_stable on every subset.
ModelSet enumerate_bruteforce_serial(const GroundProgram& gp, std::size_t atom_limit = default_oracle_limit);

/// Signed atom: +id for the atom, -id for its negation.
using SignedAtom = std::int32_t;

/// Disjunction of conjunctions of literals; no disjuncts means false,
/// an empty conjunction means true.
struct CompletionClause {
    std::vector<std::vector<SignedAtom>> disjuncts;

    bool holds(const Interpretation& in) const;
};

struct CompletionFormula {
    std::size_t atom_count = 0;
    std::vector<CompletionClause> clauses;

    bool satisfied_by(const Interpretation& in) const;
};

/// Clark completion of a normal program. Throws UnsupportedFeature for
/// choice rules or cardinality literals.
CompletionFormula clark_completion(const GroundProgram& gp);

/// Models of the completion by truth table (parallel), canonical order.
ModelSet supported_models(const CompletionFormula& formula, std::size_t atom_limit = 18);
ModelSet supported_models_serial(const CompletionFormula& formula, std::size_t atom_limit = 18);

std::string to_string(const CompletionFormula& formula, const AtomTable& atoms);

/// Positive dependency graph (head to positive body atoms and cardinality
/// elements) is acyclic.
bool is_tight(const GroundProgram& gp);

}  // namespace microasp
