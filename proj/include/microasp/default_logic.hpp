#pragma once

// Propositional default logic restricted to conjunctions of literals.

#include "microasp/ground_program.hpp"

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace microasp::dl {

/// Literal with classical negation.
struct Lit {
    std::string atom;
    bool positive = true;

    Lit complement() const { return {atom, !positive}; }
    std::string str() const { return positive ? atom : "-" + atom; }

    bool operator==(const Lit&) const = default;
    auto operator<=>(const Lit&) const = default;
};

/// prerequisite : justification_1, ..., justification_m / consequent
/// Each component is a conjunction; an empty prerequisite means `true`.
struct Default {
    std::vector<Lit> prerequisite;
    std::vector<std::vector<Lit>> justifications;
    std::vector<Lit> consequent;

    bool operator==(const Default&) const = default;
};

struct DefaultTheory {
    std::vector<Default> defaults;  // D
    std::vector<Lit> facts;         // W

    bool operator==(const DefaultTheory&) const = default;
};

/// Deductively closed literal set. `inconsistent` marks the set of all formulas.
struct LitSet {
    bool inconsistent = false;
    std::vector<Lit> lits;  // sorted, empty when inconsistent

    bool contains(const Lit& l) const;
    bool operator==(const LitSet&) const = default;
};

struct Extension {
    LitSet literals;
    std::vector<std::size_t> generating;  // indices into D, ascending

    bool operator==(const Extension&) const = default;
};

struct ExtensionSet {
    std::vector<Extension> extensions;  // sorted by literal list
};

enum class QueryMode { Brave, Skeptical };

/// Least set containing W closed under the active defaults.
LitSet closure(const std::vector<Default>& defaults, const std::vector<Lit>& facts,
               const std::vector<std::size_t>& active);

/// Defaults applicable with respect to `e`: prerequisite in e and every
/// justification consistent with e.
std::vector<std::size_t> applicable(const DefaultTheory& theory, const LitSet& e);

/// Fixpoint test closure(D, W, applicable(E)) == E.
bool is_extension(const DefaultTheory& theory, const LitSet& e);

ExtensionSet extensions(const DefaultTheory& theory);

bool query(const DefaultTheory& theory, const Lit& lit, QueryMode mode);
bool query(const ExtensionSet& extensions, const Lit& lit, QueryMode mode);

/// Normal rules and constraints only; each constraint becomes a killing
/// default with its own fresh literal. Throws UnsupportedFeature otherwise.
DefaultTheory program_to_defaults(const GroundProgram& gp);

/// Text form accepted by parse_default_theory.
std::string to_string(const DefaultTheory& theory);
std::string to_string(const Default& d);

}  // namespace microasp::dl
