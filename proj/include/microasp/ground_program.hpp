#pragma once

#include "microasp/core.hpp"
#include "microasp/error.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace microasp {

/// Dense 1-based atom identifier. 0 is never a valid id.
using AtomId = std::uint32_t;

/// Bijection between ground atoms and AtomIds, numbered in insertion order.
class AtomTable {
public:
    AtomId intern(const Atom& atom);
    std::optional<AtomId> find(const Atom& atom) const;
    const Atom& atom(AtomId id) const { return atoms_.at(id - 1); }
    const std::string& name(AtomId id) const { return names_.at(id - 1); }
    std::size_t size() const noexcept { return atoms_.size(); }
    bool contains(AtomId id) const noexcept { return id >= 1 && id <= atoms_.size(); }

private:
    std::vector<Atom> atoms_;
    std::vector<std::string> names_;
    std::unordered_map<Atom, AtomId> index_;
};

struct GroundCard {
    std::int64_t lower = 0;
    std::optional<std::int64_t> upper;
    std::vector<AtomId> elements;

    bool operator==(const GroundCard&) const = default;
};

struct GroundRule {
    HeadKind kind = HeadKind::Normal;
    std::vector<AtomId> head;
    std::vector<AtomId> pos;
    std::vector<AtomId> neg;
    std::vector<GroundCard> cards;

    bool operator==(const GroundRule&) const = default;
};

struct GroundProgram {
    AtomTable atoms;
    std::vector<GroundRule> rules;

    std::size_t atom_count() const noexcept { return atoms.size(); }
    /// True when every rule is normal or a constraint and no rule has a cardinality literal.
    bool is_normal() const;
    /// Turns the ground program back into a (ground) Program value.
    Program to_program() const;
};

/// Naive full instantiation over every constant and integer of the program.
/// Facts come first as bodiless normal rules. Throws ValidationError if unsafe.
GroundProgram herbrand_instantiation(const Program& program);

class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Diagnostic> diagnostics);
    const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

}  // namespace microasp
