#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace microasp {

/// A function-free term: a constant, an integer or a variable.
class Term {
public:
    enum class Kind : std::uint8_t { Integer, Constant, Variable };

    static Term constant(std::string name);
    static Term integer(std::int64_t value);
    static Term variable(std::string name);

    Kind kind() const noexcept { return kind_; }
    bool is_variable() const noexcept { return kind_ == Kind::Variable; }
    bool is_ground() const noexcept { return kind_ != Kind::Variable; }
    const std::string& name() const noexcept { return name_; }
    std::int64_t value() const noexcept { return value_; }

    std::string str() const;

    bool operator==(const Term&) const = default;

    // Total order on ground terms: integers numerically, then constants
    // lexicographically. Variables sort last by name.
    std::strong_ordering operator<=>(const Term& other) const;

private:
    Kind kind_ = Kind::Constant;
    std::string name_;
    std::int64_t value_ = 0;
};

struct Atom {
    std::string predicate;
    std::vector<Term> args;

    std::size_t arity() const noexcept { return args.size(); }
    bool is_ground() const;
    std::string str() const;

    bool operator==(const Atom&) const = default;
    auto operator<=>(const Atom&) const = default;
};

/// Body literal with optional default negation.
struct Literal {
    Atom atom;
    bool negated = false;

    bool operator==(const Literal&) const = default;
};

/// `lower { e1; ...; en } upper` over positive atoms.
struct CardinalityLiteral {
    std::int64_t lower = 0;
    std::optional<std::int64_t> upper;  // nullopt = unbounded
    std::vector<Atom> elements;

    bool operator==(const CardinalityLiteral&) const = default;
};

enum class CompareOp : std::uint8_t { Eq, Ne, Lt, Le };

const char* to_string(CompareOp op) noexcept;

struct Comparison {
    Term lhs;
    CompareOp op = CompareOp::Eq;
    Term rhs;

    /// Both sides must be ground.
    bool holds() const;

    bool operator==(const Comparison&) const = default;
};

enum class HeadKind : std::uint8_t { Normal, Constraint, Choice };

struct Rule {
    HeadKind kind = HeadKind::Normal;
    std::vector<Atom> head;
    std::vector<Literal> body;
    std::vector<CardinalityLiteral> cards;
    std::vector<Comparison> builtins;

    bool is_ground() const;
    /// Names of variables in first-occurrence order (head, body, cards, builtins).
    std::vector<std::string> variables() const;

    bool operator==(const Rule&) const = default;
};

/// Rules plus the extensional database.
struct Program {
    std::vector<Rule> rules;
    std::vector<Atom> facts;

    bool operator==(const Program&) const = default;
};

enum class Severity : std::uint8_t { Error, Warning };

struct Diagnostic {
    enum class Where : std::uint8_t { Fact, Rule };

    Severity severity = Severity::Error;
    Where where = Where::Rule;
    std::size_t index = 0;  // 0-based index into facts or rules
    std::string message;

    std::string str() const;
};

/// Safety, arity consistency and cardinality bounds. Warnings do not block grounding.
std::vector<Diagnostic> validate(const Program& program);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

}  // namespace microasp

template <>
struct std::hash<microasp::Term> {
    std::size_t operator()(const microasp::Term& t) const noexcept;
};

template <>
struct std::hash<microasp::Atom> {
    std::size_t operator()(const microasp::Atom& a) const noexcept;
};
