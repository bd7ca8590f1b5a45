#include "microasp/core.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace microasp {

Term Term::constant(std::string name) {
    Term t;
    t.kind_ = Kind::Constant;
    t.name_ = std::move(name);
    return t;
}

Term Term::integer(std::int64_t value) {
    Term t;
    t.kind_ = Kind::Integer;
    t.value_ = value;
    return t;
}

Term Term::variable(std::string name) {
    Term t;
    t.kind_ = Kind::Variable;
    t.name_ = std::move(name);
    return t;
}

std::string Term::str() const {
    return kind_ == Kind::Integer ? std::to_string(value_) : name_;
}

std::strong_ordering Term::operator<=>(const Term& other) const {
    if (kind_ != other.kind_) {
        return kind_ <=> other.kind_;
    }
    if (kind_ == Kind::Integer) {
        return value_ <=> other.value_;
    }
    return name_.compare(other.name_) <=> 0;
}

bool Atom::is_ground() const {
    return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_ground(); });
}

std::string Atom::str() const {
    std::string out = predicate;
    if (!args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i) out += ',';
            out += args[i].str();
        }
        out += ')';
    }
    return out;
}

const char* to_string(CompareOp op) noexcept {
    switch (op) {
        case CompareOp::Eq: return "=";
        case CompareOp::Ne: return "!=";
        case CompareOp::Lt: return "<";
        case CompareOp::Le: return "<=";
    }
    return "?";
}

bool Comparison::holds() const {
    switch (op) {
        case CompareOp::Eq: return lhs == rhs;
        case CompareOp::Ne: return lhs != rhs;
        case CompareOp::Lt: return lhs < rhs;
        case CompareOp::Le: return lhs <= rhs;
    }
    return false;
}

namespace {

template <typename F>
void for_each_term(const Rule& rule, F&& f) {
    for (const auto& a : rule.head)
        for (const auto& t : a.args) f(t);
    for (const auto& l : rule.body)
        for (const auto& t : l.atom.args) f(t);
    for (const auto& c : rule.cards)
        for (const auto& a : c.elements)
            for (const auto& t : a.args) f(t);
    for (const auto& b : rule.builtins) {
        f(b.lhs);
        f(b.rhs);
    }
}

}  // namespace

bool Rule::is_ground() const {
    bool ground = true;
    for_each_term(*this, [&](const Term& t) { ground = ground && t.is_ground(); });
    return ground;
}

std::vector<std::string> Rule::variables() const {
    std::vector<std::string> vars;
    for_each_term(*this, [&](const Term& t) {
        if (t.is_variable() && std::find(vars.begin(), vars.end(), t.name()) == vars.end()) {
            vars.push_back(t.name());
        }
    });
    return vars;
}

std::string Diagnostic::str() const {
    std::string out = severity == Severity::Error ? "error: " : "warning: ";
    out += where == Where::Fact ? "fact " : "rule ";
    out += std::to_string(index + 1);
    out += ": ";
    out += message;
    return out;
}

std::vector<Diagnostic> validate(const Program& program) {
    std::vector<Diagnostic> out;
    std::map<std::string, std::size_t> arity;

    auto check_arity = [&](const Atom& a, Diagnostic::Where where, std::size_t index) {
        auto [it, inserted] = arity.emplace(a.predicate, a.arity());
        if (!inserted && it->second != a.arity()) {
            out.push_back({Severity::Error, where, index, "arity mismatch " + a.predicate});
        }
    };

    for (std::size_t i = 0; i < program.facts.size(); ++i) {
        const Atom& f = program.facts[i];
        check_arity(f, Diagnostic::Where::Fact, i);
        if (!f.is_ground()) {
            out.push_back({Severity::Error, Diagnostic::Where::Fact, i, "fact is not ground"});
        }
    }

    for (std::size_t i = 0; i < program.rules.size(); ++i) {
        const Rule& r = program.rules[i];
        const auto where = Diagnostic::Where::Rule;

        if (r.kind == HeadKind::Normal && r.head.size() != 1) {
            out.push_back({Severity::Error, where, i, "normal rule needs exactly one head atom"});
        }
        if (r.kind == HeadKind::Constraint && !r.head.empty()) {
            out.push_back({Severity::Error, where, i, "constraint has head atoms"});
        }
        if (r.kind == HeadKind::Choice && r.head.empty()) {
            out.push_back({Severity::Error, where, i, "choice rule without head atoms"});
        }

        for (const auto& a : r.head) check_arity(a, where, i);
        for (const auto& l : r.body) check_arity(l.atom, where, i);
        for (const auto& c : r.cards) {
            for (const auto& a : c.elements) check_arity(a, where, i);
        }

        std::set<std::string> bound;
        for (const auto& l : r.body) {
            if (l.negated) continue;
            for (const auto& t : l.atom.args) {
                if (t.is_variable()) bound.insert(t.name());
            }
        }
        for (const auto& v : r.variables()) {
            if (!bound.count(v)) {
                out.push_back({Severity::Error, where, i, "unsafe variable " + v});
            }
        }

        for (const auto& c : r.cards) {
            if (c.lower < 0) {
                out.push_back({Severity::Error, where, i, "negative cardinality lower bound"});
            }
            if (c.upper && *c.upper < c.lower) {
                out.push_back({Severity::Error, where, i, "cardinality lower bound exceeds upper bound"});
            }
            if (c.elements.empty()) {
                out.push_back({Severity::Error, where, i, "empty cardinality literal"});
            }
            std::set<Atom> seen;
            bool dup = false;
            for (const auto& a : c.elements) dup = !seen.insert(a).second || dup;
            if (dup) {
                out.push_back({Severity::Error, where, i, "duplicate cardinality element"});
            }
            if (static_cast<std::size_t>(std::max<std::int64_t>(c.lower, 0)) > c.elements.size()) {
                out.push_back({Severity::Warning, where, i,
                               "unsatisfiable cardinality bound " + std::to_string(c.lower) + " > " +
                                   std::to_string(c.elements.size()) + " elements"});
            }
        }
    }
    return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

}  // namespace microasp

std::size_t std::hash<microasp::Term>::operator()(const microasp::Term& t) const noexcept {
    std::size_t h = static_cast<std::size_t>(t.kind());
    if (t.kind() == microasp::Term::Kind::Integer) {
        h ^= std::hash<std::int64_t>{}(t.value()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    } else {
        h ^= std::hash<std::string>{}(t.name()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

std::size_t std::hash<microasp::Atom>::operator()(const microasp::Atom& a) const noexcept {
    std::size_t h = std::hash<std::string>{}(a.predicate);
    for (const auto& t : a.args) {
        h ^= std::hash<microasp::Term>{}(t) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}
