#include "microasp/ground_program.hpp"

#include "instantiate.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace microasp {

AtomId AtomTable::intern(const Atom& atom) {
    auto it = index_.find(atom);
    if (it != index_.end()) return it->second;
    atoms_.push_back(atom);
    names_.push_back(atom.str());
    const auto id = static_cast<AtomId>(atoms_.size());
    index_.emplace(atom, id);
    return id;
}

std::optional<AtomId> AtomTable::find(const Atom& atom) const {
    auto it = index_.find(atom);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool GroundProgram::is_normal() const {
    return std::all_of(rules.begin(), rules.end(), [](const GroundRule& r) {
        return r.kind != HeadKind::Choice && r.cards.empty();
    });
}

Program GroundProgram::to_program() const {
    Program p;
    for (const auto& r : rules) {
        if (r.kind == HeadKind::Normal && r.pos.empty() && r.neg.empty() && r.cards.empty()) {
            p.facts.push_back(atoms.atom(r.head.front()));
            continue;
        }
        Rule out;
        out.kind = r.kind;
        for (AtomId h : r.head) out.head.push_back(atoms.atom(h));
        for (AtomId a : r.pos) out.body.push_back({atoms.atom(a), false});
        for (AtomId a : r.neg) out.body.push_back({atoms.atom(a), true});
        for (const auto& c : r.cards) {
            CardinalityLiteral card{c.lower, c.upper, {}};
            for (AtomId a : c.elements) card.elements.push_back(atoms.atom(a));
            out.cards.push_back(std::move(card));
        }
        p.rules.push_back(std::move(out));
    }
    return p;
}

namespace {

std::string first_error(const std::vector<Diagnostic>& diagnostics) {
    for (const auto& d : diagnostics) {
        if (d.severity == Severity::Error) return d.str();
    }
    return "invalid program";
}

}  // namespace

ValidationError::ValidationError(std::vector<Diagnostic> diagnostics)
    : Error(first_error(diagnostics)), diagnostics_(std::move(diagnostics)) {}

namespace detail {

Term apply(const Term& t, const Binding& b) {
    if (!t.is_variable()) return t;
    auto it = b.find(t.name());
    return it == b.end() ? t : it->second;
}

Atom apply(const Atom& a, const Binding& b) {
    Atom out{a.predicate, {}};
    out.args.reserve(a.args.size());
    for (const auto& t : a.args) out.args.push_back(apply(t, b));
    return out;
}

Rule apply(const Rule& r, const Binding& b) {
    Rule out;
    out.kind = r.kind;
    for (const auto& a : r.head) out.head.push_back(apply(a, b));
    for (const auto& l : r.body) out.body.push_back({apply(l.atom, b), l.negated});
    for (const auto& c : r.cards) {
        CardinalityLiteral card{c.lower, c.upper, {}};
        for (const auto& a : c.elements) card.elements.push_back(apply(a, b));
        out.cards.push_back(std::move(card));
    }
    for (const auto& cmp : r.builtins) out.builtins.push_back({apply(cmp.lhs, b), cmp.op, apply(cmp.rhs, b)});
    return out;
}

bool builtins_hold(const Rule& r, const Binding& b) {
    for (const auto& cmp : r.builtins) {
        Comparison g{apply(cmp.lhs, b), cmp.op, apply(cmp.rhs, b)};
        if (g.lhs.is_ground() && g.rhs.is_ground() && !g.holds()) return false;
    }
    return true;
}

GroundRule to_ground_rule(const Rule& ground, AtomTable& atoms) {
    GroundRule out;
    out.kind = ground.kind;
    for (const auto& a : ground.head) out.head.push_back(atoms.intern(a));
    for (const auto& l : ground.body) {
        if (!l.negated) out.pos.push_back(atoms.intern(l.atom));
    }
    for (const auto& l : ground.body) {
        if (l.negated) out.neg.push_back(atoms.intern(l.atom));
    }
    for (const auto& c : ground.cards) {
        GroundCard card{c.lower, c.upper, {}};
        std::unordered_set<AtomId> seen;
        for (const auto& a : c.elements) {
            AtomId id = atoms.intern(a);
            if (seen.insert(id).second) card.elements.push_back(id);
        }
        out.cards.push_back(std::move(card));
    }
    return out;
}

}  // namespace detail

namespace {

void collect_terms(const Atom& a, std::set<Term>& universe) {
    for (const auto& t : a.args) {
        if (t.is_ground()) universe.insert(t);
    }
}

}  // namespace

GroundProgram herbrand_instantiation(const Program& program) {
    auto diagnostics = validate(program);
    if (has_errors(diagnostics)) throw ValidationError(std::move(diagnostics));

    std::set<Term> universe_set;
    for (const auto& f : program.facts) collect_terms(f, universe_set);
    for (const auto& r : program.rules) {
        for (const auto& a : r.head) collect_terms(a, universe_set);
        for (const auto& l : r.body) collect_terms(l.atom, universe_set);
        for (const auto& c : r.cards)
            for (const auto& a : c.elements) collect_terms(a, universe_set);
        for (const auto& b : r.builtins) {
            if (b.lhs.is_ground()) universe_set.insert(b.lhs);
            if (b.rhs.is_ground()) universe_set.insert(b.rhs);
        }
    }
    const std::vector<Term> universe(universe_set.begin(), universe_set.end());

    GroundProgram gp;
    std::unordered_set<Atom> seen_facts;
    for (const auto& f : program.facts) {
        if (!seen_facts.insert(f).second) continue;
        gp.rules.push_back({HeadKind::Normal, {gp.atoms.intern(f)}, {}, {}, {}});
    }

    for (const auto& rule : program.rules) {
        const auto vars = rule.variables();
        if (!vars.empty() && universe.empty()) continue;
        std::vector<std::size_t> choice(vars.size(), 0);
        detail::Binding binding;
        while (true) {
            for (std::size_t i = 0; i < vars.size(); ++i) binding[vars[i]] = universe[choice[i]];
            if (detail::builtins_hold(rule, binding)) {
                Rule inst = detail::apply(rule, binding);
                inst.builtins.clear();
                gp.rules.push_back(detail::to_ground_rule(inst, gp.atoms));
            }
            // odometer over universe^|vars|
            std::size_t pos = 0;
            while (pos < vars.size() && ++choice[pos] == universe.size()) choice[pos++] = 0;
            if (pos == vars.size()) break;
        }
    }
    return gp;
}

}  // namespace microasp
