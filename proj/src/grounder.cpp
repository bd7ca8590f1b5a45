#include "microasp/grounder.hpp"

#include "instantiate.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <unordered_map>
#include <unordered_set>

namespace microasp {

namespace {

using Tuple = std::vector<Term>;

inline void hash_mix(std::size_t& h, std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); }

struct TupleHash {
    std::size_t operator()(const Tuple& t) const noexcept {
        std::size_t h = t.size();
        for (const auto& x : t) hash_mix(h, std::hash<Term>{}(x));
        return h;
    }
};

struct GroundRuleHash {
    std::size_t operator()(const GroundRule& r) const noexcept {
        std::size_t h = static_cast<std::size_t>(r.kind);
        auto ids = [&h](const std::vector<AtomId>& v) {
            hash_mix(h, v.size());
            for (AtomId a : v) hash_mix(h, a);
        };
        ids(r.head);
        ids(r.pos);
        ids(r.neg);
        for (const auto& c : r.cards) {
            hash_mix(h, static_cast<std::size_t>(c.lower));
            hash_mix(h, c.upper ? static_cast<std::size_t>(*c.upper) : ~std::size_t{0});
            ids(c.elements);
        }
        return h;
    }
};

/// Append-only tuple store with per-position hash indexes.
class Relation {
public:
    explicit Relation(std::size_t arity) : index_(arity) {}

    bool insert(const Tuple& t) {
        if (!set_.insert(t).second) return false;
        const auto id = static_cast<std::uint32_t>(tuples_.size());
        tuples_.push_back(t);
        for (std::size_t p = 0; p < t.size(); ++p) index_[p][t[p]].push_back(id);
        return true;
    }

    bool contains(const Tuple& t) const { return set_.count(t) != 0; }
    std::size_t size() const noexcept { return tuples_.size(); }
    const Tuple& operator[](std::size_t i) const { return tuples_[i]; }

    const std::vector<std::uint32_t>* lookup(std::size_t pos, const Term& value) const {
        auto it = index_[pos].find(value);
        return it == index_[pos].end() ? nullptr : &it->second;
    }

    // semi-naive markers: [0, old_end) old, [old_end, delta_end) delta
    std::size_t old_end = 0;
    std::size_t delta_end = 0;

private:
    std::vector<Tuple> tuples_;
    std::unordered_set<Tuple, TupleHash> set_;
    std::vector<std::unordered_map<Term, std::vector<std::uint32_t>>> index_;
};

class Database {
public:
    Relation& relation(const std::string& pred, std::size_t arity) {
        auto it = rels_.find(pred);
        if (it == rels_.end()) it = rels_.emplace(pred, Relation(arity)).first;
        return it->second;
    }

    const Relation* find(const std::string& pred) const {
        auto it = rels_.find(pred);
        return it == rels_.end() ? nullptr : &it->second;
    }

    bool contains(const Atom& a) const {
        const Relation* r = find(a.predicate);
        return r && r->contains(a.args);
    }

    std::map<std::string, Relation>& relations() { return rels_; }

private:
    std::map<std::string, Relation> rels_;
};

struct Slot {
    int var = -1;  // -1: constant
    Term constant;
};

struct Pattern {
    std::string predicate;
    std::vector<Slot> slots;
};

struct CompiledCmp {
    Slot lhs;
    CompareOp op;
    Slot rhs;
};

struct Binding {
    std::vector<Term> value;
    std::vector<char> bound;

    explicit Binding(std::size_t n) : value(n), bound(n, 0) {}

    const Term* get(const Slot& s) const {
        if (s.var < 0) return &s.constant;
        return bound[s.var] ? &value[s.var] : nullptr;
    }
};

/// Rule with variables mapped to dense slots.
class CompiledRule {
public:
    explicit CompiledRule(const Rule& r) : rule(&r), vars(r.variables()) {
        for (const auto& l : r.body) {
            if (!l.negated) pos.push_back(pattern(l.atom));
        }
        for (const auto& b : r.builtins) builtins.push_back({slot(b.lhs), b.op, slot(b.rhs)});
    }

    detail::Binding to_binding(const Binding& b) const {
        detail::Binding out;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (b.bound[i]) out.emplace(vars[i], b.value[i]);
        }
        return out;
    }

    /// Join order starting at `first` (or best-first when npos), greedily
    /// preferring literals with the most bound arguments.
    std::vector<std::size_t> order(std::size_t first) const {
        std::vector<std::size_t> out;
        std::vector<char> used(pos.size(), 0), bound(vars.size(), 0);
        auto take = [&](std::size_t i) {
            out.push_back(i);
            used[i] = 1;
            for (const auto& s : pos[i].slots)
                if (s.var >= 0) bound[s.var] = 1;
        };
        if (first < pos.size()) take(first);
        while (out.size() < pos.size()) {
            std::size_t best = pos.size();
            int best_score = -1;
            for (std::size_t i = 0; i < pos.size(); ++i) {
                if (used[i]) continue;
                int score = 0;
                for (const auto& s : pos[i].slots) score += (s.var < 0 || bound[s.var]) ? 1 : 0;
                if (score > best_score) {
                    best_score = score;
                    best = i;
                }
            }
            take(best);
        }
        return out;
    }

    const Rule* rule;
    std::vector<std::string> vars;
    std::vector<Pattern> pos;
    std::vector<CompiledCmp> builtins;

private:
    Slot slot(const Term& t) const {
        if (!t.is_variable()) return {-1, t};
        auto it = std::find(vars.begin(), vars.end(), t.name());
        return {static_cast<int>(it - vars.begin()), {}};
    }

    Pattern pattern(const Atom& a) const {
        Pattern p{a.predicate, {}};
        for (const auto& t : a.args) p.slots.push_back(slot(t));
        return p;
    }
};

struct Range {
    std::size_t lo = 0;
    std::size_t hi = 0;
};

class Joiner {
public:
    Joiner(const Database& db, const CompiledRule& rule, std::vector<std::size_t> order, std::vector<Range> ranges)
        : db_(db), rule_(rule), order_(std::move(order)), ranges_(std::move(ranges)), binding_(rule.vars.size()) {}

    template <typename Emit>
    void run(Emit&& emit) {
        step(0, emit);
    }

private:
    bool builtins_ok() const {
        for (const auto& c : rule_.builtins) {
            const Term* l = binding_.get(c.lhs);
            const Term* r = binding_.get(c.rhs);
            if (l && r && !Comparison{*l, c.op, *r}.holds()) return false;
        }
        return true;
    }

    template <typename Emit>
    void step(std::size_t depth, Emit& emit) {
        if (!builtins_ok()) return;
        if (depth == order_.size()) {
            emit(binding_);
            return;
        }
        const std::size_t li = order_[depth];
        const Pattern& pat = rule_.pos[li];
        const Relation* rel = db_.find(pat.predicate);
        if (!rel) return;
        const Range range = ranges_[li];

        const std::vector<std::uint32_t>* candidates = nullptr;
        for (std::size_t p = 0; p < pat.slots.size(); ++p) {
            if (const Term* t = binding_.get(pat.slots[p])) {
                candidates = rel->lookup(p, *t);
                if (!candidates) return;
                break;
            }
        }

        if (candidates) {
            auto it = std::lower_bound(candidates->begin(), candidates->end(), range.lo);
            for (; it != candidates->end() && *it < range.hi; ++it) match(*rel, *it, pat, depth, emit);
        } else {
            for (std::size_t id = range.lo; id < range.hi; ++id) match(*rel, id, pat, depth, emit);
        }
    }

    template <typename Emit>
    void match(const Relation& rel, std::size_t id, const Pattern& pat, std::size_t depth, Emit& emit) {
        const Tuple& tuple = rel[id];
        std::vector<int> newly;
        bool ok = true;
        for (std::size_t p = 0; p < pat.slots.size() && ok; ++p) {
            const Slot& s = pat.slots[p];
            if (const Term* t = binding_.get(s)) {
                ok = *t == tuple[p];
            } else {
                binding_.value[s.var] = tuple[p];
                binding_.bound[s.var] = 1;
                newly.push_back(s.var);
            }
        }
        if (ok) step(depth + 1, emit);
        for (int v : newly) binding_.bound[v] = 0;
    }

    const Database& db_;
    const CompiledRule& rule_;
    std::vector<std::size_t> order_;
    std::vector<Range> ranges_;
    Binding binding_;
};

void check_valid(const Program& program) {
    auto diagnostics = validate(program);
    if (has_errors(diagnostics)) throw ValidationError(std::move(diagnostics));
}

Database domain_fixpoint(const Program& program, const std::vector<CompiledRule>& compiled) {
    Database db;
    for (const auto& f : program.facts) db.relation(f.predicate, f.arity()).insert(f.args);
    for (const auto& r : program.rules) {
        for (const auto& h : r.head) db.relation(h.predicate, h.arity());
    }
    for (auto& [_, rel] : db.relations()) {
        rel.old_end = 0;
        rel.delta_end = rel.size();
    }

    for (bool first_round = true;; first_round = false) {
        std::vector<Atom> derived;
        for (const auto& cr : compiled) {
            if (cr.rule->kind == HeadKind::Constraint) continue;
            auto emit = [&](const Binding& b) {
                const auto sub = cr.to_binding(b);
                for (const auto& h : cr.rule->head) derived.push_back(detail::apply(h, sub));
            };
            if (cr.pos.empty()) {
                if (first_round) Joiner(db, cr, {}, {}).run(emit);
                continue;
            }
            for (std::size_t i = 0; i < cr.pos.size(); ++i) {
                const Relation* delta = db.find(cr.pos[i].predicate);
                if (!delta || delta->old_end == delta->delta_end) continue;
                std::vector<Range> ranges(cr.pos.size());
                bool empty = false;
                for (std::size_t j = 0; j < cr.pos.size(); ++j) {
                    const Relation* rel = db.find(cr.pos[j].predicate);
                    if (!rel) {
                        empty = true;
                        break;
                    }
                    if (j < i) ranges[j] = {0, rel->old_end};
                    else if (j == i) ranges[j] = {rel->old_end, rel->delta_end};
                    else ranges[j] = {0, rel->delta_end};
                }
                if (!empty) Joiner(db, cr, cr.order(i), std::move(ranges)).run(emit);
            }
        }

        for (const auto& a : derived) db.relation(a.predicate, a.arity()).insert(a.args);
        bool grew = false;
        for (auto& [_, rel] : db.relations()) {
            rel.old_end = rel.delta_end;
            rel.delta_end = rel.size();
            grew = grew || rel.old_end != rel.delta_end;
        }
        if (!grew) break;
    }
    return db;
}

}  // namespace

std::vector<DomainRelation> compute_domains(const Program& program) {
    check_valid(program);
    std::vector<CompiledRule> compiled;
    compiled.reserve(program.rules.size());
    for (const auto& r : program.rules) compiled.emplace_back(r);
    Database db = domain_fixpoint(program, compiled);

    std::vector<DomainRelation> out;
    for (auto& [pred, rel] : db.relations()) {
        DomainRelation d{pred, 0, {}};
        for (std::size_t i = 0; i < rel.size(); ++i) d.tuples.push_back(rel[i]);
        if (!d.tuples.empty()) d.arity = d.tuples.front().size();
        std::sort(d.tuples.begin(), d.tuples.end());
        out.push_back(std::move(d));
    }
    return out;
}

GroundProgram ground(const Program& program, const GroundOptions& options) {
    check_valid(program);
    std::vector<CompiledRule> compiled;
    compiled.reserve(program.rules.size());
    for (const auto& r : program.rules) compiled.emplace_back(r);
    const Database db = domain_fixpoint(program, compiled);

    GroundProgram gp;
    std::unordered_set<GroundRule, GroundRuleHash> emitted;
    auto add = [&](GroundRule r) {
        if (emitted.insert(r).second) gp.rules.push_back(std::move(r));
    };

    for (const auto& f : program.facts) add({HeadKind::Normal, {gp.atoms.intern(f)}, {}, {}, {}});

    for (const auto& cr : compiled) {
        const Rule& rule = *cr.rule;
        std::vector<Range> ranges;
        bool empty = false;
        for (const auto& p : cr.pos) {
            const Relation* rel = db.find(p.predicate);
            if (!rel) {
                empty = true;
                break;
            }
            ranges.push_back({0, rel->size()});
        }
        if (empty) continue;

        Joiner(db, cr, cr.order(cr.pos.size()), std::move(ranges)).run([&](const Binding& b) {
            Rule inst = detail::apply(rule, cr.to_binding(b));
            inst.builtins.clear();
            if (options.simplify) {
                std::erase_if(inst.body, [&](const Literal& l) { return l.negated && !db.contains(l.atom); });
                std::vector<CardinalityLiteral> cards;
                for (auto& c : inst.cards) {
                    std::vector<Atom> kept;
                    for (auto& a : c.elements) {
                        if (db.contains(a) && std::find(kept.begin(), kept.end(), a) == kept.end()) {
                            kept.push_back(std::move(a));
                        }
                    }
                    c.elements = std::move(kept);
                    const auto n = static_cast<std::int64_t>(c.elements.size());
                    if (n < c.lower) return;  // body can never hold
                    if (c.lower <= 0 && (!c.upper || n <= *c.upper)) continue;  // always holds
                    cards.push_back(std::move(c));
                }
                inst.cards = std::move(cards);
            }
            add(detail::to_ground_rule(inst, gp.atoms));
        });
    }
    return gp;
}

GroundStats ground_stats(const GroundProgram& gp) {
    GroundStats s{gp.atom_count(), gp.rules.size(), 0};
    for (const auto& r : gp.rules) s.body_literals += r.pos.size() + r.neg.size() + r.cards.size();
    return s;
}

std::string to_string(const GroundStats& stats) {
    return "atoms=" + std::to_string(stats.atoms) + " rules=" + std::to_string(stats.rules) +
           " bodyliterals=" + std::to_string(stats.body_literals);
}

}  // namespace microasp
