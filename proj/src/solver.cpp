#include "microasp/solver.hpp"

#include "microasp/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace microasp {

bool Assignment::assign(AtomId a, Value v, std::uint32_t level) {
    if (values_[a] == v) return true;
    if (values_[a] != Value::Unknown) return false;
    values_[a] = v;
    trail_.push_back({a, v, level});
    return true;
}

void Assignment::pop() {
    values_[trail_.back().atom] = Value::Unknown;
    trail_.pop_back();
}

Model Assignment::true_atoms() const {
    Model m;
    for (std::size_t a = 1; a < values_.size(); ++a) {
        if (values_[a] == Value::True) m.push_back(static_cast<AtomId>(a));
    }
    return m;
}

bool Assignment::consistent_with_trail() const {
    std::vector<Value> replay(values_.size(), Value::Unknown);
    for (const auto& e : trail_) {
        if (e.atom == 0 || e.atom >= replay.size() || replay[e.atom] != Value::Unknown) return false;
        replay[e.atom] = e.value;
    }
    return replay == values_;
}

const char* to_string(Heuristic h) noexcept {
    return h == Heuristic::Occurrence ? "occurrence" : "first-unassigned";
}

std::optional<Heuristic> parse_heuristic(const std::string& name) {
    if (name == "occurrence") return Heuristic::Occurrence;
    if (name == "first-unassigned") return Heuristic::FirstUnassigned;
    return std::nullopt;
}

namespace {

enum class Status : std::uint8_t { Unknown, True, False };

std::uint64_t mix(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-based propagation over a ground program.
///
/// Each rule keeps the number of body literals currently true and false;
/// each cardinality literal keeps the number of elements true and false,
/// and its derived status counts as one body literal. Each atom keeps the
/// number of supporting rules whose body is not false. Counter updates for
/// a trail entry are applied when the entry is processed and reverted when
/// it is undone, so counters always reflect the processed trail prefix.
class Propagator {
public:
    explicit Propagator(const GroundProgram& gp) : n_(gp.atom_count()), asg_(gp.atom_count()) {
        pos_occ_.resize(n_ + 1);
        neg_occ_.resize(n_ + 1);
        head_occ_.resize(n_ + 1);
        card_occ_.resize(n_ + 1);
        for (const auto& r : gp.rules) {
            const auto ri = static_cast<std::uint32_t>(rules_.size());
            RuleData rd{r.kind, r.head, r.pos, r.neg, {}, 0};
            if (rd.kind == HeadKind::Choice) {
                std::sort(rd.head.begin(), rd.head.end());
                rd.head.erase(std::unique(rd.head.begin(), rd.head.end()), rd.head.end());
            }
            for (const auto& c : r.cards) {
                const auto ci = static_cast<std::uint32_t>(cards_.size());
                cards_.push_back({c.lower, c.upper, c.elements, ri});
                rd.cards.push_back(ci);
                for (AtomId a : c.elements) card_occ_[a].push_back(ci);
            }
            rd.size = static_cast<std::int32_t>(rd.pos.size() + rd.neg.size() + rd.cards.size());
            for (AtomId a : rd.pos) pos_occ_[a].push_back(ri);
            for (AtomId a : rd.neg) neg_occ_[a].push_back(ri);
            for (AtomId h : rd.head) head_occ_[h].push_back(ri);
            rules_.push_back(std::move(rd));
        }
        rule_true_.assign(rules_.size(), 0);
        rule_false_.assign(rules_.size(), 0);
        card_true_.assign(cards_.size(), 0);
        card_false_.assign(cards_.size(), 0);
        support_.assign(n_ + 1, 0);
        rule_queued_.assign(rules_.size(), 0);
        atom_queued_.assign(n_ + 1, 0);
        for (std::uint32_t c = 0; c < cards_.size(); ++c) {
            const Status s = card_status(c);
            rule_true_[cards_[c].rule] += s == Status::True;
            rule_false_[cards_[c].rule] += s == Status::False;
        }
        for (std::uint32_t r = 0; r < rules_.size(); ++r) {
            if (rules_[r].kind != HeadKind::Constraint && rule_false_[r] == 0) {
                for (AtomId h : rules_[r].head) ++support_[h];
            }
        }
    }

    bool initialize() {
        collecting_ = true;
        for (std::uint32_t r = 0; r < rules_.size(); ++r) queue_rule(r);
        for (AtomId a = 1; a <= n_; ++a) queue_atom(a);
        collecting_ = false;
        run_checks();
        return propagate();
    }

    const Assignment& assignment() const { return asg_; }
    std::size_t atom_count() const { return n_; }
    void set_level(std::uint32_t level) { level_ = level; }

    bool assign(AtomId a, Value v) {
        if (!asg_.assign(a, v, level_)) conflict_ = true;
        return !conflict_;
    }

    /// Local inferences to fixpoint, then the unfounded-set check, repeated
    /// until nothing changes. False on conflict.
    bool propagate() {
        while (!conflict_) {
            while (processed_ < asg_.trail().size() && !conflict_) {
                const auto e = asg_.trail()[processed_];
                collecting_ = true;
                apply(e.atom, e.value, +1);
                collecting_ = false;
                ++processed_;
                run_checks();
            }
            if (conflict_) break;
            if (!unfounded()) break;
            if (processed_ == asg_.trail().size()) return true;
        }
        clear_queues();
        return false;
    }

    void undo_to(std::size_t trail_size) {
        while (asg_.trail().size() > trail_size) {
            const auto e = asg_.trail().back();
            if (asg_.trail().size() <= processed_) {
                apply(e.atom, e.value, -1);
                --processed_;
            }
            asg_.pop();
        }
        conflict_ = false;
        clear_queues();
    }

    /// Failed-literal probing on every unassigned atom until no probe fails.
    bool lookahead() {
        for (bool changed = true; changed;) {
            changed = false;
            for (AtomId a = 1; a <= n_ && !changed; ++a) {
                if (asg_.is_assigned(a)) continue;
                for (Value v : {Value::True, Value::False}) {
                    const std::size_t mark = asg_.trail().size();
                    assign(a, v);
                    const bool ok = propagate();
                    undo_to(mark);
                    if (!ok) {
                        const Value other = v == Value::True ? Value::False : Value::True;
                        if (!assign(a, other) || !propagate()) return false;
                        changed = true;
                        break;
                    }
                }
            }
        }
        return true;
    }

    AtomId select(Heuristic heuristic, std::uint64_t seed) const {
        std::vector<std::uint32_t> score(n_ + 1, 0);
        if (heuristic == Heuristic::Occurrence) {
            auto bump = [&](AtomId a) {
                if (!asg_.is_assigned(a)) ++score[a];
            };
            for (std::uint32_t r = 0; r < rules_.size(); ++r) {
                const auto& rd = rules_[r];
                const bool body_true = rule_true_[r] == rd.size;
                if (rule_false_[r] > 0 || (body_true && rd.kind != HeadKind::Choice)) continue;
                for (AtomId a : rd.head) bump(a);
                for (AtomId a : rd.pos) bump(a);
                for (AtomId a : rd.neg) bump(a);
                for (std::uint32_t c : rd.cards)
                    for (AtomId a : cards_[c].elements) bump(a);
            }
        }
        AtomId best = 0;
        for (AtomId a = 1; a <= n_; ++a) {
            if (asg_.is_assigned(a)) continue;
            if (best == 0 || score[a] > score[best] ||
                (score[a] == score[best] && seed != 0 && mix(seed ^ a) < mix(seed ^ best))) {
                best = a;
            }
        }
        return best;
    }

    /// Recomputes every counter from the current values.
    bool counters_consistent() const {
        if (processed_ != asg_.trail().size()) return false;
        std::vector<std::int32_t> ct(cards_.size(), 0), cf(cards_.size(), 0);
        for (std::uint32_t c = 0; c < cards_.size(); ++c) {
            for (AtomId a : cards_[c].elements) {
                ct[c] += asg_.value(a) == Value::True;
                cf[c] += asg_.value(a) == Value::False;
            }
            if (ct[c] != card_true_[c] || cf[c] != card_false_[c]) return false;
        }
        std::vector<std::int32_t> support(n_ + 1, 0);
        for (std::uint32_t r = 0; r < rules_.size(); ++r) {
            const auto& rd = rules_[r];
            std::int32_t t = 0, f = 0;
            for (AtomId a : rd.pos) {
                t += asg_.value(a) == Value::True;
                f += asg_.value(a) == Value::False;
            }
            for (AtomId a : rd.neg) {
                t += asg_.value(a) == Value::False;
                f += asg_.value(a) == Value::True;
            }
            for (std::uint32_t c : rd.cards) {
                const Status s = card_status(c);
                t += s == Status::True;
                f += s == Status::False;
            }
            if (t != rule_true_[r] || f != rule_false_[r]) return false;
            if (rd.kind != HeadKind::Constraint && f == 0) {
                for (AtomId h : rd.head) ++support[h];
            }
        }
        return support == support_;
    }

    std::uint64_t unfounded_falsified = 0;

private:
    struct RuleData {
        HeadKind kind;
        std::vector<AtomId> head;
        std::vector<AtomId> pos;
        std::vector<AtomId> neg;
        std::vector<std::uint32_t> cards;
        std::int32_t size;
    };

    struct CardData {
        std::int64_t lower;
        std::optional<std::int64_t> upper;
        std::vector<AtomId> elements;
        std::uint32_t rule;
    };

    Status card_status(std::uint32_t c) const {
        const auto& cd = cards_[c];
        const std::int64_t t = card_true_[c];
        const std::int64_t possible = static_cast<std::int64_t>(cd.elements.size()) - card_false_[c];
        if (possible < cd.lower || (cd.upper && t > *cd.upper)) return Status::False;
        if (t >= cd.lower && (!cd.upper || possible <= *cd.upper)) return Status::True;
        return Status::Unknown;
    }

    void queue_rule(std::uint32_t r) {
        if (collecting_ && !rule_queued_[r]) {
            rule_queued_[r] = 1;
            rule_queue_.push_back(r);
        }
    }

    void queue_atom(AtomId a) {
        if (collecting_ && !atom_queued_[a]) {
            atom_queued_[a] = 1;
            atom_queue_.push_back(a);
        }
    }

    void clear_queues() {
        for (auto r : rule_queue_) rule_queued_[r] = 0;
        for (auto a : atom_queue_) atom_queued_[a] = 0;
        rule_queue_.clear();
        atom_queue_.clear();
    }

    void adjust_rule(std::uint32_t r, std::int32_t dt, std::int32_t df) {
        const bool was_false = rule_false_[r] > 0;
        rule_true_[r] += dt;
        rule_false_[r] += df;
        const bool is_false = rule_false_[r] > 0;
        if (was_false != is_false && rules_[r].kind != HeadKind::Constraint) {
            for (AtomId h : rules_[r].head) {
                support_[h] += is_false ? -1 : 1;
                queue_atom(h);
            }
        }
        queue_rule(r);
    }

    void apply(AtomId a, Value v, std::int32_t sign) {
        const bool is_true = v == Value::True;
        for (std::uint32_t r : pos_occ_[a]) adjust_rule(r, is_true ? sign : 0, is_true ? 0 : sign);
        for (std::uint32_t r : neg_occ_[a]) adjust_rule(r, is_true ? 0 : sign, is_true ? sign : 0);
        for (std::uint32_t c : card_occ_[a]) {
            const Status before = card_status(c);
            (is_true ? card_true_[c] : card_false_[c]) += sign;
            const Status after = card_status(c);
            if (before != after) {
                adjust_rule(cards_[c].rule, (after == Status::True) - (before == Status::True),
                            (after == Status::False) - (before == Status::False));
            } else {
                queue_rule(cards_[c].rule);
            }
        }
        for (std::uint32_t r : head_occ_[a]) queue_rule(r);
        queue_atom(a);
    }

    void run_checks() {
        for (std::size_t i = 0; i < rule_queue_.size() && !conflict_; ++i) check_rule(rule_queue_[i]);
        for (std::size_t i = 0; i < atom_queue_.size() && !conflict_; ++i) check_atom(atom_queue_[i]);
        clear_queues();
    }

    void check_rule(std::uint32_t r) {
        const auto& rd = rules_[r];
        if (rule_false_[r] > 0) return;
        if (rule_true_[r] == rd.size) {
            if (rd.kind == HeadKind::Normal) assign(rd.head.front(), Value::True);
            if (rd.kind == HeadKind::Constraint) conflict_ = true;
            return;
        }
        const bool head_false = rd.kind == HeadKind::Constraint ||
                                (rd.kind == HeadKind::Normal && asg_.value(rd.head.front()) == Value::False);
        if (head_false && rule_true_[r] == rd.size - 1) {
            force_remaining_false(r);
            if (conflict_) return;
        }
        for (AtomId h : rd.head) {
            if (asg_.value(h) == Value::True && support_[h] == 1) {
                force_body_true(r);
                return;
            }
        }
    }

    void check_atom(AtomId a) {
        const Value v = asg_.value(a);
        if (support_[a] == 0) {
            if (v == Value::True) conflict_ = true;
            else if (v == Value::Unknown) assign(a, Value::False);
        } else if (support_[a] == 1 && v == Value::True) {
            for (std::uint32_t r : head_occ_[a]) {
                if (rule_false_[r] == 0) {
                    force_body_true(r);
                    return;
                }
            }
        }
    }

    void force_remaining_false(std::uint32_t r) {
        const auto& rd = rules_[r];
        for (AtomId a : rd.pos) {
            if (asg_.value(a) == Value::Unknown) {
                assign(a, Value::False);
                return;
            }
        }
        for (AtomId a : rd.neg) {
            if (asg_.value(a) == Value::Unknown) {
                assign(a, Value::True);
                return;
            }
        }
        for (std::uint32_t c : rd.cards) {
            if (card_status(c) == Status::Unknown) {
                force_card(c, false);
                return;
            }
        }
    }

    void force_body_true(std::uint32_t r) {
        const auto& rd = rules_[r];
        for (AtomId a : rd.pos)
            if (!assign(a, Value::True)) return;
        for (AtomId a : rd.neg)
            if (!assign(a, Value::False)) return;
        for (std::uint32_t c : rd.cards) {
            force_card(c, true);
            if (conflict_) return;
        }
    }

    void set_unknown_elements(std::uint32_t c, Value v) {
        for (AtomId a : cards_[c].elements) {
            if (asg_.value(a) == Value::Unknown && !assign(a, v)) return;
        }
    }

    void force_card(std::uint32_t c, bool want) {
        const auto& cd = cards_[c];
        const Status s = card_status(c);
        const std::int64_t t = card_true_[c];
        const std::int64_t possible = static_cast<std::int64_t>(cd.elements.size()) - card_false_[c];
        if (want) {
            if (s == Status::False) {
                conflict_ = true;
                return;
            }
            if (s == Status::True) return;
            if (possible <= cd.lower) set_unknown_elements(c, Value::True);
            if (cd.upper && t >= *cd.upper) set_unknown_elements(c, Value::False);
        } else {
            if (s == Status::True) {
                conflict_ = true;
                return;
            }
            if (s == Status::False) return;
            const bool can_exceed = cd.upper && possible > *cd.upper;
            if (!can_exceed && t + 1 >= cd.lower) set_unknown_elements(c, Value::False);
            if (t >= cd.lower && cd.upper && possible <= *cd.upper + 1) set_unknown_elements(c, Value::True);
        }
    }

    /// Atoms outside the least model of the rules whose body is not false
    /// (negative literals read optimistically) have no external support.
    bool unfounded() {
        derived_.assign(n_ + 1, 0);
        remaining_.resize(rules_.size());
        need_.resize(cards_.size());
        queue_.clear();

        auto usable = [&](std::uint32_t r) {
            return rules_[r].kind != HeadKind::Constraint && rule_false_[r] == 0;
        };
        auto fire = [&](std::uint32_t r) {
            for (AtomId h : rules_[r].head) {
                if (!derived_[h] && asg_.value(h) != Value::False) {
                    derived_[h] = 1;
                    queue_.push_back(h);
                }
            }
        };
        for (std::uint32_t c = 0; c < cards_.size(); ++c) need_[c] = cards_[c].lower;
        for (std::uint32_t r = 0; r < rules_.size(); ++r) {
            std::int64_t rem = static_cast<std::int64_t>(rules_[r].pos.size());
            for (std::uint32_t c : rules_[r].cards) rem += cards_[c].lower > 0;
            remaining_[r] = rem;
            if (rem == 0 && usable(r)) fire(r);
        }
        for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
            const AtomId a = queue_[qi];
            for (std::uint32_t r : pos_occ_[a]) {
                if (--remaining_[r] == 0 && usable(r)) fire(r);
            }
            for (std::uint32_t c : card_occ_[a]) {
                const std::uint32_t r = cards_[c].rule;
                if (--need_[c] == 0 && --remaining_[r] == 0 && usable(r)) fire(r);
            }
        }
        for (AtomId a = 1; a <= n_; ++a) {
            if (derived_[a]) continue;
            const Value v = asg_.value(a);
            if (v == Value::True) {
                conflict_ = true;
                return false;
            }
            if (v == Value::Unknown) {
                assign(a, Value::False);
                ++unfounded_falsified;
            }
        }
        return true;
    }

    std::size_t n_;
    Assignment asg_;
    std::size_t processed_ = 0;
    std::uint32_t level_ = 0;
    bool conflict_ = false;
    bool collecting_ = false;

    std::vector<RuleData> rules_;
    std::vector<CardData> cards_;
    std::vector<std::vector<std::uint32_t>> pos_occ_, neg_occ_, head_occ_, card_occ_;
    std::vector<std::int32_t> rule_true_, rule_false_, card_true_, card_false_, support_;

    std::vector<std::uint32_t> rule_queue_;
    std::vector<AtomId> atom_queue_;
    std::vector<char> rule_queued_, atom_queued_;

    // unfounded-set scratch
    std::vector<char> derived_;
    std::vector<std::int64_t> remaining_, need_;
    std::vector<AtomId> queue_;
};

}  // namespace

std::optional<Assignment> propagate(const GroundProgram& gp, const Assignment& start) {
    Propagator p(gp);
    if (!p.initialize()) return std::nullopt;
    for (const auto& e : start.trail()) {
        if (!p.assign(e.atom, e.value)) return std::nullopt;
    }
    if (!p.propagate()) return std::nullopt;
    return p.assignment();
}

ModelSet solve(const GroundProgram& gp, const SearchConfig& config, SolveStats* stats) {
    SolveStats local;
    SolveStats& st = stats ? *stats : local;
    st = {};

    struct Decision {
        AtomId atom;
        bool flipped;
        std::size_t trail_start;
    };

    Propagator p(gp);
    ModelSet result;
    std::vector<Decision> stack;
    bool ok = p.initialize();

    auto finish = [&] {
        st.unfounded_falsified = p.unfounded_falsified;
        return result;
    };

    while (true) {
        bool conflict = !ok;
        if (ok) {
            if (config.check_counters && !p.counters_consistent()) {
                throw std::logic_error("propagation counters diverged from the assignment");
            }
            if (config.lookahead && !p.lookahead()) {
                conflict = true;
            } else if (p.assignment().complete()) {
                Model m = p.assignment().true_atoms();
                if (is_stable(gp, m)) {
                    result.models.push_back(std::move(m));
                    if (config.max_models != 0 && result.models.size() >= config.max_models) {
                        result.truncated = std::any_of(stack.begin(), stack.end(),
                                                       [](const Decision& d) { return !d.flipped; });
                        return finish();
                    }
                } else {
                    ++st.guard_rejections;
                }
            } else {
                const AtomId a = p.select(config.heuristic, config.seed);
                stack.push_back({a, false, p.assignment().trail().size()});
                p.set_level(static_cast<std::uint32_t>(stack.size()));
                p.assign(a, Value::True);
                ++st.decisions;
                ok = p.propagate();
                continue;
            }
        }
        if (conflict) {
            ++st.conflicts;
            if (config.conflict_limit && st.conflicts > *config.conflict_limit) {
                result.truncated = true;
                st.unfounded_falsified = p.unfounded_falsified;
                throw IncompleteResult("conflict limit of " + std::to_string(*config.conflict_limit) + " exceeded",
                                       std::move(result));
            }
        }
        while (!stack.empty() && stack.back().flipped) stack.pop_back();
        if (stack.empty()) return finish();
        Decision& d = stack.back();
        p.undo_to(d.trail_start);
        d.flipped = true;
        p.set_level(static_cast<std::uint32_t>(stack.size()));
        p.assign(d.atom, Value::False);
        ok = p.propagate();
    }
}

bool check_model(const GroundProgram& gp, const Model& atoms) { return is_stable(gp, atoms); }

}  // namespace microasp
