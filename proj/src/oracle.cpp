#include "microasp/oracle.hpp"

#include "microasp/error.hpp"

#include <algorithm>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace microasp {

namespace {

std::int64_t count_true(const std::vector<AtomId>& atoms, const Interpretation& in) {
    return std::count_if(atoms.begin(), atoms.end(), [&](AtomId a) { return in.contains(a); });
}

bool card_holds(const GroundCard& c, const Interpretation& in) {
    const auto k = count_true(c.elements, in);
    return k >= c.lower && (!c.upper || k <= *c.upper);
}

bool body_holds(const GroundRule& r, const Interpretation& in) {
    return std::all_of(r.pos.begin(), r.pos.end(), [&](AtomId a) { return in.contains(a); }) &&
           std::none_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return in.contains(a); }) &&
           std::all_of(r.cards.begin(), r.cards.end(), [&](const GroundCard& c) { return card_holds(c, in); });
}

bool constraints_hold(const GroundProgram& gp, const Interpretation& in) {
    return std::none_of(gp.rules.begin(), gp.rules.end(), [&](const GroundRule& r) {
        return r.kind == HeadKind::Constraint && body_holds(r, in);
    });
}

void check_limit(std::size_t atoms, std::size_t limit, const char* flag) {
    if (atoms > limit || atoms > 62) {
        throw LimitExceeded(std::to_string(atoms) + " atoms exceed the brute-force limit of " + std::to_string(limit) +
                            " (raise it with " + flag + ")");
    }
}

Interpretation from_mask(std::size_t n, std::uint64_t mask) {
    Interpretation in(n);
    for (std::size_t i = 0; i < n; ++i) {
        if ((mask >> i) & 1U) in.set(static_cast<AtomId>(i + 1));
    }
    return in;
}

/// Stability test with reusable buffers. Computes the least model of the
/// reduct in place instead of materializing it; one instance per thread.
class StabilityKernel {
public:
    explicit StabilityKernel(const GroundProgram& gp)
        : gp_(gp), n_(gp.atom_count()), pos_occ_(n_ + 1), card_occ_(n_ + 1) {
        for (std::uint32_t r = 0; r < gp.rules.size(); ++r) {
            const auto& rule = gp.rules[r];
            for (AtomId a : rule.pos) pos_occ_[a].push_back(r);
            for (std::uint32_t c = 0; c < rule.cards.size(); ++c) {
                for (AtomId a : rule.cards[c].elements) card_occ_[a].push_back({r, c});
            }
            card_base_.push_back(static_cast<std::uint32_t>(card_total_));
            card_total_ += rule.cards.size();
        }
        remaining_.resize(gp.rules.size());
        active_.resize(gp.rules.size());
        need_.resize(card_total_);
        derived_.resize(n_ + 1);
    }

    bool stable(const Interpretation& in) {
        std::fill(derived_.begin(), derived_.end(), 0);
        queue_.clear();
        std::size_t derived_count = 0;

        auto derive = [&](AtomId a) {
            if (derived_[a]) return true;
            if (!in.contains(a)) return false;
            derived_[a] = 1;
            ++derived_count;
            queue_.push_back(a);
            return true;
        };
        auto fire = [&](std::uint32_t r) {
            const auto& rule = gp_.rules[r];
            if (rule.kind == HeadKind::Normal) return derive(rule.head.front());
            for (AtomId h : rule.head) {
                if (in.contains(h) && !derive(h)) return false;
            }
            return true;
        };

        for (std::uint32_t r = 0; r < gp_.rules.size(); ++r) {
            const auto& rule = gp_.rules[r];
            if (rule.kind == HeadKind::Constraint) {
                active_[r] = 0;
                if (body_holds(rule, in)) return false;
                continue;
            }
            bool active = std::none_of(rule.neg.begin(), rule.neg.end(), [&](AtomId a) { return in.contains(a); });
            std::uint32_t rem = static_cast<std::uint32_t>(rule.pos.size());
            for (std::uint32_t c = 0; c < rule.cards.size() && active; ++c) {
                const auto& card = rule.cards[c];
                if (card.upper && count_true(card.elements, in) > *card.upper) active = false;
                need_[card_base_[r] + c] = card.lower;
                if (card.lower > 0) ++rem;
            }
            active_[r] = active;
            remaining_[r] = rem;
        }
        for (std::uint32_t r = 0; r < gp_.rules.size(); ++r) {
            if (active_[r] && remaining_[r] == 0 && !fire(r)) return false;
        }
        for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
            const AtomId a = queue_[qi];
            for (std::uint32_t r : pos_occ_[a]) {
                if (active_[r] && --remaining_[r] == 0 && !fire(r)) return false;
            }
            for (auto [r, c] : card_occ_[a]) {
                if (!active_[r]) continue;
                if (--need_[card_base_[r] + c] == 0 && --remaining_[r] == 0 && !fire(r)) return false;
            }
        }
        return derived_count == count_true_all(in);
    }

private:
    std::size_t count_true_all(const Interpretation& in) const {
        std::size_t k = 0;
        for (AtomId a = 1; a <= n_; ++a) k += in.contains(a) ? 1 : 0;
        return k;
    }

    const GroundProgram& gp_;
    std::size_t n_;
    std::vector<std::vector<std::uint32_t>> pos_occ_;
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> card_occ_;
    std::vector<std::uint32_t> card_base_;
    std::size_t card_total_ = 0;
    std::vector<std::uint32_t> remaining_;
    std::vector<char> active_;
    std::vector<std::int64_t> need_;
    std::vector<char> derived_;
    std::vector<AtomId> queue_;
};

template <typename Accept>
std::vector<Model> enumerate_masks_parallel(std::size_t n, Accept&& make_acceptor) {
    const std::int64_t total = std::int64_t{1} << n;
    std::vector<Model> models;
#pragma omp parallel
    {
        auto accept = make_acceptor();
        std::vector<Model> local;
#pragma omp for schedule(static)
        for (std::int64_t mask = 0; mask < total; ++mask) {
            Interpretation in = from_mask(n, static_cast<std::uint64_t>(mask));
            if (accept(in)) local.push_back(in.to_model());
        }
#pragma omp critical(microasp_merge_models)
        models.insert(models.end(), local.begin(), local.end());
    }
    sort_models(models);
    return models;
}

}  // namespace

PositiveProgram reduct(const GroundProgram& gp, const Model& candidate) {
    const Interpretation in(gp.atom_count(), candidate);
    PositiveProgram pp{gp.atom_count(), {}};
    for (const auto& r : gp.rules) {
        if (r.kind == HeadKind::Constraint) continue;
        if (std::any_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return in.contains(a); })) continue;
        std::vector<LowerBound> cards;
        bool deleted = false;
        for (const auto& c : r.cards) {
            if (c.upper && count_true(c.elements, in) > *c.upper) {
                deleted = true;
                break;
            }
            cards.push_back({c.lower, c.elements});
        }
        if (deleted) continue;
        if (r.kind == HeadKind::Normal) {
            pp.rules.push_back({r.head.front(), r.pos, cards});
        } else {
            for (AtomId h : r.head) {
                if (in.contains(h)) pp.rules.push_back({h, r.pos, cards});
            }
        }
    }
    return pp;
}

Model least_model(const PositiveProgram& pp) {
    std::size_t n = pp.atom_count;
    for (const auto& r : pp.rules) {
        n = std::max<std::size_t>(n, r.head);
        for (AtomId a : r.body) n = std::max<std::size_t>(n, a);
        for (const auto& c : r.cards)
            for (AtomId a : c.elements) n = std::max<std::size_t>(n, a);
    }

    std::vector<std::vector<std::size_t>> body_occ(n + 1);
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> card_occ(n + 1);
    std::vector<std::size_t> remaining(pp.rules.size());
    std::vector<std::vector<std::int64_t>> need(pp.rules.size());
    for (std::size_t r = 0; r < pp.rules.size(); ++r) {
        const auto& rule = pp.rules[r];
        remaining[r] = rule.body.size();
        for (AtomId a : rule.body) body_occ[a].push_back(r);
        for (std::size_t c = 0; c < rule.cards.size(); ++c) {
            need[r].push_back(rule.cards[c].lower);
            if (rule.cards[c].lower > 0) ++remaining[r];
            for (AtomId a : rule.cards[c].elements) card_occ[a].push_back({r, c});
        }
    }

    std::vector<char> in(n + 1, 0);
    std::vector<AtomId> queue;
    auto derive = [&](AtomId a) {
        if (!in[a]) {
            in[a] = 1;
            queue.push_back(a);
        }
    };
    for (std::size_t r = 0; r < pp.rules.size(); ++r) {
        if (remaining[r] == 0) derive(pp.rules[r].head);
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const AtomId a = queue[qi];
        for (std::size_t r : body_occ[a]) {
            if (--remaining[r] == 0) derive(pp.rules[r].head);
        }
        for (auto [r, c] : card_occ[a]) {
            // the counter crosses zero exactly once
            if (--need[r][c] == 0 && --remaining[r] == 0) derive(pp.rules[r].head);
        }
    }
    std::sort(queue.begin(), queue.end());
    return queue;
}

bool is_stable(const GroundProgram& gp, const Model& candidate) {
    for (AtomId a : candidate) {
        if (!gp.atoms.contains(a)) return false;
    }
    const Interpretation in(gp.atom_count(), candidate);
    if (!constraints_hold(gp, in)) return false;
    Model sorted = candidate;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    return least_model(reduct(gp, sorted)) == sorted;
}

ModelSet enumerate_bruteforce(const GroundProgram& gp, std::size_t atom_limit) {
    const std::size_t n = gp.atom_count();
    check_limit(n, atom_limit, "--limit");
    auto models = enumerate_masks_parallel(n, [&gp] {
        return [kernel = StabilityKernel(gp)](const Interpretation& in) mutable { return kernel.stable(in); };
    });
    return {std::move(models), false};
}

ModelSet enumerate_bruteforce_serial(const GroundProgram& gp, std::size_t atom_limit) {
    const std::size_t n = gp.atom_count();
    check_limit(n, atom_limit, "--limit");
    std::vector<Model> models;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        Model m = from_mask(n, mask).to_model();
        if (is_stable(gp, m)) models.push_back(std::move(m));
    }
    sort_models(models);
    return {std::move(models), false};
}

bool CompletionClause::holds(const Interpretation& in) const {
    return std::any_of(disjuncts.begin(), disjuncts.end(), [&](const std::vector<SignedAtom>& conj) {
        return std::all_of(conj.begin(), conj.end(), [&](SignedAtom l) {
            return l > 0 ? in.contains(static_cast<AtomId>(l)) : !in.contains(static_cast<AtomId>(-l));
        });
    });
}

bool CompletionFormula::satisfied_by(const Interpretation& in) const {
    return std::all_of(clauses.begin(), clauses.end(), [&](const CompletionClause& c) { return c.holds(in); });
}

CompletionFormula clark_completion(const GroundProgram& gp) {
    if (!gp.is_normal()) {
        throw UnsupportedFeature("completion is defined for normal rules and constraints only");
    }
    const std::size_t n = gp.atom_count();
    CompletionFormula f{n, {}};
    std::vector<std::vector<std::vector<SignedAtom>>> bodies(n + 1);

    auto body_of = [](const GroundRule& r) {
        std::vector<SignedAtom> conj;
        for (AtomId a : r.pos) conj.push_back(static_cast<SignedAtom>(a));
        for (AtomId a : r.neg) conj.push_back(-static_cast<SignedAtom>(a));
        return conj;
    };
    auto negated = [](const std::vector<SignedAtom>& conj) {
        std::vector<std::vector<SignedAtom>> out;
        for (SignedAtom l : conj) out.push_back({-l});
        return out;
    };

    for (const auto& r : gp.rules) {
        auto conj = body_of(r);
        if (r.kind == HeadKind::Constraint) {
            f.clauses.push_back({negated(conj)});
            continue;
        }
        const AtomId h = r.head.front();
        // body -> head
        auto clause = negated(conj);
        clause.push_back({static_cast<SignedAtom>(h)});
        f.clauses.push_back({std::move(clause)});
        bodies[h].push_back(std::move(conj));
    }
    // head -> some body
    for (AtomId a = 1; a <= n; ++a) {
        CompletionClause c;
        c.disjuncts.push_back({-static_cast<SignedAtom>(a)});
        for (auto& b : bodies[a]) c.disjuncts.push_back(std::move(b));
        f.clauses.push_back(std::move(c));
    }
    return f;
}

ModelSet supported_models(const CompletionFormula& formula, std::size_t atom_limit) {
    check_limit(formula.atom_count, atom_limit, "a higher truth-table limit");
    auto models = enumerate_masks_parallel(formula.atom_count, [&formula] {
        return [&formula](const Interpretation& in) { return formula.satisfied_by(in); };
    });
    return {std::move(models), false};
}

ModelSet supported_models_serial(const CompletionFormula& formula, std::size_t atom_limit) {
    check_limit(formula.atom_count, atom_limit, "a higher truth-table limit");
    std::vector<Model> models;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << formula.atom_count); ++mask) {
        Interpretation in = from_mask(formula.atom_count, mask);
        if (formula.satisfied_by(in)) models.push_back(in.to_model());
    }
    sort_models(models);
    return {std::move(models), false};
}

std::string to_string(const CompletionFormula& formula, const AtomTable& atoms) {
    auto lit = [&](SignedAtom l) {
        return l > 0 ? atoms.name(static_cast<AtomId>(l)) : "-" + atoms.name(static_cast<AtomId>(-l));
    };
    std::string out;
    for (const auto& c : formula.clauses) {
        if (c.disjuncts.empty()) {
            out += "false\n";
            continue;
        }
        for (std::size_t i = 0; i < c.disjuncts.size(); ++i) {
            if (i) out += " | ";
            const auto& conj = c.disjuncts[i];
            if (conj.empty()) {
                out += "true";
            } else if (conj.size() == 1) {
                out += lit(conj.front());
            } else {
                out += "(";
                for (std::size_t j = 0; j < conj.size(); ++j) {
                    if (j) out += " & ";
                    out += lit(conj[j]);
                }
                out += ")";
            }
        }
        out += '\n';
    }
    return out;
}

bool is_tight(const GroundProgram& gp) {
    const std::size_t n = gp.atom_count();
    std::vector<std::vector<AtomId>> succ(n + 1);
    for (const auto& r : gp.rules) {
        for (AtomId h : r.head) {
            succ[h].insert(succ[h].end(), r.pos.begin(), r.pos.end());
            for (const auto& c : r.cards) succ[h].insert(succ[h].end(), c.elements.begin(), c.elements.end());
        }
    }
    // iterative DFS; 0 = new, 1 = on stack, 2 = done
    std::vector<char> state(n + 1, 0);
    std::vector<std::pair<AtomId, std::size_t>> stack;
    for (AtomId root = 1; root <= n; ++root) {
        if (state[root]) continue;
        stack.push_back({root, 0});
        state[root] = 1;
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next == succ[v].size()) {
                state[v] = 2;
                stack.pop_back();
                continue;
            }
            const AtomId w = succ[v][next++];
            if (state[w] == 1) return false;
            if (state[w] == 0) {
                state[w] = 1;
                stack.push_back({w, 0});
            }
        }
    }
    return true;
}

}  // namespace microasp
