#include "microasp/default_logic.hpp"

#include "microasp/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace microasp::dl {

bool LitSet::contains(const Lit& l) const {
    return inconsistent || std::binary_search(lits.begin(), lits.end(), l);
}

namespace {

/// Theory with literals interned as 2*atom + (negative ? 1 : 0).
class Compiled {
public:
    struct Def {
        std::vector<int> pre;
        std::vector<std::vector<int>> just;
        std::vector<int> cons;
        bool just_ok = true;  // every justification is itself consistent
    };

    Compiled(const std::vector<Default>& defaults, const std::vector<Lit>& facts) {
        for (const auto& l : facts) facts_.push_back(id(l));
        for (const auto& d : defaults) {
            Def cd;
            for (const auto& l : d.prerequisite) cd.pre.push_back(id(l));
            for (const auto& j : d.justifications) {
                std::vector<int> conj;
                for (const auto& l : j) conj.push_back(id(l));
                for (int x : conj) {
                    if (std::find(conj.begin(), conj.end(), x ^ 1) != conj.end()) cd.just_ok = false;
                }
                cd.just.push_back(std::move(conj));
            }
            for (const auto& l : d.consequent) cd.cons.push_back(id(l));
            std::sort(cd.pre.begin(), cd.pre.end());
            cd.pre.erase(std::unique(cd.pre.begin(), cd.pre.end()), cd.pre.end());
            defs_.push_back(std::move(cd));
        }
        pre_occ_.resize(2 * atoms_.size());
        for (std::size_t d = 0; d < defs_.size(); ++d) {
            for (int l : defs_[d].pre) pre_occ_[l].push_back(d);
        }
    }

    int id(const Lit& l) {
        auto [it, inserted] = index_.emplace(l.atom, static_cast<int>(atoms_.size()));
        if (inserted) atoms_.push_back(l.atom);
        return 2 * it->second + (l.positive ? 0 : 1);
    }

    std::optional<int> find(const Lit& l) const {
        auto it = index_.find(l.atom);
        if (it == index_.end()) return std::nullopt;
        return 2 * it->second + (l.positive ? 0 : 1);
    }

    Lit lit(int x) const { return {atoms_[x / 2], (x & 1) == 0}; }
    std::size_t lit_count() const { return 2 * atoms_.size(); }
    std::size_t atom_count() const { return atoms_.size(); }
    const std::vector<Def>& defs() const { return defs_; }

    struct Closure {
        bool inconsistent = false;
        std::vector<char> in;  // by literal id

        bool has(int l) const { return inconsistent || in[l]; }
    };

    /// Least closure of W under the active defaults.
    Closure closure(const std::vector<char>& active) const {
        Closure c;
        c.in.assign(lit_count(), 0);
        std::vector<std::size_t> remaining(defs_.size());
        std::vector<int> queue;
        auto add = [&](int l) {
            if (!c.in[l]) {
                c.in[l] = 1;
                queue.push_back(l);
            }
        };
        auto fire = [&](std::size_t d) {
            for (int l : defs_[d].cons) add(l);
        };
        for (int l : facts_) add(l);
        for (std::size_t d = 0; d < defs_.size(); ++d) {
            remaining[d] = defs_[d].pre.size();
            if (active[d] && remaining[d] == 0) fire(d);
        }
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            for (std::size_t d : pre_occ_[queue[qi]]) {
                if (--remaining[d] == 0 && active[d]) fire(d);
            }
        }
        for (std::size_t a = 0; a < atom_count(); ++a) {
            if (c.in[2 * a] && c.in[2 * a + 1]) c.inconsistent = true;
        }
        return c;
    }

    bool applicable(std::size_t d, const Closure& e) const {
        const Def& def = defs_[d];
        if (!def.just_ok) return false;
        for (int l : def.pre)
            if (!e.has(l)) return false;
        for (const auto& j : def.just)
            for (int l : j)
                if (e.has(l ^ 1)) return false;
        return true;
    }

    LitSet to_litset(const Closure& c) const {
        LitSet out;
        out.inconsistent = c.inconsistent;
        if (!c.inconsistent) {
            for (std::size_t l = 0; l < c.in.size(); ++l) {
                if (c.in[l]) out.lits.push_back(lit(static_cast<int>(l)));
            }
            std::sort(out.lits.begin(), out.lits.end());
        }
        return out;
    }

    Closure from_litset(const LitSet& s) {
        for (const auto& l : s.lits) id(l);
        Closure c;
        c.inconsistent = s.inconsistent;
        c.in.assign(lit_count(), 0);
        for (const auto& l : s.lits) c.in[*find(l)] = 1;
        return c;
    }

private:
    std::vector<std::string> atoms_;
    std::map<std::string, int> index_;
    std::vector<Def> defs_;
    std::vector<int> facts_;
    std::vector<std::vector<std::size_t>> pre_occ_;
};

/// Atom dependency graph (consequent atoms depend on prerequisite and
/// justification atoms), condensed to SCCs. Returns a rank per atom with
/// dependencies ranked lower.
std::vector<int> strata(const Compiled& c) {
    const std::size_t n = c.atom_count();
    std::vector<std::vector<int>> deps(n);
    for (const auto& d : c.defs()) {
        for (int x : d.cons) {
            for (int y : d.pre) deps[x / 2].push_back(y / 2);
            for (const auto& j : d.just)
                for (int y : j) deps[x / 2].push_back(y / 2);
        }
    }
    // Tarjan; SCCs are emitted dependencies-first
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
    std::vector<char> on_stack(n, 0);
    int counter = 0, comps = 0;
    std::function<void(int)> visit = [&](int v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = 1;
        for (int w : deps[v]) {
            if (index[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            int w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = 0;
                comp[w] = comps;
            } while (w != v);
            ++comps;
        }
    };
    for (std::size_t v = 0; v < n; ++v) {
        if (index[v] < 0) visit(static_cast<int>(v));
    }
    return comp;
}

enum class JStatus : std::uint8_t { Unknown, Consistent, Blocked };

/// DPLL-style search over the status of each justification literal l:
/// Consistent (complement of l not in E) or Blocked (complement in E).
class ExtensionSearch {
public:
    explicit ExtensionSearch(Compiled& c) : c_(c) {
        std::set<int> js;
        for (const auto& d : c_.defs())
            for (const auto& j : d.just)
                for (int l : j) js.insert(l);
        jlits_.assign(js.begin(), js.end());
        const auto rank = strata(c_);
        std::stable_sort(jlits_.begin(), jlits_.end(), [&](int a, int b) { return rank[a / 2] < rank[b / 2]; });
        pos_.assign(c_.lit_count(), -1);
        for (std::size_t i = 0; i < jlits_.size(); ++i) pos_[jlits_[i]] = static_cast<int>(i);
    }

    std::vector<Compiled::Closure> run() {
        std::vector<JStatus> status(jlits_.size(), JStatus::Unknown);
        search(status);
        return found_;
    }

private:
    std::vector<char> active(const std::vector<JStatus>& status, bool upper) const {
        std::vector<char> act(c_.defs().size(), 0);
        for (std::size_t d = 0; d < act.size(); ++d) {
            const auto& def = c_.defs()[d];
            if (!def.just_ok) continue;
            bool ok = true;
            for (const auto& j : def.just) {
                for (int l : j) {
                    const JStatus s = status[pos_[l]];
                    ok = ok && (upper ? s != JStatus::Blocked : s == JStatus::Consistent);
                }
            }
            act[d] = ok;
        }
        return act;
    }

    bool propagate(std::vector<JStatus>& status) const {
        for (bool changed = true; changed;) {
            changed = false;
            const auto low = c_.closure(active(status, false));
            if (low.inconsistent) return false;
            const auto high = c_.closure(active(status, true));
            for (std::size_t i = 0; i < jlits_.size(); ++i) {
                const int comp = jlits_[i] ^ 1;
                const bool surely_in = low.has(comp);
                const bool maybe_in = high.has(comp);
                switch (status[i]) {
                    case JStatus::Consistent:
                        if (surely_in) return false;
                        break;
                    case JStatus::Blocked:
                        if (!maybe_in) return false;
                        break;
                    case JStatus::Unknown:
                        if (surely_in) {
                            status[i] = JStatus::Blocked;
                            changed = true;
                        } else if (!maybe_in) {
                            status[i] = JStatus::Consistent;
                            changed = true;
                        }
                        break;
                }
            }
        }
        return true;
    }

    void search(std::vector<JStatus> status) {
        if (!propagate(status)) return;
        auto it = std::find(status.begin(), status.end(), JStatus::Unknown);
        if (it == status.end()) {
            auto e = c_.closure(active(status, false));
            if (e.inconsistent) return;
            for (std::size_t i = 0; i < jlits_.size(); ++i) {
                if (e.has(jlits_[i] ^ 1) != (status[i] == JStatus::Blocked)) return;
            }
            found_.push_back(std::move(e));
            return;
        }
        for (JStatus s : {JStatus::Consistent, JStatus::Blocked}) {
            *it = s;
            search(status);
        }
    }

    Compiled& c_;
    std::vector<int> jlits_;
    std::vector<int> pos_;
    std::vector<Compiled::Closure> found_;
};

std::vector<std::size_t> applicable_ids(const Compiled& c, const Compiled::Closure& e) {
    std::vector<std::size_t> out;
    for (std::size_t d = 0; d < c.defs().size(); ++d) {
        if (c.applicable(d, e)) out.push_back(d);
    }
    return out;
}

std::string conj_text(const std::vector<Lit>& conj) {
    std::string out;
    for (std::size_t i = 0; i < conj.size(); ++i) {
        if (i) out += " & ";
        out += conj[i].str();
    }
    return out;
}

}  // namespace

LitSet closure(const std::vector<Default>& defaults, const std::vector<Lit>& facts,
               const std::vector<std::size_t>& active) {
    Compiled c(defaults, facts);
    std::vector<char> act(defaults.size(), 0);
    for (std::size_t d : active) act.at(d) = 1;
    return c.to_litset(c.closure(act));
}

std::vector<std::size_t> applicable(const DefaultTheory& theory, const LitSet& e) {
    Compiled c(theory.defaults, theory.facts);
    return applicable_ids(c, c.from_litset(e));
}

bool is_extension(const DefaultTheory& theory, const LitSet& e) {
    return closure(theory.defaults, theory.facts, applicable(theory, e)) == e;
}

ExtensionSet extensions(const DefaultTheory& theory) {
    Compiled c(theory.defaults, theory.facts);
    ExtensionSet out;

    std::vector<char> none(theory.defaults.size(), 0);
    if (c.closure(none).inconsistent) {
        // inconsistent W: the set of all formulas is the only extension
        out.extensions.push_back({LitSet{true, {}}, {}});
        return out;
    }

    for (const auto& e : ExtensionSearch(c).run()) {
        out.extensions.push_back({c.to_litset(e), applicable_ids(c, e)});
    }
    std::sort(out.extensions.begin(), out.extensions.end(),
              [](const Extension& a, const Extension& b) { return a.literals.lits < b.literals.lits; });
    return out;
}

bool query(const ExtensionSet& exts, const Lit& lit, QueryMode mode) {
    auto in = [&](const Extension& e) { return e.literals.contains(lit); };
    if (mode == QueryMode::Skeptical) return std::all_of(exts.extensions.begin(), exts.extensions.end(), in);
    return std::any_of(exts.extensions.begin(), exts.extensions.end(), in);
}

bool query(const DefaultTheory& theory, const Lit& lit, QueryMode mode) {
    return query(extensions(theory), lit, mode);
}

DefaultTheory program_to_defaults(const GroundProgram& gp) {
    if (!gp.is_normal()) {
        throw UnsupportedFeature("translation to default logic needs normal rules and constraints only");
    }
    std::set<std::string> names;
    for (AtomId a = 1; a <= gp.atom_count(); ++a) names.insert(gp.atoms.name(a));

    DefaultTheory t;
    std::size_t kills = 0;
    for (const auto& r : gp.rules) {
        Default d;
        for (AtomId a : r.pos) {
            Lit l{gp.atoms.name(a), true};
            if (std::find(d.prerequisite.begin(), d.prerequisite.end(), l) == d.prerequisite.end()) {
                d.prerequisite.push_back(l);
            }
        }
        if (r.kind == HeadKind::Constraint) {
            std::string fresh = "kill_" + std::to_string(++kills);
            while (names.count(fresh)) fresh += "_";
            names.insert(fresh);
            d.justifications.push_back({{fresh, false}});
            d.consequent.push_back({fresh, true});
        } else {
            d.consequent.push_back({gp.atoms.name(r.head.front()), true});
        }
        for (AtomId a : r.neg) {
            std::vector<Lit> j{{gp.atoms.name(a), false}};
            if (std::find(d.justifications.begin(), d.justifications.end(), j) == d.justifications.end()) {
                d.justifications.push_back(std::move(j));
            }
        }
        t.defaults.push_back(std::move(d));
    }
    return t;
}

std::string to_string(const Default& d) {
    std::string out = "d: " + (d.prerequisite.empty() ? std::string("true") : conj_text(d.prerequisite)) + " :";
    for (std::size_t i = 0; i < d.justifications.size(); ++i) {
        out += i ? ", " : " ";
        out += conj_text(d.justifications[i]);
    }
    out += " / " + conj_text(d.consequent) + ".";
    return out;
}

std::string to_string(const DefaultTheory& theory) {
    std::string out;
    if (!theory.facts.empty()) out += "fact: " + conj_text(theory.facts) + ".\n";
    for (const auto& d : theory.defaults) out += to_string(d) + "\n";
    return out;
}

}  // namespace microasp::dl
