#pragma once

#include "microasp/error.hpp"
#include "microasp/ground_program.hpp"
#include "microasp/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace microasp {

enum class Value : std::uint8_t { Unknown, True, False };

/// Three-valued assignment with a trail of (atom, value, level) entries.
class Assignment {
public:
    struct Entry {
        AtomId atom;
        Value value;
        std::uint32_t level;
    };

    Assignment() = default;
    explicit Assignment(std::size_t atom_count) : values_(atom_count + 1, Value::Unknown) {}

    Value value(AtomId a) const { return values_[a]; }
    bool is_assigned(AtomId a) const { return values_[a] != Value::Unknown; }
    std::size_t atom_count() const noexcept { return values_.empty() ? 0 : values_.size() - 1; }
    std::size_t assigned_count() const noexcept { return trail_.size(); }
    bool complete() const noexcept { return trail_.size() == atom_count(); }
    const std::vector<Entry>& trail() const noexcept { return trail_; }

    /// False when `a` already holds the opposite value.
    bool assign(AtomId a, Value v, std::uint32_t level);
    /// Removes the most recent entry.
    void pop();

    Model true_atoms() const;
    /// Replaying the trail on an empty assignment reproduces the value map.
    bool consistent_with_trail() const;

private:
    std::vector<Value> values_;
    std::vector<Entry> trail_;
};

enum class Heuristic : std::uint8_t { Occurrence, FirstUnassigned };

struct SearchConfig {
    std::size_t max_models = 0;  // 0 = all
    Heuristic heuristic = Heuristic::Occurrence;
    std::uint64_t seed = 0;  // 0 = ties broken by lowest AtomId
    std::optional<std::uint64_t> conflict_limit;
    bool lookahead = false;       // failed-literal probing at every node
    bool check_counters = false;  // recompute counters after every fixpoint (debug)
};

struct SolveStats {
    std::uint64_t decisions = 0;
    std::uint64_t conflicts = 0;
    std::uint64_t unfounded_falsified = 0;
    /// Total assignments that survived propagation but failed the final
    /// stability check. Nonzero means propagation is incomplete.
    std::uint64_t guard_rejections = 0;
};

/// The conflict limit was hit; `partial()` holds the models found so far.
class IncompleteResult : public Error {
public:
    IncompleteResult(const std::string& what, ModelSet partial) : Error(what), partial_(std::move(partial)) {}
    const ModelSet& partial() const noexcept { return partial_; }

private:
    ModelSet partial_;
};

/// Propagates `start` (all entries taken at level 0) to fixpoint.
/// Returns nullopt on conflict.
std::optional<Assignment> propagate(const GroundProgram& gp, const Assignment& start);

/// Stable models by chronological backtracking, true branch first.
ModelSet solve(const GroundProgram& gp, const SearchConfig& config = {}, SolveStats* stats = nullptr);

bool check_model(const GroundProgram& gp, const Model& atoms);

const char* to_string(Heuristic h) noexcept;
std::optional<Heuristic> parse_heuristic(const std::string& name);

}  // namespace microasp
