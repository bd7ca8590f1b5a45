#pragma once

#include "microasp/ground_program.hpp"

#include <string>
#include <vector>

namespace microasp {

/// Set of true atoms, ascending AtomIds.
using Model = std::vector<AtomId>;

/// Membership bitmap indexed by AtomId (slot 0 unused).
class Interpretation {
public:
    Interpretation() = default;
    explicit Interpretation(std::size_t atom_count) : bits_(atom_count + 1, 0) {}
    Interpretation(std::size_t atom_count, const Model& model);

    bool contains(AtomId a) const { return a < bits_.size() && bits_[a]; }
    void set(AtomId a, bool value = true) { bits_[a] = value ? 1 : 0; }
    std::size_t atom_count() const noexcept { return bits_.empty() ? 0 : bits_.size() - 1; }
    Model to_model() const;

private:
    std::vector<char> bits_;
};

/// Canonical order: lexicographic on the bitset read from atom 1 upward with
/// set bits first, i.e. the order a true-first search visits models.
bool model_before(const Model& a, const Model& b);
void sort_models(std::vector<Model>& models);

struct ModelSet {
    std::vector<Model> models;
    bool truncated = false;  // enumeration stopped before exhausting the search space
};

/// Space-separated atom names in AtomId order.
std::string model_text(const Model& model, const AtomTable& atoms);

}  // namespace microasp
