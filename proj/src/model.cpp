#include "microasp/model.hpp"

#include <algorithm>

namespace microasp {

Interpretation::Interpretation(std::size_t atom_count, const Model& model) : bits_(atom_count + 1, 0) {
    for (AtomId a : model) bits_.at(a) = 1;
}

Model Interpretation::to_model() const {
    Model m;
    for (std::size_t a = 1; a < bits_.size(); ++a) {
        if (bits_[a]) m.push_back(static_cast<AtomId>(a));
    }
    return m;
}

bool model_before(const Model& a, const Model& b) {
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() > b.size();
}

void sort_models(std::vector<Model>& models) { std::sort(models.begin(), models.end(), model_before); }

std::string model_text(const Model& model, const AtomTable& atoms) {
    std::string out;
    for (std::size_t i = 0; i < model.size(); ++i) {
        if (i) out += ' ';
        out += atoms.name(model[i]);
    }
    return out;
}

}  // namespace microasp
