#pragma once

#include "microasp/ground_program.hpp"
#include "microasp/model.hpp"
#include "microasp/parser.hpp"

#include <string>
#include <vector>

namespace testing {

/// Naive instantiation, so the result has no grounder simplifications.
inline microasp::GroundProgram naive(const std::string& text) {
    return microasp::herbrand_instantiation(microasp::parse_program(text));
}

/// Each model as space-separated atom names, in ModelSet order.
inline std::vector<std::string> texts(const microasp::ModelSet& ms, const microasp::AtomTable& atoms) {
    std::vector<std::string> out;
    for (const auto& m : ms.models) out.push_back(microasp::model_text(m, atoms));
    return out;
}

/// Model from atom names; unknown names are a test bug.
inline microasp::Model model_of(const microasp::GroundProgram& gp, const std::vector<std::string>& names) {
    microasp::Model m;
    for (const auto& n : names) {
        auto id = gp.atoms.find(microasp::parse_atom(n));
        if (!id) throw std::runtime_error("no atom " + n);
        m.push_back(*id);
    }
    std::sort(m.begin(), m.end());
    return m;
}

}  // namespace testing
