#pragma once

#include "microasp/core.hpp"
#include "microasp/ground_program.hpp"

#include <string>

namespace microasp {

// Canonical text form, one statement per line, accepted by parse_program.
// Facts are printed before rules.

std::string to_string(const Literal& lit);
std::string to_string(const CardinalityLiteral& card);
std::string to_string(const Comparison& cmp);
std::string to_string(const Rule& rule);
std::string to_string(const Program& program);

std::string to_string(const GroundRule& rule, const AtomTable& atoms);
std::string to_string(const GroundProgram& program);

}  // namespace microasp
