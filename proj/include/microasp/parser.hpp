#pragma once

#include "microasp/core.hpp"
#include "microasp/default_logic.hpp"
#include "microasp/error.hpp"
#include "microasp/graph.hpp"

#include <string_view>

namespace microasp {

/// Rule programs. Throws ParseError at the first lexical or syntax error.
Program parse_program(std::string_view text);

/// A single ground atom such as `clrd(1,2)`.
Atom parse_atom(std::string_view text);

/// `p graph <n> <m> <directed|undirected>`, optional `c id <identifier>`, m lines `e <u> <v>`.
Graph parse_graph(std::string_view text);

/// `fact: l1 & ... & lk.` and `d: pre : j1, ..., jm / cons.` statements.
dl::DefaultTheory parse_default_theory(std::string_view text);

}  // namespace microasp
