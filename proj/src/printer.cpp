#include "microasp/printer.hpp"

#include <sstream>

namespace microasp {

namespace {

std::string join_atoms(const std::vector<Atom>& atoms) {
    std::string out;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (i) out += "; ";
        out += atoms[i].str();
    }
    return out;
}

std::string card_text(std::int64_t lower, const std::optional<std::int64_t>& upper, const std::string& elements) {
    std::string out;
    if (lower != 0) out += std::to_string(lower) + " ";
    out += "{ " + elements + " }";
    if (upper) out += " " + std::to_string(*upper);
    return out;
}

std::string statement(const std::string& head, const std::vector<std::string>& body) {
    std::string out = head;
    if (!body.empty() || head.empty()) {
        out += head.empty() ? ":-" : " :-";
        for (std::size_t i = 0; i < body.size(); ++i) {
            out += i ? ", " : " ";
            out += body[i];
        }
        if (body.empty()) out += " ";
    }
    return out + ".";
}

}  // namespace

std::string to_string(const Literal& lit) {
    return lit.negated ? "not " + lit.atom.str() : lit.atom.str();
}

std::string to_string(const CardinalityLiteral& card) {
    return card_text(card.lower, card.upper, join_atoms(card.elements));
}

std::string to_string(const Comparison& cmp) {
    return cmp.lhs.str() + " " + to_string(cmp.op) + " " + cmp.rhs.str();
}

std::string to_string(const Rule& rule) {
    std::string head;
    if (rule.kind == HeadKind::Normal && !rule.head.empty()) {
        head = rule.head.front().str();
    } else if (rule.kind == HeadKind::Choice) {
        head = "{ " + join_atoms(rule.head) + " }";
    }
    std::vector<std::string> body;
    for (const auto& l : rule.body) body.push_back(to_string(l));
    for (const auto& c : rule.cards) body.push_back(to_string(c));
    for (const auto& b : rule.builtins) body.push_back(to_string(b));
    return statement(head, body);
}

std::string to_string(const Program& program) {
    std::ostringstream out;
    for (const auto& f : program.facts) out << f.str() << ".\n";
    for (const auto& r : program.rules) out << to_string(r) << '\n';
    return out.str();
}

std::string to_string(const GroundRule& rule, const AtomTable& atoms) {
    std::string head;
    if (rule.kind == HeadKind::Normal) {
        head = atoms.name(rule.head.front());
    } else if (rule.kind == HeadKind::Choice) {
        head = "{ ";
        for (std::size_t i = 0; i < rule.head.size(); ++i) {
            if (i) head += "; ";
            head += atoms.name(rule.head[i]);
        }
        head += " }";
    }
    std::vector<std::string> body;
    for (AtomId a : rule.pos) body.push_back(atoms.name(a));
    for (AtomId a : rule.neg) body.push_back("not " + atoms.name(a));
    for (const auto& c : rule.cards) {
        std::string elems;
        for (std::size_t i = 0; i < c.elements.size(); ++i) {
            if (i) elems += "; ";
            elems += atoms.name(c.elements[i]);
        }
        body.push_back(card_text(c.lower, c.upper, elems));
    }
    return statement(head, body);
}

std::string to_string(const GroundProgram& program) {
    std::ostringstream out;
    for (const auto& r : program.rules) out << to_string(r, program.atoms) << '\n';
    return out.str();
}

}  // namespace microasp
