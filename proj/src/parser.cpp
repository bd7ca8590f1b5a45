#include "microasp/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace microasp {

namespace {

enum class Tok {
    Ident,
    Variable,
    Integer,
    LParen,
    RParen,
    Comma,
    Dot,
    If,
    Colon,
    LBrace,
    RBrace,
    Semi,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Amp,
    Slash,
    Minus,
    Bar,
    Tilde,
    Bang,
    Arrow,
    Equiv,
    End,
};

const char* describe(Tok t) {
    switch (t) {
        case Tok::Ident: return "identifier";
        case Tok::Variable: return "variable";
        case Tok::Integer: return "integer";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Comma: return "','";
        case Tok::Dot: return "'.'";
        case Tok::If: return "':-'";
        case Tok::Colon: return "':'";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::Semi: return "';'";
        case Tok::Eq: return "'='";
        case Tok::Ne: return "'!='";
        case Tok::Lt: return "'<'";
        case Tok::Le: return "'<='";
        case Tok::Gt: return "'>'";
        case Tok::Ge: return "'>='";
        case Tok::Amp: return "'&'";
        case Tok::Slash: return "'/'";
        case Tok::Minus: return "'-'";
        case Tok::Bar: return "'|'";
        case Tok::Tilde: return "'~'";
        case Tok::Bang: return "'!'";
        case Tok::Arrow: return "'->'";
        case Tok::Equiv: return "'<->'";
        case Tok::End: return "end of input";
    }
    return "token";
}

struct Token {
    Tok kind = Tok::End;
    std::string text;
    SourceSpan span;
};

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t k) {
        for (std::size_t j = 0; j < k; ++j, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto push = [&](Tok kind, std::size_t len) {
        out.push_back({kind, std::string(src.substr(i, len)), {line, col, len}});
        advance(len);
    };
    auto starts = [&](std::string_view s) { return src.substr(i, s.size()) == s; };

    while (i < src.size()) {
        const char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
        } else if (c == '%') {
            while (i < src.size() && src[i] != '\n') advance(1);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            push(std::isupper(static_cast<unsigned char>(c)) ? Tok::Variable : Tok::Ident, j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            push(Tok::Integer, j - i);
        } else if (starts(":-")) {
            push(Tok::If, 2);
        } else if (starts("!=")) {
            push(Tok::Ne, 2);
        } else if (starts("<->")) {
            push(Tok::Equiv, 3);
        } else if (starts("<=")) {
            push(Tok::Le, 2);
        } else if (starts(">=")) {
            push(Tok::Ge, 2);
        } else if (starts("->")) {
            push(Tok::Arrow, 2);
        } else {
            static constexpr std::pair<char, Tok> singles[] = {
                {'(', Tok::LParen}, {')', Tok::RParen}, {',', Tok::Comma}, {'.', Tok::Dot},   {':', Tok::Colon},
                {'{', Tok::LBrace}, {'}', Tok::RBrace}, {';', Tok::Semi},  {'=', Tok::Eq},    {'<', Tok::Lt},
                {'>', Tok::Gt},     {'&', Tok::Amp},    {'/', Tok::Slash}, {'-', Tok::Minus}, {'|', Tok::Bar},
                {'~', Tok::Tilde},  {'!', Tok::Bang},
            };
            auto it = std::find_if(std::begin(singles), std::end(singles), [c](const auto& p) { return p.first == c; });
            if (it == std::end(singles)) {
                throw ParseError({line, col, 1}, std::string("unexpected character '") + c + "'");
            }
            push(it->second, 1);
        }
    }
    out.push_back({Tok::End, "", {line, col, 1}});
    return out;
}

class Cursor {
public:
    explicit Cursor(std::string_view src) : toks_(tokenize(src)) {}

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool at(Tok t) const { return peek().kind == t; }
    bool at_ident(std::string_view word) const { return at(Tok::Ident) && peek().text == word; }

    Token take() {
        Token t = peek();
        if (pos_ < toks_.size() - 1) ++pos_;
        return t;
    }

    bool accept(Tok t) {
        if (!at(t)) return false;
        take();
        return true;
    }

    Token expect(Tok t, const char* what = nullptr) {
        if (!at(t)) fail(std::string("expected ") + (what ? what : describe(t)));
        return take();
    }

    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = peek();
        std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        throw ParseError(t.span, expected + " but found " + found);
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

std::int64_t to_int(const Token& tok, bool negative) {
    std::string digits = (negative ? "-" : "") + tok.text;
    std::int64_t value = 0;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || p != digits.data() + digits.size()) {
        throw ParseError(tok.span, "integer " + digits + " out of range");
    }
    return value;
}

// ---------------------------------------------------------------------------
// rule programs

class ProgramParser {
public:
    explicit ProgramParser(std::string_view src) : cur_(src) {}

    Program program() {
        Program p;
        while (!cur_.at(Tok::End)) statement(p);
        return p;
    }

    Atom ground_atom() {
        const Token start = cur_.peek();
        Atom a = atom();
        cur_.expect(Tok::End);
        if (!a.is_ground()) throw ParseError(start.span, "atom is not ground");
        return a;
    }

private:
    void statement(Program& p) {
        Rule r;
        if (cur_.accept(Tok::If)) {
            r.kind = HeadKind::Constraint;
            body(r);
        } else if (cur_.at(Tok::LBrace)) {
            cur_.take();
            r.kind = HeadKind::Choice;
            r.head = atom_list();
            cur_.expect(Tok::RBrace);
            if (cur_.accept(Tok::If)) body(r);
        } else {
            r.kind = HeadKind::Normal;
            r.head.push_back(atom());
            if (cur_.accept(Tok::If)) body(r);
        }
        cur_.expect(Tok::Dot, "'.' at end of statement");

        const bool bodiless = r.body.empty() && r.cards.empty() && r.builtins.empty();
        if (r.kind == HeadKind::Normal && bodiless && r.head.front().is_ground()) {
            p.facts.push_back(std::move(r.head.front()));
        } else {
            p.rules.push_back(std::move(r));
        }
    }

    void body(Rule& r) {
        if (cur_.at(Tok::Dot)) return;
        do {
            body_element(r);
        } while (cur_.accept(Tok::Comma));
    }

    void body_element(Rule& r) {
        if (cur_.at_ident("not")) {
            cur_.take();
            r.body.push_back({atom(), true});
            return;
        }
        if (cur_.at(Tok::LBrace) || (cur_.at(Tok::Integer) && cur_.peek(1).kind == Tok::LBrace)) {
            r.cards.push_back(cardinality());
            return;
        }
        if (cur_.at(Tok::Ident) && !is_comparison(cur_.peek(1).kind)) {
            r.body.push_back({atom(), false});
            return;
        }
        Comparison cmp;
        cmp.lhs = term();
        cmp.op = comparison_op();
        cmp.rhs = term();
        r.builtins.push_back(std::move(cmp));
    }

    static bool is_comparison(Tok t) { return t == Tok::Eq || t == Tok::Ne || t == Tok::Lt || t == Tok::Le; }

    CompareOp comparison_op() {
        switch (cur_.peek().kind) {
            case Tok::Eq: cur_.take(); return CompareOp::Eq;
            case Tok::Ne: cur_.take(); return CompareOp::Ne;
            case Tok::Lt: cur_.take(); return CompareOp::Lt;
            case Tok::Le: cur_.take(); return CompareOp::Le;
            default: cur_.fail("expected comparison operator (=, !=, <, <=)");
        }
    }

    CardinalityLiteral cardinality() {
        CardinalityLiteral c;
        if (cur_.at(Tok::Integer)) c.lower = to_int(cur_.take(), false);
        cur_.expect(Tok::LBrace);
        if (cur_.at_ident("not")) {
            throw ParseError(cur_.peek().span, "negated element inside cardinality literal is not supported");
        }
        c.elements = atom_list();
        cur_.expect(Tok::RBrace);
        if (cur_.at(Tok::Integer)) c.upper = to_int(cur_.take(), false);
        return c;
    }

    std::vector<Atom> atom_list() {
        std::vector<Atom> atoms;
        do {
            atoms.push_back(atom());
        } while (cur_.accept(Tok::Semi));
        return atoms;
    }

    Atom atom() {
        if (cur_.at_ident("not")) cur_.fail("expected atom");
        Token name = cur_.expect(Tok::Ident, "atom");
        Atom a{name.text, {}};
        if (cur_.accept(Tok::LParen)) {
            do {
                a.args.push_back(term());
            } while (cur_.accept(Tok::Comma));
            cur_.expect(Tok::RParen);
        }
        return a;
    }

    Term term() {
        switch (cur_.peek().kind) {
            case Tok::Ident:
                if (cur_.peek(1).kind == Tok::LParen) {
                    throw ParseError(cur_.peek().span, "function symbols are not supported");
                }
                return Term::constant(cur_.take().text);
            case Tok::Variable: return Term::variable(cur_.take().text);
            case Tok::Integer: return Term::integer(to_int(cur_.take(), false));
            case Tok::Minus:
                cur_.take();
                return Term::integer(to_int(cur_.expect(Tok::Integer), true));
            default: cur_.fail("expected term");
        }
    }

    Cursor cur_;
};

// ---------------------------------------------------------------------------
// default theories

class TheoryParser {
public:
    explicit TheoryParser(std::string_view src) : cur_(src) {}

    dl::DefaultTheory theory() {
        dl::DefaultTheory t;
        while (!cur_.at(Tok::End)) {
            if (cur_.at_ident("fact") && cur_.peek(1).kind == Tok::Colon) {
                cur_.take();
                cur_.take();
                for (auto& l : conjunction()) {
                    if (std::find(t.facts.begin(), t.facts.end(), l) == t.facts.end()) t.facts.push_back(l);
                }
            } else if (cur_.at_ident("d") && cur_.peek(1).kind == Tok::Colon) {
                cur_.take();
                cur_.take();
                t.defaults.push_back(default_rule());
            } else {
                cur_.fail("expected 'fact:' or 'd:'");
            }
            cur_.expect(Tok::Dot, "'.' at end of statement");
        }
        return t;
    }

private:
    dl::Default default_rule() {
        dl::Default d;
        if (cur_.at_ident("true") && cur_.peek(1).kind == Tok::Colon) {
            cur_.take();
        } else if (!cur_.at(Tok::Colon)) {
            d.prerequisite = conjunction();
        }
        cur_.expect(Tok::Colon);
        if (!cur_.at(Tok::Slash)) {
            do {
                d.justifications.push_back(conjunction());
            } while (cur_.accept(Tok::Comma));
        }
        cur_.expect(Tok::Slash);
        d.consequent = conjunction();
        return d;
    }

    std::vector<dl::Lit> conjunction() {
        std::vector<dl::Lit> lits;
        do {
            dl::Lit l = literal();
            if (std::find(lits.begin(), lits.end(), l) == lits.end()) lits.push_back(std::move(l));
        } while (cur_.accept(Tok::Amp));
        if (is_connective(cur_.peek().kind)) unsupported();
        return lits;
    }

    dl::Lit literal() {
        if (is_connective(cur_.peek().kind) || cur_.at(Tok::LParen) || cur_.at_ident("true") ||
            cur_.at_ident("false")) {
            unsupported();
        }
        dl::Lit l;
        if (cur_.accept(Tok::Minus)) l.positive = false;
        if (cur_.at(Tok::Minus) || cur_.at(Tok::LParen)) unsupported();
        Token name = cur_.expect(Tok::Ident, "literal");
        l.atom = name.text;
        if (cur_.accept(Tok::LParen)) {
            l.atom += '(';
            bool first = true;
            do {
                if (!first) l.atom += ',';
                first = false;
                const Token& arg = cur_.peek();
                if (arg.kind == Tok::Minus && cur_.peek(1).kind == Tok::Integer) {
                    cur_.take();
                    l.atom += "-" + cur_.take().text;
                } else if (arg.kind == Tok::Ident || arg.kind == Tok::Variable || arg.kind == Tok::Integer) {
                    l.atom += cur_.take().text;
                } else {
                    cur_.fail("expected argument");
                }
            } while (cur_.accept(Tok::Comma));
            cur_.expect(Tok::RParen);
            l.atom += ')';
        }
        return l;
    }

    static bool is_connective(Tok t) {
        return t == Tok::Bar || t == Tok::Tilde || t == Tok::Bang || t == Tok::Arrow || t == Tok::Equiv;
    }

    [[noreturn]] void unsupported() const {
        throw ParseError(cur_.peek().span, "formula outside supported fragment (conjunctions of literals only)");
    }

    Cursor cur_;
};

// ---------------------------------------------------------------------------
// graphs

struct LineTokens {
    std::size_t line = 0;
    std::vector<std::pair<std::string, std::size_t>> words;  // text, column
};

std::vector<LineTokens> split_lines(std::string_view text) {
    std::vector<LineTokens> lines;
    std::size_t line_no = 1, start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view ln = text.substr(start, end - start);
        if (!ln.empty() && ln.back() == '\r') ln.remove_suffix(1);
        LineTokens lt{line_no, {}};
        std::size_t i = 0;
        while (i < ln.size()) {
            while (i < ln.size() && (ln[i] == ' ' || ln[i] == '\t')) ++i;
            std::size_t j = i;
            while (j < ln.size() && ln[j] != ' ' && ln[j] != '\t') ++j;
            if (j > i) lt.words.emplace_back(std::string(ln.substr(i, j - i)), i + 1);
            i = j;
        }
        if (!lt.words.empty()) lines.push_back(std::move(lt));
        if (end == text.size()) break;
        start = end + 1;
        ++line_no;
    }
    return lines;
}

std::uint64_t graph_number(const LineTokens& lt, std::size_t k, const char* what) {
    const auto& [w, col] = lt.words[k];
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || p != w.data() + w.size() || v > 0xffffffffULL) {
        throw ParseError({lt.line, col, w.size()}, std::string("expected ") + what + " but found '" + w + "'");
    }
    return v;
}

}  // namespace

Program parse_program(std::string_view text) { return ProgramParser(text).program(); }

Atom parse_atom(std::string_view text) { return ProgramParser(text).ground_atom(); }

dl::DefaultTheory parse_default_theory(std::string_view text) { return TheoryParser(text).theory(); }

Graph parse_graph(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw ParseError({1, 1, 1}, "missing header 'p graph <n> <m> <directed|undirected>'");

    const LineTokens& hdr = lines.front();
    auto hdr_span = [&](std::size_t k) {
        const auto& [w, col] = hdr.words[std::min(k, hdr.words.size() - 1)];
        return SourceSpan{hdr.line, col, std::max<std::size_t>(w.size(), 1)};
    };
    if (hdr.words[0].first != "p") {
        throw ParseError(hdr_span(0), "missing header 'p graph <n> <m> <directed|undirected>'");
    }
    if (hdr.words.size() != 5 || hdr.words[1].first != "graph") {
        throw ParseError(hdr_span(1), "malformed header, expected 'p graph <n> <m> <directed|undirected>'");
    }
    const auto n = graph_number(hdr, 2, "vertex count");
    const auto m = graph_number(hdr, 3, "edge count");
    const std::string& kind = hdr.words[4].first;
    if (kind != "directed" && kind != "undirected") {
        throw ParseError(hdr_span(4), "expected 'directed' or 'undirected' but found '" + kind + "'");
    }
    const bool directed = kind == "directed";

    std::string id;
    std::vector<Edge> edges;
    std::set<Edge> seen;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const LineTokens& lt = lines[li];
        const auto& [w0, c0] = lt.words[0];
        if (w0 == "c") {
            if (lt.words.size() >= 2 && lt.words[1].first == "id") {
                if (lt.words.size() != 3) {
                    throw ParseError({lt.line, c0, 1}, "expected 'c id <identifier>'");
                }
                if (!id.empty()) throw ParseError({lt.line, c0, 1}, "duplicate 'c id' line");
                id = lt.words[2].first;
            }
            continue;
        }
        if (w0 != "e") {
            throw ParseError({lt.line, c0, w0.size()}, "expected 'e <u> <v>' or 'c' line but found '" + w0 + "'");
        }
        if (lt.words.size() != 3) throw ParseError({lt.line, c0, 1}, "expected 'e <u> <v>'");
        auto u = static_cast<Vertex>(graph_number(lt, 1, "vertex"));
        auto v = static_cast<Vertex>(graph_number(lt, 2, "vertex"));
        for (std::size_t k : {1u, 2u}) {
            const auto x = k == 1 ? u : v;
            if (x < 1 || x > n) {
                const auto& [w, col] = lt.words[k];
                throw ParseError({lt.line, col, w.size()},
                                 "vertex " + w + " out of range 1.." + std::to_string(n));
            }
        }
        if (u == v) throw ParseError({lt.line, c0, 1}, "self-loop at vertex " + std::to_string(u));
        if (edges.size() == m) {
            throw ParseError({lt.line, c0, 1}, "more edges than the " + std::to_string(m) + " declared");
        }
        Edge key = (!directed && u > v) ? Edge{v, u} : Edge{u, v};
        if (!seen.insert(key).second) throw ParseError({lt.line, c0, 1}, "duplicate edge");
        edges.push_back({u, v});
    }
    if (edges.size() != m) {
        const auto& last = lines.back();
        throw ParseError({last.line, last.words.back().second, 1},
                         "expected " + std::to_string(m) + " edges but found " + std::to_string(edges.size()));
    }
    return Graph::make(std::move(id), static_cast<Vertex>(n), directed, std::move(edges));
}

}  // namespace microasp
