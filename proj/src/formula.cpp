#include "densify/formula.hpp"

#include <cctype>
#include <unordered_set>
#include <utility>

namespace densify {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::make(Conn c, std::string name, const Formula* a, const Formula* b) {
    auto n = std::make_shared<Node>();
    n->conn = c;
    n->name = std::move(name);
    if (a) n->lhs = a->node_;
    if (b) n->rhs = b->node_;

    const int la = a ? a->modal_depth() : 0;
    const int lb = b ? b->modal_depth() : 0;
    switch (c) {
        case Conn::Falsum:
        case Conn::Prop: n->md = 0; break;
        case Conn::Not: n->md = la; break;
        case Conn::Or:
        case Conn::And:
        case Conn::Implies: n->md = la > lb ? la : lb; break;
        case Conn::Diamond:
        case Conn::Box: n->md = la + 1; break;
    }
    n->size = 1 + (a ? a->node_count() : 0) + (b ? b->node_count() : 0);

    std::size_t h = static_cast<std::size_t>(c) * 0x100000001b3ULL + 0xcbf29ce484222325ULL;
    h = mix(h, std::hash<std::string>{}(n->name));
    if (n->lhs) h = mix(h, n->lhs->hash);
    if (n->rhs) h = mix(h, n->rhs->hash);
    n->hash = h;
    return Formula(std::move(n));
}

Formula Formula::falsum() { return make(Conn::Falsum, "", nullptr, nullptr); }
Formula Formula::prop(std::string name) { return make(Conn::Prop, std::move(name), nullptr, nullptr); }
Formula Formula::negation(Formula a) { return make(Conn::Not, "", &a, nullptr); }
Formula Formula::disjunction(Formula a, Formula b) { return make(Conn::Or, "", &a, &b); }
Formula Formula::conjunction(Formula a, Formula b) { return make(Conn::And, "", &a, &b); }
Formula Formula::implication(Formula a, Formula b) { return make(Conn::Implies, "", &a, &b); }
Formula Formula::diamond(Formula a) { return make(Conn::Diamond, "", &a, nullptr); }
Formula Formula::box(Formula a) { return make(Conn::Box, "", &a, nullptr); }

Formula Formula::diamonds(int n, Formula a) {
    Formula f = a;
    for (int i = 0; i < n; ++i) f = diamond(f);
    return f;
}

Formula Formula::boxes(int n, Formula a) {
    Formula f = a;
    for (int i = 0; i < n; ++i) f = box(f);
    return f;
}

const std::string& Formula::name() const {
    if (node_->conn != Conn::Prop) throw std::logic_error("Formula::name on non-Prop node");
    return node_->name;
}

Formula Formula::left() const {
    if (!node_->lhs) throw std::logic_error("Formula::left on leaf node");
    return Formula(node_->lhs);
}

Formula Formula::right() const {
    if (!node_->rhs) throw std::logic_error("Formula::right on non-binary node");
    return Formula(node_->rhs);
}

bool Formula::is_binary() const {
    Conn c = node_->conn;
    return c == Conn::Or || c == Conn::And || c == Conn::Implies;
}

bool Formula::is_unary() const {
    Conn c = node_->conn;
    return c == Conn::Not || c == Conn::Diamond || c == Conn::Box;
}

bool Formula::equal(const Node* a, const Node* b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->hash != b->hash || a->conn != b->conn || a->name != b->name) return false;
    return equal(a->lhs.get(), b->lhs.get()) && equal(a->rhs.get(), b->rhs.get());
}

bool Formula::operator==(const Formula& other) const {
    return equal(node_.get(), other.node_.get());
}

// ── printing ────────────────────────────────────────────────────────────────
// Precedence: -> (1, right) < | (2, left) < & (3, left) < unary (4).
// Parentheses are emitted only where reparsing would otherwise regroup.

namespace {

int precedence(Conn c) {
    switch (c) {
        case Conn::Implies: return 1;
        case Conn::Or: return 2;
        case Conn::And: return 3;
        default: return 4;
    }
}

void print_rec(const Formula& f, int min_prec, std::string& out) {
    switch (f.conn()) {
        case Conn::Falsum: out += "false"; return;
        case Conn::Prop: out += f.name(); return;
        case Conn::Not:
            out += '~';
            print_rec(f.left(), 4, out);
            return;
        case Conn::Diamond:
            out += "<>";
            print_rec(f.left(), 4, out);
            return;
        case Conn::Box:
            out += "[]";
            print_rec(f.left(), 4, out);
            return;
        default: break;
    }
    const int prec = precedence(f.conn());
    const bool paren = prec < min_prec;
    if (paren) out += '(';
    const char* op = f.conn() == Conn::Implies ? " -> " : (f.conn() == Conn::Or ? " | " : " & ");
    if (f.conn() == Conn::Implies) {
        print_rec(f.left(), prec + 1, out);
        out += op;
        print_rec(f.right(), prec, out);  // right-assoc
    } else {
        print_rec(f.left(), prec, out);   // left-assoc
        out += op;
        print_rec(f.right(), prec + 1, out);
    }
    if (paren) out += ')';
}

}  // namespace

std::string Formula::to_string() const {
    std::string out;
    print_rec(*this, 0, out);
    return out;
}

// ── parsing ─────────────────────────────────────────────────────────────────

namespace {

struct Lexer {
    enum class Tok { Ident, False, Not, Diamond, Box, And, Or, Implies, LParen, RParen, End };

    std::string_view text;
    std::size_t pos = 0;
    Tok tok = Tok::End;
    std::string ident;
    std::size_t tok_pos = 0;

    explicit Lexer(std::string_view t) : text(t) { advance(); }

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        throw ParseError("syntax error at position " + std::to_string(at) + ": " + msg, at);
    }

    void advance() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        tok_pos = pos;
        if (pos >= text.size()) {
            tok = Tok::End;
            return;
        }
        const char c = text[pos];
        if (c >= 'a' && c <= 'z') {
            std::size_t end = pos + 1;
            while (end < text.size()) {
                const char d = text[end];
                if (std::isalnum(static_cast<unsigned char>(d)) || d == '_') ++end;
                else break;
            }
            ident.assign(text.substr(pos, end - pos));
            pos = end;
            tok = ident == "false" ? Tok::False : Tok::Ident;
            return;
        }
        switch (c) {
            case '~': ++pos; tok = Tok::Not; return;
            case '(': ++pos; tok = Tok::LParen; return;
            case ')': ++pos; tok = Tok::RParen; return;
            case '&': ++pos; tok = Tok::And; return;
            case '|': ++pos; tok = Tok::Or; return;
            case '<':
                if (pos + 1 < text.size() && text[pos + 1] == '>') {
                    pos += 2;
                    tok = Tok::Diamond;
                    return;
                }
                fail("expected '<>'", pos);
            case '[':
                if (pos + 1 < text.size() && text[pos + 1] == ']') {
                    pos += 2;
                    tok = Tok::Box;
                    return;
                }
                fail("expected '[]'", pos);
            case '-':
                if (pos + 1 < text.size() && text[pos + 1] == '>') {
                    pos += 2;
                    tok = Tok::Implies;
                    return;
                }
                fail("expected '->'", pos);
            default:
                fail(std::string("unexpected character '") + c + "'", pos);
        }
    }
};

struct Parser {
    Lexer lx;

    explicit Parser(std::string_view t) : lx(t) {}

    Formula parse() {
        Formula f = implied();
        if (lx.tok != Lexer::Tok::End) lx.fail("trailing input", lx.tok_pos);
        return f;
    }

    Formula implied() {
        Formula lhs = ordis();
        if (lx.tok == Lexer::Tok::Implies) {
            lx.advance();
            return Formula::implication(lhs, implied());
        }
        return lhs;
    }

    Formula ordis() {
        Formula f = andis();
        while (lx.tok == Lexer::Tok::Or) {
            lx.advance();
            f = Formula::disjunction(f, andis());
        }
        return f;
    }

    Formula andis() {
        Formula f = unary();
        while (lx.tok == Lexer::Tok::And) {
            lx.advance();
            f = Formula::conjunction(f, unary());
        }
        return f;
    }

    Formula unary() {
        switch (lx.tok) {
            case Lexer::Tok::Not: lx.advance(); return Formula::negation(unary());
            case Lexer::Tok::Diamond: lx.advance(); return Formula::diamond(unary());
            case Lexer::Tok::Box: lx.advance(); return Formula::box(unary());
            default: return atom();
        }
    }

    Formula atom() {
        switch (lx.tok) {
            case Lexer::Tok::False: lx.advance(); return Formula::falsum();
            case Lexer::Tok::Ident: {
                Formula f = Formula::prop(lx.ident);
                lx.advance();
                return f;
            }
            case Lexer::Tok::LParen: {
                lx.advance();
                Formula f = implied();
                if (lx.tok != Lexer::Tok::RParen) lx.fail("expected ')'", lx.tok_pos);
                lx.advance();
                return f;
            }
            case Lexer::Tok::End: lx.fail("unexpected end of input", lx.tok_pos);
            default: lx.fail("expected a formula", lx.tok_pos);
        }
    }
};

}  // namespace

Formula parse_formula(std::string_view text) {
    return Parser(text).parse();
}

int modal_depth(const Formula& f) { return f.modal_depth(); }

std::vector<Formula> subformulas(const Formula& f) {
    std::vector<Formula> out;
    std::unordered_set<Formula, FormulaHash> seen;
    // postorder: children before parents, each subtree once
    auto visit = [&](auto&& self, const Formula& g) -> void {
        if (seen.count(g)) return;
        if (g.is_unary()) {
            self(self, g.left());
        } else if (g.is_binary()) {
            self(self, g.left());
            self(self, g.right());
        }
        if (seen.insert(g).second) out.push_back(g);
    };
    visit(visit, f);
    return out;
}

std::set<std::string> prop_vars(const Formula& f) {
    std::set<std::string> out;
    auto visit = [&](auto&& self, const Formula& g) -> void {
        switch (g.conn()) {
            case Conn::Prop: out.insert(g.name()); return;
            case Conn::Falsum: return;
            default:
                self(self, g.left());
                if (g.is_binary()) self(self, g.right());
        }
    };
    visit(visit, f);
    return out;
}

Formula expand_derived(const Formula& f) {
    switch (f.conn()) {
        case Conn::Falsum:
        case Conn::Prop: return f;
        case Conn::Not: return Formula::negation(expand_derived(f.left()));
        case Conn::Or: return Formula::disjunction(expand_derived(f.left()), expand_derived(f.right()));
        case Conn::Diamond: return Formula::diamond(expand_derived(f.left()));
        case Conn::And:
            // a & b  =  ~(~a | ~b)
            return Formula::negation(Formula::disjunction(
                Formula::negation(expand_derived(f.left())),
                Formula::negation(expand_derived(f.right()))));
        case Conn::Implies:
            // a -> b  =  ~a | b
            return Formula::disjunction(Formula::negation(expand_derived(f.left())),
                                        expand_derived(f.right()));
        case Conn::Box:
            // []a  =  ~<>~a
            return Formula::negation(Formula::diamond(Formula::negation(expand_derived(f.left()))));
    }
    throw std::logic_error("unreachable");
}

}  // namespace densify
