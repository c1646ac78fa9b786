// ============================================================================
// formula.hpp — basic modal language: AST, parser, printer, measures
// ============================================================================
//
// Formulas are immutable trees behind shared nodes.  The primitive
// connectives are Falsum, Prop, Not, Or, Diamond; And, Implies and Box are
// kept as first-class nodes (printed counterexamples stay close to user
// input) but their semantics and modal depth agree with the definitional
// expansion into the primitive fragment.
//
// Concrete syntax (ASCII):
//   false | ident | ~f | <>f | []f | f & g | f | g | f -> g | (f)
// Unary operators bind tightest, then &, then |, then -> (right-assoc).
// Identifiers: [a-z][a-zA-Z0-9_]*.  Whitespace is insignificant.
// ============================================================================

#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace densify {

enum class Conn : std::uint8_t { Falsum, Prop, Not, Or, And, Implies, Diamond, Box };

class Formula {
public:
    Formula() : Formula(falsum()) {}

    static Formula falsum();
    static Formula prop(std::string name);
    static Formula negation(Formula a);
    static Formula disjunction(Formula a, Formula b);
    static Formula conjunction(Formula a, Formula b);
    static Formula implication(Formula a, Formula b);
    static Formula diamond(Formula a);
    static Formula box(Formula a);

    // n-fold modal prefixes, e.g. diamonds(2, p) = <><>p
    static Formula diamonds(int n, Formula a);
    static Formula boxes(int n, Formula a);

    Conn conn() const { return node_->conn; }
    const std::string& name() const;   // Prop only
    Formula left() const;              // first child
    Formula right() const;             // second child (binary only)
    bool is_binary() const;
    bool is_unary() const;

    int modal_depth() const { return node_->md; }
    std::size_t hash() const { return node_->hash; }
    std::size_t node_count() const { return node_->size; }

    bool operator==(const Formula& other) const;
    bool operator!=(const Formula& other) const { return !(*this == other); }

    std::string to_string() const;

private:
    struct Node {
        Conn conn;
        std::string name;                   // Prop
        std::shared_ptr<const Node> lhs;
        std::shared_ptr<const Node> rhs;
        int md = 0;
        std::size_t hash = 0;
        std::size_t size = 1;
    };
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Formula make(Conn c, std::string name, const Formula* a, const Formula* b);
    static bool equal(const Node* a, const Node* b);

    std::shared_ptr<const Node> node_;
};

struct FormulaHash {
    std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Thrown on malformed concrete syntax; position is a 0-based byte offset.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

Formula parse_formula(std::string_view text);

int modal_depth(const Formula& f);

// All subtrees of f including f itself, deduplicated, in deterministic
// postorder of first occurrence.
std::vector<Formula> subformulas(const Formula& f);

std::set<std::string> prop_vars(const Formula& f);

// Rewrites And/Implies/Box into the primitive {false, ~, |, <>} fragment.
Formula expand_derived(const Formula& f);

}  // namespace densify
