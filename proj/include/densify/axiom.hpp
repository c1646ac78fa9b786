// Convergence axioms <>^m p -> <>^n p with n > m > 1, and finite sets of them.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "densify/formula.hpp"

namespace densify {

// Raised for ill-formed domain inputs (bad axiom shape, unknown world ids, ...).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The pair (m, n) of <>^m p -> <>^n p.  Only n > m > 1 is representable.
class Axiom {
public:
    Axiom(int m, int n) : m_(m), n_(n) {
        if (!(n > m && m > 1))
            throw DomainError("axiom requires n > m > 1, got m=" + std::to_string(m) +
                              " n=" + std::to_string(n));
    }

    int m() const { return m_; }
    int n() const { return n_; }

    Formula to_formula(const std::string& var = "p") const {
        Formula p = Formula::prop(var);
        return Formula::implication(Formula::diamonds(m_, p), Formula::diamonds(n_, p));
    }

    std::string to_string() const { return std::to_string(m_) + ">" + std::to_string(n_); }

    auto operator<=>(const Axiom& other) const = default;

private:
    int m_;
    int n_;
};

// Converts the box form []^n p -> []^m p (antecedent_boxes = n,
// consequent_boxes = m) into the equivalent diamond form <>^m p -> <>^n p.
Axiom box_to_diamond(int antecedent_boxes, int consequent_boxes);

// Duplicate-free, sorted; set semantics.
class AxiomSet {
public:
    AxiomSet() = default;
    explicit AxiomSet(std::vector<Axiom> axioms);

    bool empty() const { return axioms_.empty(); }
    std::size_t size() const { return axioms_.size(); }
    auto begin() const { return axioms_.begin(); }
    auto end() const { return axioms_.end(); }
    const Axiom& operator[](std::size_t i) const { return axioms_[i]; }

    // Largest budget k for which the Type-3 depth range {d <= k - m} is
    // empty for every axiom, i.e. min m over the set minus one.
    int min_m() const;

    std::string to_string() const;

    bool operator==(const AxiomSet&) const = default;

private:
    std::vector<Axiom> axioms_;
};

// Parses the CLI syntax "2>3,2>4" (each pair m>n meaning <>^m p -> <>^n p).
AxiomSet parse_axiom_set(const std::string& spec);

}  // namespace densify
