// ============================================================================
// filtration.hpp — depth-stratified filtration quotient and its verifiers
// ============================================================================
//
// Given a rooted model M, a formula phi with k = md(phi) and X = Prop(phi),
// worlds of depth <= k are partitioned by
//
//     x == y   iff   d(x) = d(y)  and  x ~_{k-d(x)} y   (over X),
//
// and the quotient frame relates |x| R^f |y| iff d(x) = k, or d(x) < k,
// d(y) <= d(x)+1 and some successor y' of x has y' ~_{k-d(x)-1} y (y'
// ranging over all of the model, not just |y|).  The quotient valuation
// restricts to X.  Building the quotient requires the representation-lemma
// conditions to hold at the depths the construction consumes (bounded mode;
// strict mode checks them globally) and refuses loudly otherwise.
//
// Everything the correctness argument needs is re-checked on the concrete
// result by four verifiers: representative independence of R^f (against the
// defining formula, for every representative pair, plus class homogeneity),
// the axiom frame conditions on the quotient, the homomorphism property of
// w -> |w|, and the truth lemma for all subformulas within their depth
// allowance.  On valid inputs all four reports are empty; each verifier is
// sensitive enough that corrupting V^f, R^f, or the class map trips at
// least one of them.
// ============================================================================

#pragma once

#include <set>
#include <string>
#include <vector>

#include "densify/bisim.hpp"
#include "densify/model.hpp"
#include "densify/repair.hpp"

namespace densify {

class FiltrationPreconditionError : public std::runtime_error {
public:
    FiltrationPreconditionError(const std::string& what, ConditionReport report)
        : std::runtime_error(what), report_(std::move(report)) {}
    const ConditionReport& report() const { return report_; }

private:
    ConditionReport report_;
};

struct FiltrationResult {
    PointedModel input;
    Formula phi;
    int k = 0;
    std::set<std::string> vars;        // Prop(phi)
    DepthMap depths;                   // of input
    std::vector<int> bounded;          // worlds with d <= k, ascending
    Partition classes;                 // over input worlds; -1 outside W<=k
    std::vector<int> class_depth;      // per class
    PointedModel quotient;             // worlds "q0".."qN-1", rooted at |r|
    KBisimTable table;                 // ~0..~k over vars, input vs itself
};

// Classes of == on W<=k; thin wrapper over the construction below.
Partition stratified_equiv(const PointedModel& m, const Formula& phi);

// Builds the quotient; throws FiltrationPreconditionError when the bounded
// (or, with strict, global) representation conditions fail, DomainError on
// a non-rooted input.
FiltrationResult build_filtration(const PointedModel& m, const Formula& phi,
                                  const AxiomSet& axioms, bool strict = false);

// ── verifiers ────────────────────────────────────────────────────────────────

struct IndependenceViolation {
    int class_x;
    int class_y;
    int rep_x;
    int rep_y;
    bool decided;  // what the defining formula says for these representatives
};

struct HomogeneityViolation {
    int cls;
    int a;
    int b;
};

struct IndependenceReport {
    std::vector<IndependenceViolation> mismatches;
    std::vector<HomogeneityViolation> inhomogeneous;
    bool ok() const { return mismatches.empty() && inhomogeneous.empty(); }
};

struct QuotientFrameReport {
    std::vector<std::pair<Axiom, std::vector<Edge>>> violations;  // per axiom
    bool ok() const;
};

struct HomomorphismReport {
    std::vector<Edge> missing;  // input edges (x, y) in W<=k with no |x| R^f |y|
    bool ok() const { return missing.empty(); }
};

struct TruthLemmaViolation {
    int world;
    Formula psi;
    bool input_value;
};

struct TruthLemmaReport {
    std::vector<TruthLemmaViolation> disagreements;
    bool ok() const { return disagreements.empty(); }
};

IndependenceReport verify_representative_independence(const FiltrationResult& f);
QuotientFrameReport verify_quotient_frame(const FiltrationResult& f, const AxiomSet& axioms);
HomomorphismReport verify_homomorphism(const FiltrationResult& f);
TruthLemmaReport verify_truth_lemma(const FiltrationResult& f);

}  // namespace densify
