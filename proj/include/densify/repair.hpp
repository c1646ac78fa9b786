// ============================================================================
// repair.hpp — defect-driven repair of pointed frames over a base Phi-frame
// ============================================================================
//
// A RepairState carries a frame under construction together with a verified
// p-morphism f into a fixed base Phi-frame.  Two kinds of defect are
// detected and repaired, both by adding fresh worlds whose only access path
// runs through the defect's source, so new depths are forced and old depths
// never move:
//
//   Type2 (x, y):      x R y but no successor y' of x at depth d(x)+1 with
//                      f(y') = f(y).  Repaired by one fresh duplicate u of y
//                      with edges (x,u) and (u,c) for every y R c.
//
//   Type3 (x, z, m>n): x R^m z but no chain x R w1 R ... R w_{n-1} R z with
//                      d(wj) = d(x)+j.  Repaired by pushing an m-chain
//                      through f, finding an n-chain in the base, pulling it
//                      back along the back clause, and grafting a fresh
//                      graded copy u1..u_{n-1} of the pulled-back chain.
//
// All postconditions (f stays a verified p-morphism, new-point depth
// equations, depth preservation on old worlds, resolution of the repaired
// defect) are enforced after every step and raise InvariantViolation on
// failure.  The bounded scheduler run_repair pops defects FIFO over their
// discovery order; once resolved, a defect never reappears (checked), so
// the scheduling is fair.  Saturation within a budget is reported, never
// assumed: runs that hit max_steps return Truncated with a defect census.
// ============================================================================

#pragma once

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "densify/model.hpp"
#include "densify/morphism.hpp"

namespace densify {

struct Type2Defect {
    int x;
    int y;
};

struct Type3Defect {
    int x;
    int z;
    Axiom axiom;
};

using Defect = std::variant<Type2Defect, Type3Defect>;

std::string defect_key(const Defect& d);

struct RepairState {
    PointedModel current;
    PointedModel base;
    std::vector<int> f;  // current -> base
    DepthMap depths;     // of current
    int fresh_counter = 1;
    int steps = 0;
};

// Start from the base itself with f the identity (always a p-morphism).
RepairState seed_state_identity(const PointedModel& base);

// Start from a bounded unraveling whose bound-depth leaves are closed:
// every missing back-witness at a leaf is supplied by an edge to the
// earliest tree node carrying the required image.  Closure edges only
// lengthen paths, so tree depths are unchanged, and the resulting map is a
// genuine verified p-morphism.  The effective bound is max(depth_bound,
// base height) so a closure target always exists.
RepairState seed_state_unravel(const PointedModel& base, int depth_bound);

bool is_type2_defect(const RepairState& s, int x, int y);
bool is_type3_defect(const RepairState& s, int x, int z, const Axiom& axiom);
bool is_defect(const RepairState& s, const Defect& d);

// Does some x R w1 R ... R w_{n-1} R z with d(wj) = d(x)+j exist?
bool graded_chain_exists(const PointedModel& m, const DepthMap& depths, int x, int z, int n);

// The middles w1..w_{n-1} of such a chain, if any.
std::optional<std::vector<int>> graded_chain_find(const PointedModel& m, const DepthMap& depths,
                                                  int x, int z, int n);

// All Type2 defects with d(x) < depth_budget and all Type3 defects with
// d(x) <= depth_budget - m, Type2 block first, each block sorted by world
// ids (then axiom).
std::vector<Defect> find_defects(const RepairState& s, const AxiomSet& phi, int depth_budget);

RepairState repair_type2(const RepairState& s, const Type2Defect& d);
RepairState repair_type3(const RepairState& s, const Type3Defect& d);
RepairState repair(const RepairState& s, const Defect& d);

enum class RepairStatus { Saturated, Truncated };

struct DefectCensus {
    // (defect type, d(x)) -> count of unresolved in-budget defects
    std::map<std::pair<std::string, int>, int> counts;
    int total() const;
};

struct RepairRun {
    RepairState state;
    RepairStatus status = RepairStatus::Saturated;
    int steps = 0;
    DefectCensus unresolved;
};

RepairRun run_repair(const PointedModel& base, const AxiomSet& phi, int depth_budget,
                     int max_steps);
RepairRun run_repair_from(RepairState seed, const AxiomSet& phi, int depth_budget, int max_steps);

// ── Representation-lemma conditions ─────────────────────────────────────────
//
// Condition (2): every edge x R y with d(x) < k has a successor y' of x at
// depth d(x)+1 bisimilar to y (bisimilarity within the model, using its own
// valuation).  Condition (3): every x R^m z with d(x) <= k-m has a graded
// n-chain.  Strict mode drops the depth restrictions.

struct Cond2Violation {
    int x;
    int y;
};

struct Cond3Violation {
    int x;
    int z;
    Axiom axiom;
};

struct ConditionReport {
    std::vector<Cond2Violation> cond2;
    std::vector<Cond3Violation> cond3;
    // The report used the weakest instance of ~ (no valuation); supply a
    // valuation when condition (2) is meant to be model-level.
    bool empty_valuation = false;
    bool ok() const { return cond2.empty() && cond3.empty(); }
};

ConditionReport verify_bounded_conditions(const PointedModel& m, const AxiomSet& phi, int k);
ConditionReport verify_global_conditions(const PointedModel& m, const AxiomSet& phi);

}  // namespace densify
