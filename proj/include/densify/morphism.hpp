// ============================================================================
// morphism.hpp — pointed p-morphisms: verification and valuation pullback
// ============================================================================
//
// A p-morphism is a total map f between pointed frames satisfying
//   (pointed)  f(root) = root'
//   (forth)    x R y  implies  f(x) R' f(y)
//   (back)     f(x) R' y' implies some y with x R y and f(y) = y'.
// Nothing is assumed: verify_pmorphism reports every violation of every
// clause with witnesses, and the valuation pullback refuses maps that do
// not verify.  Along a verified f with V'(p) = f^-1[V(p)], every source
// world is bisimilar to its image, and worlds sharing an image are
// bisimilar to each other.
// ============================================================================

#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "densify/model.hpp"

namespace densify {

struct PMorphism {
    PointedModel source;
    PointedModel target;
    std::vector<int> map;  // source world -> target world, total
};

struct PMorphismReport {
    bool pointed_ok = true;
    std::vector<Edge> forth_violations;  // source edges (x, y) with f(x) not R' f(y)
    std::vector<Edge> back_violations;   // (x, y') with f(x) R' y' but no witness

    bool ok() const { return pointed_ok && forth_violations.empty() && back_violations.empty(); }
    std::string describe(const PMorphism& f) const;
};

// Clause checks on raw parts; used internally where copying models into a
// PMorphism per step would be wasteful.
PMorphismReport verify_pmorphism_parts(const PointedModel& source, const PointedModel& target,
                                       const std::vector<int>& map);

PMorphismReport verify_pmorphism(const PMorphism& f);

// V'(p) := f^-1[V(p)] for each p in the given target valuation; refuses
// (DomainError) unless f verifies.
std::map<std::string, std::set<int>> pullback_valuation(
    const PMorphism& f, const std::map<std::string, std::set<int>>& target_valuation);

// Source frame carrying the pullback of the target's own valuation.
PointedModel pullback_model(const PMorphism& f);

// Packages a bounded unraveling as a morphism into its input model.
PMorphism unravel_pmorphism(const Unraveling& u, const PointedModel& target);

}  // namespace densify
