// ============================================================================
// model.hpp — pointed Kripke models and frame-level operations
// ============================================================================
//
// A PointedModel is a finite directed graph over string-named worlds with a
// distinguished root and a valuation (prop -> set of worlds).  Worlds are
// indexed densely in insertion order; all graph operations work on indices
// and ids appear only at the boundary.  Adjacency lists are kept sorted, so
// traversals are deterministic.
//
// Frame operations here: k-step relations R^k, depth maps (BFS from the
// root), rootedness, point-generated submodels, the per-axiom frame
// condition  forall x,y (x R^m y -> x R^n y),  a self-loop saturation that
// turns any frame into one satisfying a set of such conditions, bounded
// tree unraveling, and Kripke satisfaction.
// ============================================================================

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "densify/axiom.hpp"
#include "densify/formula.hpp"

namespace densify {

using Edge = std::pair<int, int>;
using Relation = std::vector<Edge>;  // sorted, duplicate-free

class PointedModel {
public:
    PointedModel() = default;
    PointedModel(const std::vector<std::string>& worlds, const std::string& root,
                 const std::vector<std::pair<std::string, std::string>>& edges,
                 const std::map<std::string, std::set<std::string>>& valuation = {});

    int add_world(const std::string& id);  // rejects duplicates and empty ids
    void add_edge(int from, int to);       // idempotent
    void remove_edge(int from, int to);
    void set_root(int w);
    void set_valuation(const std::string& prop, std::set<int> worlds);
    void set_valuation_by_ids(const std::map<std::string, std::set<std::string>>& valuation);
    void clear_valuation();

    int size() const { return static_cast<int>(ids_.size()); }
    int root() const { return root_; }
    const std::string& id(int w) const { return ids_.at(static_cast<std::size_t>(w)); }
    const std::vector<std::string>& ids() const { return ids_; }
    int index(const std::string& id) const;  // throws DomainError on unknown id
    std::optional<int> try_index(const std::string& id) const;
    bool has_world(const std::string& id) const { return index_.count(id) != 0; }

    const std::vector<int>& successors(int w) const { return succ_.at(static_cast<std::size_t>(w)); }
    bool has_edge(int from, int to) const;
    int edge_count() const { return edge_count_; }
    Relation edges() const;

    const std::map<std::string, std::set<int>>& valuation() const { return val_; }
    std::map<std::string, std::set<std::string>> valuation_by_ids() const;
    bool holds(const std::string& prop, int w) const;
    std::set<std::string> valuation_props() const;

private:
    std::vector<std::string> ids_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<int>> succ_;
    int root_ = -1;
    std::map<std::string, std::set<int>> val_;
    int edge_count_ = 0;
};

// ── k-step relations ─────────────────────────────────────────────────────────

// R^k with R^0 the identity and R^{k+1} = R^k ∘ R.
Relation k_step(const PointedModel& m, int k);

// Worlds reachable from each source in exactly k steps, as per-source sets.
std::vector<std::vector<char>> k_step_sets(const PointedModel& m, int k);

// ── depth ────────────────────────────────────────────────────────────────────

struct DepthMap {
    std::vector<int> depth;  // by world index
    int max_depth = 0;
    int of(int w) const { return depth.at(static_cast<std::size_t>(w)); }
};

// Shortest-path distance from the root; throws DomainError if any world is
// unreachable.
DepthMap depth_map(const PointedModel& m);

bool is_rooted(const PointedModel& m);

// Restriction of m to the part reachable from w, rooted at w.
PointedModel generated_submodel(const PointedModel& m, int w);
PointedModel generated_submodel(const PointedModel& m, const std::string& world_id);

// ── axiom frame conditions ───────────────────────────────────────────────────

// Pairs (x, y) with x R^m y but not x R^n y, sorted by (id(x), id(y)).
std::vector<Edge> check_axiom_condition(const PointedModel& m, const Axiom& a);

bool satisfies_axioms(const PointedModel& m, const AxiomSet& phi);

// Adds self-loops at violation sources until every condition in phi holds.
// A world with a self-loop can pad any m-path to an n-path, so each added
// loop permanently clears all violations at that source; at most |W| loops
// are added.  Generator-only: the result is a superframe, not a quotient.
PointedModel saturate_to_phi_frame(PointedModel m, const AxiomSet& phi);

// ── unraveling ───────────────────────────────────────────────────────────────

struct Unraveling {
    PointedModel tree;       // valuation pulled back along image
    std::vector<int> image;  // tree world -> input world
};

// Tree of all paths from the root of length <= depth_bound; node ids join
// the path's world ids with '.' (uniquified with a '~k' suffix if an input
// id already uses the joined spelling).  The image map is a homomorphism,
// pointed, and satisfies the back clause at every node of depth <
// depth_bound; every tree edge increases depth by exactly one.
Unraveling unravel(const PointedModel& m, int depth_bound);

// ── satisfaction ─────────────────────────────────────────────────────────────

// Characteristic vector of {w : m,w |= f}, computed bottom-up over
// subformulas.  Variables absent from the valuation are false everywhere.
std::vector<char> satisfying_worlds(const PointedModel& m, const Formula& f);

bool model_check(const PointedModel& m, int world, const Formula& f);
bool model_check(const PointedModel& m, const std::string& world_id, const Formula& f);

}  // namespace densify
