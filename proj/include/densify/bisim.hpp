// ============================================================================
// bisim.hpp — full bisimilarity and depth-indexed k-bisimilarity
// ============================================================================
//
// k-bisimilarity is stratified: ~0 is agreement on the variable set X, and
// ~(k+1) refines against ~k with the usual forth/back clauses plus the ~0
// base.  Each level depends only on the previous one, so the table is built
// in a single bottom-up pass.  Full bisimilarity is the greatest fixpoint of
// the same refinement step and is computed by iterating it to stability.
// ============================================================================

#pragma once

#include <set>
#include <string>
#include <vector>

#include "densify/model.hpp"

namespace densify {

// Boolean |W| x |W'| relation between two models' worlds.
struct BisimMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<char> bits;

    bool at(int i, int j) const {
        return bits[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) +
                    static_cast<std::size_t>(j)] != 0;
    }
    void set(int i, int j, bool v) {
        bits[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) +
             static_cast<std::size_t>(j)] = v ? 1 : 0;
    }
    bool operator==(const BisimMatrix&) const = default;
};

struct KBisimTable {
    std::vector<BisimMatrix> levels;  // levels[k] = ~k, k = 0..K
    const BisimMatrix& level(int k) const { return levels.at(static_cast<std::size_t>(k)); }
    int max_level() const { return static_cast<int>(levels.size()) - 1; }
};

// ~0..~K between m and m2 over the variables in vars.
KBisimTable k_bisim_table(const PointedModel& m, const PointedModel& m2,
                          const std::set<std::string>& vars, int max_level);

// Greatest bisimulation between m and m2 over the union of the variables
// occurring in either valuation (absent variables are uniformly false, so
// agreement outside the union is automatic).
BisimMatrix full_bisim(const PointedModel& m, const PointedModel& m2);

struct Partition {
    std::vector<std::vector<int>> classes;  // members ascending
    std::vector<int> class_of;              // world -> class index, -1 if absent
};

// Quotient of W by ~k (m against itself); checks that ~k really is an
// equivalence relation.
Partition classes_mod_k_bisim(const PointedModel& m, const std::set<std::string>& vars, int k);

// Groups the worlds in `members` by an equivalence matrix restricted to them.
Partition partition_by(const BisimMatrix& rel, const std::vector<int>& members, int world_count);

}  // namespace densify
