// Brute-force satisfiability over finite Phi-frames, used as an independent
// cross-check.  Enumerates rooted pointed frames of 1..max_size worlds in a
// fixed total order (edge bitmask ascending per size, with a cheap
// adjacent-transposition canonicity filter to skip some isomorphic
// duplicates), keeps those satisfying every axiom condition, enumerates
// valuations over Prop(phi), and returns the first model whose root
// satisfies phi.

#pragma once

#include <optional>

#include "densify/model.hpp"

namespace densify {

std::optional<PointedModel> sat_oracle(const Formula& phi, const AxiomSet& axioms, int max_size);

}  // namespace densify
