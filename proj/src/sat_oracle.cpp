#include "densify/sat_oracle.hpp"

#include <cstdint>
#include <vector>

namespace densify {

namespace {

using Mask = std::uint64_t;

bool mask_edge(Mask mask, int size, int from, int to) {
    return (mask >> (from * size + to)) & 1u;
}

// Swaps non-root worlds a and b in the adjacency mask.
Mask swap_worlds(Mask mask, int size, int a, int b) {
    Mask out = 0;
    auto rename = [&](int w) { return w == a ? b : (w == b ? a : w); };
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
            if (mask_edge(mask, size, i, j))
                out |= Mask{1} << (rename(i) * size + rename(j));
    return out;
}

// Keeps only local minima under adjacent transpositions of non-root worlds;
// every isomorphism orbit retains at least one representative, so this only
// skips duplicates.
bool canonical_enough(Mask mask, int size) {
    for (int a = 1; a + 1 < size; ++a)
        if (swap_worlds(mask, size, a, a + 1) < mask) return false;
    return true;
}

PointedModel frame_from_mask(Mask mask, int size) {
    PointedModel m;
    for (int w = 0; w < size; ++w) m.add_world("w" + std::to_string(w));
    m.set_root(0);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j)
            if (mask_edge(mask, size, i, j)) m.add_edge(i, j);
    return m;
}

}  // namespace

std::optional<PointedModel> sat_oracle(const Formula& phi, const AxiomSet& axioms, int max_size) {
    if (max_size < 1 || max_size > 5)
        throw DomainError("sat_oracle supports 1..5 worlds, got " + std::to_string(max_size));
    const std::set<std::string> vars = prop_vars(phi);
    const std::vector<std::string> var_list(vars.begin(), vars.end());

    for (int size = 1; size <= max_size; ++size) {
        const Mask mask_end = Mask{1} << (size * size);
        for (Mask mask = 0; mask < mask_end; ++mask) {
            if (!canonical_enough(mask, size)) continue;
            PointedModel frame = frame_from_mask(mask, size);
            if (!is_rooted(frame)) continue;
            if (!satisfies_axioms(frame, axioms)) continue;

            const Mask val_end = Mask{1} << (size * static_cast<int>(var_list.size()));
            for (Mask val = 0; val < val_end; ++val) {
                PointedModel model = frame;
                for (std::size_t v = 0; v < var_list.size(); ++v) {
                    std::set<int> members;
                    for (int w = 0; w < size; ++w)
                        if ((val >> (v * static_cast<std::size_t>(size) +
                                     static_cast<std::size_t>(w))) &
                            1u)
                            members.insert(w);
                    if (!members.empty()) model.set_valuation(var_list[v], std::move(members));
                }
                if (model_check(model, 0, phi)) return model;
            }
        }
    }
    return std::nullopt;
}

}  // namespace densify
