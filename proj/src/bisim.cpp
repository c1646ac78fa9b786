#include "densify/bisim.hpp"

#include <algorithm>

#include "densify/invariant.hpp"

namespace densify {

namespace {

BisimMatrix var_agreement(const PointedModel& m, const PointedModel& m2,
                          const std::set<std::string>& vars) {
    BisimMatrix z;
    z.rows = m.size();
    z.cols = m2.size();
    z.bits.assign(static_cast<std::size_t>(z.rows) * static_cast<std::size_t>(z.cols), 1);
    for (const std::string& p : vars)
        for (int i = 0; i < z.rows; ++i)
            for (int j = 0; j < z.cols; ++j)
                if (m.holds(p, i) != m2.holds(p, j)) z.set(i, j, false);
    return z;
}

// One refinement step: base agreement plus forth/back into prev.
BisimMatrix refine(const PointedModel& m, const PointedModel& m2, const BisimMatrix& base,
                   const BisimMatrix& prev) {
    BisimMatrix next = base;
    for (int i = 0; i < next.rows; ++i) {
        for (int j = 0; j < next.cols; ++j) {
            if (!next.at(i, j)) continue;
            bool ok = true;
            for (int v : m.successors(i)) {  // forth
                bool matched = false;
                for (int v2 : m2.successors(j))
                    if (prev.at(v, v2)) {
                        matched = true;
                        break;
                    }
                if (!matched) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                for (int v2 : m2.successors(j)) {  // back
                    bool matched = false;
                    for (int v : m.successors(i))
                        if (prev.at(v, v2)) {
                            matched = true;
                            break;
                        }
                    if (!matched) {
                        ok = false;
                        break;
                    }
                }
            }
            if (!ok) next.set(i, j, false);
        }
    }
    return next;
}

}  // namespace

KBisimTable k_bisim_table(const PointedModel& m, const PointedModel& m2,
                          const std::set<std::string>& vars, int max_level) {
    KBisimTable table;
    table.levels.push_back(var_agreement(m, m2, vars));
    for (int k = 0; k < max_level; ++k)
        table.levels.push_back(refine(m, m2, table.levels.front(), table.levels.back()));
    return table;
}

BisimMatrix full_bisim(const PointedModel& m, const PointedModel& m2) {
    std::set<std::string> vars = m.valuation_props();
    for (const std::string& p : m2.valuation_props()) vars.insert(p);
    const BisimMatrix base = var_agreement(m, m2, vars);
    BisimMatrix cur = base;
    for (;;) {
        BisimMatrix next = refine(m, m2, base, cur);
        if (next == cur) return cur;
        cur = std::move(next);
    }
}

Partition partition_by(const BisimMatrix& rel, const std::vector<int>& members, int world_count) {
    Partition p;
    p.class_of.assign(static_cast<std::size_t>(world_count), -1);
    for (int w : members) {
        bool placed = false;
        for (std::size_t c = 0; c < p.classes.size(); ++c) {
            if (rel.at(w, p.classes[c].front())) {
                p.classes[c].push_back(w);
                p.class_of[static_cast<std::size_t>(w)] = static_cast<int>(c);
                placed = true;
                break;
            }
        }
        if (!placed) {
            p.class_of[static_cast<std::size_t>(w)] = static_cast<int>(p.classes.size());
            p.classes.push_back({w});
        }
    }
    return p;
}

Partition classes_mod_k_bisim(const PointedModel& m, const std::set<std::string>& vars, int k) {
    const KBisimTable table = k_bisim_table(m, m, vars, k);
    const BisimMatrix& rel = table.level(k);
    for (int i = 0; i < m.size(); ++i) {
        invariant(rel.at(i, i), "~k not reflexive");
        for (int j = 0; j < m.size(); ++j) {
            invariant(rel.at(i, j) == rel.at(j, i), "~k not symmetric");
            if (!rel.at(i, j)) continue;
            for (int l = 0; l < m.size(); ++l)
                if (rel.at(j, l)) invariant(rel.at(i, l), "~k not transitive");
        }
    }
    std::vector<int> all(static_cast<std::size_t>(m.size()));
    for (int i = 0; i < m.size(); ++i) all[static_cast<std::size_t>(i)] = i;
    return partition_by(rel, all, m.size());
}

}  // namespace densify
