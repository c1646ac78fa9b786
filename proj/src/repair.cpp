#include "densify/repair.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "densify/bisim.hpp"
#include "densify/invariant.hpp"

namespace densify {

namespace {

std::vector<int> worlds_by_id(const PointedModel& m) {
    std::vector<int> order(static_cast<std::size_t>(m.size()));
    for (int w = 0; w < m.size(); ++w) order[static_cast<std::size_t>(w)] = w;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return m.id(a) < m.id(b); });
    return order;
}

// Worlds reachable from x in exactly k steps.
std::vector<char> exact_reach(const PointedModel& m, int x, int k) {
    std::vector<char> cur(static_cast<std::size_t>(m.size()), 0);
    cur[static_cast<std::size_t>(x)] = 1;
    for (int step = 0; step < k; ++step) {
        std::vector<char> next(static_cast<std::size_t>(m.size()), 0);
        for (int w = 0; w < m.size(); ++w)
            if (cur[static_cast<std::size_t>(w)])
                for (int v : m.successors(w)) next[static_cast<std::size_t>(v)] = 1;
        cur = std::move(next);
    }
    return cur;
}

// Layered backward feasibility: B[j] = worlds from which `to` is reachable
// in exactly j steps.
std::vector<std::vector<char>> backward_layers(const PointedModel& m, int to, int len) {
    std::vector<std::vector<char>> b(static_cast<std::size_t>(len) + 1,
                                     std::vector<char>(static_cast<std::size_t>(m.size()), 0));
    b[0][static_cast<std::size_t>(to)] = 1;
    for (int j = 1; j <= len; ++j)
        for (int v = 0; v < m.size(); ++v)
            for (int w : m.successors(v))
                if (b[static_cast<std::size_t>(j) - 1][static_cast<std::size_t>(w)]) {
                    b[static_cast<std::size_t>(j)][static_cast<std::size_t>(v)] = 1;
                    break;
                }
    return b;
}

// Middles of the lexicographically least (by world id at each choice point)
// path of exactly `len` edges from `from` to `to`.
std::optional<std::vector<int>> least_path_middles(const PointedModel& m, int from, int to,
                                                   int len) {
    const auto b = backward_layers(m, to, len);
    if (!b[static_cast<std::size_t>(len)][static_cast<std::size_t>(from)]) return std::nullopt;
    std::vector<int> middles;
    int cur = from;
    for (int j = 1; j < len; ++j) {
        std::optional<int> best;
        for (int w : m.successors(cur))
            if (b[static_cast<std::size_t>(len - j)][static_cast<std::size_t>(w)])
                if (!best || m.id(w) < m.id(*best)) best = w;
        invariant(best.has_value(), "path reconstruction lost feasibility");
        middles.push_back(*best);
        cur = *best;
    }
    invariant(m.has_edge(cur, to), "path reconstruction missed the endpoint");
    return middles;
}

std::string fresh_world_id(RepairState& s) {
    std::string id;
    do {
        id = "u#" + std::to_string(s.fresh_counter++);
    } while (s.current.has_world(id));
    return id;
}

void assert_state(const RepairState& s, const std::vector<int>& old_depths,
                  const char* lemma) {
    const PMorphismReport rep = verify_pmorphism_parts(s.current, s.base, s.f);
    invariant(rep.ok(), std::string(lemma) + ": f is no longer a p-morphism");
    for (std::size_t w = 0; w < old_depths.size(); ++w)
        invariant(s.depths.of(static_cast<int>(w)) == old_depths[w],
                  std::string(lemma) + ": depth changed on an old world");
}

}  // namespace

std::string defect_key(const Defect& d) {
    if (const auto* t2 = std::get_if<Type2Defect>(&d))
        return "2|" + std::to_string(t2->x) + "|" + std::to_string(t2->y);
    const auto& t3 = std::get<Type3Defect>(d);
    return "3|" + std::to_string(t3.x) + "|" + std::to_string(t3.z) + "|" + t3.axiom.to_string();
}

RepairState seed_state_identity(const PointedModel& base) {
    if (!is_rooted(base)) throw DomainError("repair base must be rooted");
    RepairState s;
    s.current = base;
    s.base = base;
    s.f.resize(static_cast<std::size_t>(base.size()));
    for (int w = 0; w < base.size(); ++w) s.f[static_cast<std::size_t>(w)] = w;
    s.depths = depth_map(s.current);
    return s;
}

RepairState seed_state_unravel(const PointedModel& base, int depth_bound) {
    if (!is_rooted(base)) throw DomainError("repair base must be rooted");
    const DepthMap base_depths = depth_map(base);
    const int bound = std::max(depth_bound, base_depths.max_depth);

    Unraveling u = unravel(base, bound);
    const DepthMap tree_depths = depth_map(u.tree);

    // earliest tree node per image; BFS creation order makes it minimal-depth
    std::vector<int> first_node(static_cast<std::size_t>(base.size()), -1);
    for (int t = 0; t < u.tree.size(); ++t) {
        const int w = u.image[static_cast<std::size_t>(t)];
        if (first_node[static_cast<std::size_t>(w)] < 0) first_node[static_cast<std::size_t>(w)] = t;
    }

    for (int t = 0; t < u.tree.size(); ++t) {
        if (tree_depths.of(t) < bound) continue;
        for (int y : base.successors(u.image[static_cast<std::size_t>(t)])) {
            const int target = first_node[static_cast<std::size_t>(y)];
            invariant(target >= 0, "leaf closure has no node for a reachable world");
            u.tree.add_edge(t, target);
        }
    }

    RepairState s;
    s.current = std::move(u.tree);
    s.base = base;
    s.f = std::move(u.image);
    s.depths = depth_map(s.current);
    for (int t = 0; t < s.current.size(); ++t)
        invariant(s.depths.of(t) == tree_depths.of(t), "leaf closure moved a depth");
    invariant(verify_pmorphism_parts(s.current, s.base, s.f).ok(),
              "closed unraveling is not a p-morphism");
    return s;
}

bool is_type2_defect(const RepairState& s, int x, int y) {
    if (!s.current.has_edge(x, y)) return false;
    const int want = s.f[static_cast<std::size_t>(y)];
    for (int cand : s.current.successors(x))
        if (s.depths.of(cand) == s.depths.of(x) + 1 && s.f[static_cast<std::size_t>(cand)] == want)
            return false;
    return true;
}

std::optional<std::vector<int>> graded_chain_find(const PointedModel& m, const DepthMap& depths,
                                                  int x, int z, int n) {
    // layer[j] = candidates for w_{j+1}; parents recover one chain
    std::vector<std::vector<char>> layer(static_cast<std::size_t>(n) - 1,
                                         std::vector<char>(static_cast<std::size_t>(m.size()), 0));
    std::vector<std::vector<int>> parent(static_cast<std::size_t>(n) - 1,
                                         std::vector<int>(static_cast<std::size_t>(m.size()), -1));
    for (int w : m.successors(x))
        if (depths.of(w) == depths.of(x) + 1) {
            layer[0][static_cast<std::size_t>(w)] = 1;
            parent[0][static_cast<std::size_t>(w)] = x;
        }
    for (int j = 1; j <= n - 2; ++j) {
        for (int v = 0; v < m.size(); ++v)
            if (layer[static_cast<std::size_t>(j) - 1][static_cast<std::size_t>(v)])
                for (int w : m.successors(v))
                    if (depths.of(w) == depths.of(x) + j + 1 &&
                        !layer[static_cast<std::size_t>(j)][static_cast<std::size_t>(w)]) {
                        layer[static_cast<std::size_t>(j)][static_cast<std::size_t>(w)] = 1;
                        parent[static_cast<std::size_t>(j)][static_cast<std::size_t>(w)] = v;
                    }
    }
    for (int v = 0; v < m.size(); ++v) {
        if (!layer[static_cast<std::size_t>(n) - 2][static_cast<std::size_t>(v)] ||
            !m.has_edge(v, z))
            continue;
        std::vector<int> chain(static_cast<std::size_t>(n) - 1);
        int cur = v;
        for (int j = n - 2; j >= 0; --j) {
            chain[static_cast<std::size_t>(j)] = cur;
            cur = parent[static_cast<std::size_t>(j)][static_cast<std::size_t>(cur)];
        }
        return chain;
    }
    return std::nullopt;
}

bool graded_chain_exists(const PointedModel& m, const DepthMap& depths, int x, int z, int n) {
    return graded_chain_find(m, depths, x, z, n).has_value();
}

bool is_type3_defect(const RepairState& s, int x, int z, const Axiom& axiom) {
    const auto rm = exact_reach(s.current, x, axiom.m());
    if (!rm[static_cast<std::size_t>(z)]) return false;
    return !graded_chain_exists(s.current, s.depths, x, z, axiom.n());
}

bool is_defect(const RepairState& s, const Defect& d) {
    if (const auto* t2 = std::get_if<Type2Defect>(&d)) return is_type2_defect(s, t2->x, t2->y);
    const auto& t3 = std::get<Type3Defect>(d);
    return is_type3_defect(s, t3.x, t3.z, t3.axiom);
}

namespace {

// Worlds z reachable from x by some graded chain x R w1 ... R w_{n-1} R z.
std::vector<char> graded_witnessed(const PointedModel& m, const DepthMap& depths, int x, int n) {
    std::vector<char> cur(static_cast<std::size_t>(m.size()), 0);
    for (int w : m.successors(x))
        if (depths.of(w) == depths.of(x) + 1) cur[static_cast<std::size_t>(w)] = 1;
    for (int j = 2; j <= n - 1; ++j) {
        std::vector<char> next(static_cast<std::size_t>(m.size()), 0);
        for (int v = 0; v < m.size(); ++v)
            if (cur[static_cast<std::size_t>(v)])
                for (int w : m.successors(v))
                    if (depths.of(w) == depths.of(x) + j) next[static_cast<std::size_t>(w)] = 1;
        cur = std::move(next);
    }
    std::vector<char> out(static_cast<std::size_t>(m.size()), 0);
    for (int v = 0; v < m.size(); ++v)
        if (cur[static_cast<std::size_t>(v)])
            for (int w : m.successors(v)) out[static_cast<std::size_t>(w)] = 1;
    return out;
}

}  // namespace

std::vector<Defect> find_defects(const RepairState& s, const AxiomSet& phi, int depth_budget) {
    std::vector<Defect> out;
    const std::vector<int> order = worlds_by_id(s.current);

    for (int x : order) {
        if (s.depths.of(x) >= depth_budget) continue;
        std::vector<int> succs = s.current.successors(x);
        std::sort(succs.begin(), succs.end(),
                  [&](int a, int b) { return s.current.id(a) < s.current.id(b); });
        for (int y : succs)
            if (is_type2_defect(s, x, y)) out.push_back(Type2Defect{x, y});
    }

    for (int x : order) {
        std::vector<Type3Defect> here;
        for (const Axiom& a : phi) {
            if (s.depths.of(x) > depth_budget - a.m()) continue;
            const auto rm = exact_reach(s.current, x, a.m());
            const auto witnessed = graded_witnessed(s.current, s.depths, x, a.n());
            for (int z = 0; z < s.current.size(); ++z)
                if (rm[static_cast<std::size_t>(z)] && !witnessed[static_cast<std::size_t>(z)])
                    here.push_back(Type3Defect{x, z, a});
        }
        std::sort(here.begin(), here.end(), [&](const Type3Defect& l, const Type3Defect& r) {
            const auto lk = std::make_pair(s.current.id(l.z), l.axiom);
            const auto rk = std::make_pair(s.current.id(r.z), r.axiom);
            return lk < rk;
        });
        for (const Type3Defect& d : here) out.push_back(d);
    }
    return out;
}

RepairState repair_type2(const RepairState& s, const Type2Defect& d) {
    if (!is_type2_defect(s, d.x, d.y))
        throw DomainError("repair_type2: (" + s.current.id(d.x) + ", " + s.current.id(d.y) +
                          ") is not a Type2 defect");
    RepairState out = s;
    const std::vector<int> old_depths = s.depths.depth;
    const std::vector<int> old_succ_v = out.current.successors(d.y);

    const int u = out.current.add_world(fresh_world_id(out));
    out.f.push_back(out.f[static_cast<std::size_t>(d.y)]);
    out.current.add_edge(d.x, u);
    for (int c : old_succ_v) out.current.add_edge(u, c);
    out.steps++;

    out.depths = depth_map(out.current);
    invariant(out.depths.of(u) == out.depths.of(d.x) + 1, "type2: d(u) != d(x)+1");
    assert_state(out, old_depths, "type2");
    invariant(!is_type2_defect(out, d.x, d.y), "type2: defect not resolved");
    return out;
}

RepairState repair_type3(const RepairState& s, const Type3Defect& d) {
    if (!is_type3_defect(s, d.x, d.z, d.axiom))
        throw DomainError("repair_type3: (" + s.current.id(d.x) + ", " + s.current.id(d.z) +
                          ", " + d.axiom.to_string() + ") is not a Type3 defect");
    if (!check_axiom_condition(s.base, d.axiom).empty())
        throw DomainError("repair_type3: base frame violates axiom " + d.axiom.to_string());

    const int n = d.axiom.n();
    const int fx = s.f[static_cast<std::size_t>(d.x)];
    const int fz = s.f[static_cast<std::size_t>(d.z)];

    // base n-chain f(x) R w1 R ... R w_{n-1} R f(z); exists because the base
    // satisfies the axiom condition and f carries x R^m z forward
    const auto base_middles = least_path_middles(s.base, fx, fz, n);
    invariant(base_middles.has_value(), "type3: base has no n-chain despite axiom condition");

    // pull the base chain back along the back clause
    std::vector<int> pulled;  // v1..v_{n-1} in the current frame
    int at = d.x;
    for (int j = 0; j < n - 1; ++j) {
        const int want = (*base_middles)[static_cast<std::size_t>(j)];
        std::optional<int> best;
        for (int w : s.current.successors(at))
            if (s.f[static_cast<std::size_t>(w)] == want)
                if (!best || s.current.id(w) < s.current.id(*best)) best = w;
        invariant(best.has_value(), "type3: back-clause witness search failure");
        pulled.push_back(*best);
        at = *best;
    }

    RepairState out = s;
    const std::vector<int> old_depths = s.depths.depth;
    std::vector<std::vector<int>> old_succs;
    old_succs.reserve(pulled.size());
    for (int v : pulled) old_succs.push_back(out.current.successors(v));

    std::vector<int> fresh;
    for (int j = 0; j < n - 1; ++j) {
        const int u = out.current.add_world(fresh_world_id(out));
        out.f.push_back((*base_middles)[static_cast<std::size_t>(j)]);
        fresh.push_back(u);
    }
    out.current.add_edge(d.x, fresh.front());
    for (int j = 0; j + 1 < n - 1; ++j) out.current.add_edge(fresh[static_cast<std::size_t>(j)],
                                                             fresh[static_cast<std::size_t>(j) + 1]);
    out.current.add_edge(fresh.back(), d.z);
    for (int j = 0; j < n - 1; ++j)
        for (int c : old_succs[static_cast<std::size_t>(j)])
            out.current.add_edge(fresh[static_cast<std::size_t>(j)], c);
    out.steps++;

    out.depths = depth_map(out.current);
    for (int j = 0; j < n - 1; ++j)
        invariant(out.depths.of(fresh[static_cast<std::size_t>(j)]) == out.depths.of(d.x) + j + 1,
                  "type3: d(u_j) != d(x)+j");
    assert_state(out, old_depths, "type3");
    invariant(!is_type3_defect(out, d.x, d.z, d.axiom), "type3: defect not resolved");
    return out;
}

RepairState repair(const RepairState& s, const Defect& d) {
    if (const auto* t2 = std::get_if<Type2Defect>(&d)) return repair_type2(s, *t2);
    return repair_type3(s, std::get<Type3Defect>(d));
}

int DefectCensus::total() const {
    int t = 0;
    for (const auto& [key, count] : counts) {
        (void)key;
        t += count;
    }
    return t;
}

namespace {

DefectCensus census_of(const RepairState& s, const AxiomSet& phi, int budget) {
    DefectCensus census;
    for (const Defect& d : find_defects(s, phi, budget)) {
        const int x = std::holds_alternative<Type2Defect>(d) ? std::get<Type2Defect>(d).x
                                                             : std::get<Type3Defect>(d).x;
        const std::string type = std::holds_alternative<Type2Defect>(d) ? "type2" : "type3";
        census.counts[{type, s.depths.of(x)}]++;
    }
    return census;
}

}  // namespace

namespace {

// A settled defect together with the concrete witness that resolves it.
// Edges are never removed and old depths never move, so a once-valid
// witness stays valid; rechecking it each step is cheap.
struct SettledDefect {
    Defect defect;
    std::vector<int> witness;  // Type2: {y'}; Type3: {w1..w_{n-1}}
};

std::vector<int> resolution_witness(const RepairState& s, const Defect& d) {
    if (const auto* t2 = std::get_if<Type2Defect>(&d)) {
        const int want = s.f[static_cast<std::size_t>(t2->y)];
        for (int cand : s.current.successors(t2->x))
            if (s.depths.of(cand) == s.depths.of(t2->x) + 1 &&
                s.f[static_cast<std::size_t>(cand)] == want)
                return {cand};
        throw InvariantViolation("run_repair: no witness for a resolved Type2 defect");
    }
    const auto& t3 = std::get<Type3Defect>(d);
    auto chain = graded_chain_find(s.current, s.depths, t3.x, t3.z, t3.axiom.n());
    invariant(chain.has_value(), "run_repair: no witness for a resolved Type3 defect");
    return *chain;
}

bool witness_still_valid(const RepairState& s, const SettledDefect& sd) {
    if (const auto* t2 = std::get_if<Type2Defect>(&sd.defect)) {
        const int y1 = sd.witness.front();
        return s.current.has_edge(t2->x, y1) && s.depths.of(y1) == s.depths.of(t2->x) + 1 &&
               s.f[static_cast<std::size_t>(y1)] == s.f[static_cast<std::size_t>(t2->y)];
    }
    const auto& t3 = std::get<Type3Defect>(sd.defect);
    int at = t3.x;
    for (std::size_t j = 0; j < sd.witness.size(); ++j) {
        const int w = sd.witness[j];
        if (!s.current.has_edge(at, w)) return false;
        if (s.depths.of(w) != s.depths.of(t3.x) + static_cast<int>(j) + 1) return false;
        at = w;
    }
    return s.current.has_edge(at, t3.z);
}

}  // namespace

RepairRun run_repair_from(RepairState seed, const AxiomSet& phi, int depth_budget, int max_steps) {
    if (phi.empty()) throw DomainError("run_repair requires a nonempty axiom set");
    for (const Axiom& a : phi)
        if (!check_axiom_condition(seed.base, a).empty())
            throw DomainError("run_repair: base frame violates axiom " + a.to_string());
    invariant(verify_pmorphism_parts(seed.current, seed.base, seed.f).ok(),
              "run_repair: seed map is not a p-morphism");

    RepairRun run;
    run.state = std::move(seed);
    std::deque<Defect> queue;
    std::set<std::string> seen;
    std::vector<SettledDefect> settled;  // repaired, or observed resolved

    auto enqueue_new = [&]() {
        for (const Defect& d : find_defects(run.state, phi, depth_budget)) {
            if (seen.insert(defect_key(d)).second) queue.push_back(d);
        }
    };
    enqueue_new();

    for (;;) {
        while (!queue.empty() && !is_defect(run.state, queue.front())) {
            settled.push_back({queue.front(), resolution_witness(run.state, queue.front())});
            queue.pop_front();
        }
        if (queue.empty()) {
            run.status = RepairStatus::Saturated;
            break;
        }
        if (run.steps >= max_steps) {
            run.status = RepairStatus::Truncated;
            break;
        }
        const Defect d = queue.front();
        queue.pop_front();
        const int before = run.state.current.size();
        run.state = repair(run.state, d);
        ++run.steps;
        const int grown = run.state.current.size() - before;
        invariant(grown == 1 || (std::holds_alternative<Type3Defect>(d) &&
                                 grown == std::get<Type3Defect>(d).axiom.n() - 1),
                  "run_repair: unexpected growth");
        settled.push_back({d, resolution_witness(run.state, d)});
        for (const SettledDefect& r : settled)
            invariant(witness_still_valid(run.state, r), "run_repair: resolved defect reappeared");
        enqueue_new();
    }

    // full semantic recheck of the footnote-3 property, once at the end
    for (const SettledDefect& r : settled)
        invariant(!is_defect(run.state, r.defect), "run_repair: resolved defect reappeared");

    run.unresolved = census_of(run.state, phi, depth_budget);
    invariant(run.status == RepairStatus::Truncated || run.unresolved.total() == 0,
              "run_repair: saturated with unresolved defects");
    return run;
}

RepairRun run_repair(const PointedModel& base, const AxiomSet& phi, int depth_budget,
                     int max_steps) {
    return run_repair_from(seed_state_identity(base), phi, depth_budget, max_steps);
}

// ── conditions ───────────────────────────────────────────────────────────────

namespace {

ConditionReport verify_conditions(const PointedModel& m, const AxiomSet& phi, int k, bool strict) {
    if (!is_rooted(m)) throw DomainError("condition check requires a rooted model");
    const DepthMap depths = depth_map(m);
    const BisimMatrix bisim = full_bisim(m, m);
    const std::vector<int> order = worlds_by_id(m);

    ConditionReport report;
    report.empty_valuation = m.valuation().empty();

    for (int x : order) {
        if (!strict && depths.of(x) >= k) continue;
        std::vector<int> succs = m.successors(x);
        std::sort(succs.begin(), succs.end(), [&](int a, int b) { return m.id(a) < m.id(b); });
        for (int y : succs) {
            bool witnessed = false;
            for (int cand : m.successors(x))
                if (depths.of(cand) == depths.of(x) + 1 && bisim.at(cand, y)) {
                    witnessed = true;
                    break;
                }
            if (!witnessed) report.cond2.push_back({x, y});
        }
    }

    for (int x : order) {
        std::map<int, std::vector<char>> reach;
        for (int z : order) {
            for (const Axiom& a : phi) {
                if (!strict && depths.of(x) > k - a.m()) continue;
                auto it = reach.find(a.m());
                if (it == reach.end()) it = reach.emplace(a.m(), exact_reach(m, x, a.m())).first;
                if (!it->second[static_cast<std::size_t>(z)]) continue;
                if (!graded_chain_exists(m, depths, x, z, a.n()))
                    report.cond3.push_back({x, z, a});
            }
        }
    }
    return report;
}

}  // namespace

ConditionReport verify_bounded_conditions(const PointedModel& m, const AxiomSet& phi, int k) {
    return verify_conditions(m, phi, k, false);
}

ConditionReport verify_global_conditions(const PointedModel& m, const AxiomSet& phi) {
    return verify_conditions(m, phi, 0, true);
}

}  // namespace densify
