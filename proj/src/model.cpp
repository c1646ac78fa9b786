#include "densify/model.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include "densify/invariant.hpp"

namespace densify {

// ── PointedModel ─────────────────────────────────────────────────────────────

PointedModel::PointedModel(const std::vector<std::string>& worlds, const std::string& root,
                           const std::vector<std::pair<std::string, std::string>>& edges,
                           const std::map<std::string, std::set<std::string>>& valuation) {
    for (const std::string& w : worlds) add_world(w);
    set_root(index(root));
    for (const auto& [from, to] : edges) add_edge(index(from), index(to));
    set_valuation_by_ids(valuation);
}

int PointedModel::add_world(const std::string& id) {
    if (id.empty()) throw DomainError("empty world id");
    if (index_.count(id)) throw DomainError("duplicate world id '" + id + "'");
    const int w = size();
    ids_.push_back(id);
    index_.emplace(id, w);
    succ_.emplace_back();
    return w;
}

void PointedModel::add_edge(int from, int to) {
    auto& s = succ_.at(static_cast<std::size_t>(from));
    auto it = std::lower_bound(s.begin(), s.end(), to);
    if (it != s.end() && *it == to) return;
    if (to < 0 || to >= size()) throw DomainError("edge target out of range");
    s.insert(it, to);
    ++edge_count_;
}

void PointedModel::remove_edge(int from, int to) {
    auto& s = succ_.at(static_cast<std::size_t>(from));
    auto it = std::lower_bound(s.begin(), s.end(), to);
    if (it != s.end() && *it == to) {
        s.erase(it);
        --edge_count_;
    }
}

void PointedModel::set_root(int w) {
    if (w < 0 || w >= size()) throw DomainError("root out of range");
    root_ = w;
}

void PointedModel::set_valuation(const std::string& prop, std::set<int> worlds) {
    for (int w : worlds)
        if (w < 0 || w >= size()) throw DomainError("valuation world out of range");
    if (worlds.empty()) val_.erase(prop);
    else val_[prop] = std::move(worlds);
}

void PointedModel::set_valuation_by_ids(const std::map<std::string, std::set<std::string>>& valuation) {
    for (const auto& [prop, members] : valuation) {
        std::set<int> w;
        for (const std::string& id : members) w.insert(index(id));
        val_[prop] = std::move(w);
    }
}

void PointedModel::clear_valuation() { val_.clear(); }

int PointedModel::index(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw DomainError("unknown world id '" + id + "'");
    return it->second;
}

std::optional<int> PointedModel::try_index(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool PointedModel::has_edge(int from, int to) const {
    const auto& s = succ_.at(static_cast<std::size_t>(from));
    return std::binary_search(s.begin(), s.end(), to);
}

Relation PointedModel::edges() const {
    Relation out;
    out.reserve(static_cast<std::size_t>(edge_count_));
    for (int w = 0; w < size(); ++w)
        for (int v : succ_[static_cast<std::size_t>(w)]) out.emplace_back(w, v);
    return out;
}

std::map<std::string, std::set<std::string>> PointedModel::valuation_by_ids() const {
    std::map<std::string, std::set<std::string>> out;
    for (const auto& [prop, members] : val_) {
        std::set<std::string>& ms = out[prop];
        for (int w : members) ms.insert(id(w));
    }
    return out;
}

bool PointedModel::holds(const std::string& prop, int w) const {
    auto it = val_.find(prop);
    return it != val_.end() && it->second.count(w) != 0;
}

std::set<std::string> PointedModel::valuation_props() const {
    std::set<std::string> out;
    for (const auto& [prop, members] : val_) {
        (void)members;
        out.insert(prop);
    }
    return out;
}

// ── k-step relations ─────────────────────────────────────────────────────────

std::vector<std::vector<char>> k_step_sets(const PointedModel& m, int k) {
    const int n = m.size();
    std::vector<std::vector<char>> cur(static_cast<std::size_t>(n),
                                       std::vector<char>(static_cast<std::size_t>(n), 0));
    for (int w = 0; w < n; ++w) cur[static_cast<std::size_t>(w)][static_cast<std::size_t>(w)] = 1;
    for (int step = 0; step < k; ++step) {
        std::vector<std::vector<char>> next(static_cast<std::size_t>(n),
                                            std::vector<char>(static_cast<std::size_t>(n), 0));
        for (int w = 0; w < n; ++w)
            for (int mid = 0; mid < n; ++mid)
                if (cur[static_cast<std::size_t>(w)][static_cast<std::size_t>(mid)])
                    for (int v : m.successors(mid))
                        next[static_cast<std::size_t>(w)][static_cast<std::size_t>(v)] = 1;
        cur = std::move(next);
    }
    return cur;
}

Relation k_step(const PointedModel& m, int k) {
    const auto sets = k_step_sets(m, k);
    Relation out;
    for (int w = 0; w < m.size(); ++w)
        for (int v = 0; v < m.size(); ++v)
            if (sets[static_cast<std::size_t>(w)][static_cast<std::size_t>(v)]) out.emplace_back(w, v);
    return out;
}

// ── depth ────────────────────────────────────────────────────────────────────

namespace {

std::vector<int> bfs_from(const PointedModel& m, int start) {
    std::vector<int> dist(static_cast<std::size_t>(m.size()), -1);
    std::deque<int> queue{start};
    dist[static_cast<std::size_t>(start)] = 0;
    while (!queue.empty()) {
        const int w = queue.front();
        queue.pop_front();
        for (int v : m.successors(w)) {
            if (dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(w)] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

}  // namespace

DepthMap depth_map(const PointedModel& m) {
    if (m.root() < 0) throw DomainError("model has no root");
    DepthMap dm;
    dm.depth = bfs_from(m, m.root());
    for (int w = 0; w < m.size(); ++w) {
        if (dm.depth[static_cast<std::size_t>(w)] < 0)
            throw DomainError("world '" + m.id(w) + "' unreachable from root");
        dm.max_depth = std::max(dm.max_depth, dm.depth[static_cast<std::size_t>(w)]);
    }
    return dm;
}

bool is_rooted(const PointedModel& m) {
    if (m.root() < 0) return false;
    const auto dist = bfs_from(m, m.root());
    return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

PointedModel generated_submodel(const PointedModel& m, int w) {
    if (w < 0 || w >= m.size()) throw DomainError("unknown world index");
    const auto dist = bfs_from(m, w);
    PointedModel out;
    std::vector<int> remap(static_cast<std::size_t>(m.size()), -1);
    // keep BFS-layer order: stable and deterministic
    std::vector<int> order;
    for (int d = 0;; ++d) {
        bool any = false;
        for (int v = 0; v < m.size(); ++v)
            if (dist[static_cast<std::size_t>(v)] == d) {
                order.push_back(v);
                any = true;
            }
        if (!any) break;
    }
    for (int v : order) remap[static_cast<std::size_t>(v)] = out.add_world(m.id(v));
    out.set_root(remap[static_cast<std::size_t>(w)]);
    for (int v : order)
        for (int t : m.successors(v))
            if (remap[static_cast<std::size_t>(t)] >= 0)
                out.add_edge(remap[static_cast<std::size_t>(v)], remap[static_cast<std::size_t>(t)]);
    for (const auto& [prop, members] : m.valuation()) {
        std::set<int> ms;
        for (int v : members)
            if (remap[static_cast<std::size_t>(v)] >= 0) ms.insert(remap[static_cast<std::size_t>(v)]);
        if (!ms.empty()) out.set_valuation(prop, std::move(ms));
    }
    return out;
}

PointedModel generated_submodel(const PointedModel& m, const std::string& world_id) {
    return generated_submodel(m, m.index(world_id));
}

// ── axiom frame conditions ───────────────────────────────────────────────────

std::vector<Edge> check_axiom_condition(const PointedModel& m, const Axiom& a) {
    const auto rm = k_step_sets(m, a.m());
    bool any = false;
    for (const auto& row : rm)
        for (char b : row) any |= (b != 0);
    std::vector<Edge> violations;
    if (!any) return violations;  // no R^m pairs at all
    const auto rn = k_step_sets(m, a.n());
    for (int x = 0; x < m.size(); ++x)
        for (int y = 0; y < m.size(); ++y)
            if (rm[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] &&
                !rn[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)])
                violations.emplace_back(x, y);
    std::sort(violations.begin(), violations.end(), [&](const Edge& l, const Edge& r) {
        return std::make_pair(m.id(l.first), m.id(l.second)) <
               std::make_pair(m.id(r.first), m.id(r.second));
    });
    return violations;
}

bool satisfies_axioms(const PointedModel& m, const AxiomSet& phi) {
    for (const Axiom& a : phi)
        if (!check_axiom_condition(m, a).empty()) return false;
    return true;
}

PointedModel saturate_to_phi_frame(PointedModel m, const AxiomSet& phi) {
    for (;;) {
        // first violation source in (axiom, world-insertion) order
        std::optional<int> source;
        for (const Axiom& a : phi) {
            const auto rm = k_step_sets(m, a.m());
            const auto rn = k_step_sets(m, a.n());
            for (int x = 0; x < m.size() && !source; ++x)
                for (int y = 0; y < m.size(); ++y)
                    if (rm[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] &&
                        !rn[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]) {
                        source = x;
                        break;
                    }
            if (source) break;
        }
        if (!source) return m;
        invariant(!m.has_edge(*source, *source), "saturation revisited a looped source");
        m.add_edge(*source, *source);
    }
}

// ── unraveling ───────────────────────────────────────────────────────────────

Unraveling unravel(const PointedModel& m, int depth_bound) {
    if (!is_rooted(m)) throw DomainError("unravel requires a rooted model");
    Unraveling out;
    std::unordered_set<std::string> used;
    auto fresh_id = [&](const std::string& base) {
        std::string id = base;
        for (int k = 2; used.count(id); ++k) id = base + "~" + std::to_string(k);
        used.insert(id);
        return id;
    };

    struct Item {
        int node;
        int world;
        int depth;
    };
    std::deque<Item> queue;
    const int root = out.tree.add_world(fresh_id(m.id(m.root())));
    out.image.push_back(m.root());
    out.tree.set_root(root);
    queue.push_back({root, m.root(), 0});

    while (!queue.empty()) {
        const Item it = queue.front();
        queue.pop_front();
        if (it.depth >= depth_bound) continue;
        for (int v : m.successors(it.world)) {
            const int child = out.tree.add_world(fresh_id(out.tree.id(it.node) + "." + m.id(v)));
            out.image.push_back(v);
            out.tree.add_edge(it.node, child);
            queue.push_back({child, v, it.depth + 1});
        }
    }

    for (const auto& [prop, members] : m.valuation()) {
        std::set<int> ms;
        for (int t = 0; t < out.tree.size(); ++t)
            if (members.count(out.image[static_cast<std::size_t>(t)])) ms.insert(t);
        if (!ms.empty()) out.tree.set_valuation(prop, std::move(ms));
    }
    return out;
}

// ── satisfaction ─────────────────────────────────────────────────────────────

namespace {

std::vector<char> eval(const PointedModel& m, const Formula& f,
                       std::unordered_map<Formula, std::vector<char>, FormulaHash>& memo) {
    auto it = memo.find(f);
    if (it != memo.end()) return it->second;
    const std::size_t n = static_cast<std::size_t>(m.size());
    std::vector<char> out(n, 0);
    switch (f.conn()) {
        case Conn::Falsum: break;
        case Conn::Prop: {
            auto v = m.valuation().find(f.name());
            if (v != m.valuation().end())
                for (int w : v->second) out[static_cast<std::size_t>(w)] = 1;
            break;
        }
        case Conn::Not: {
            const auto a = eval(m, f.left(), memo);
            for (std::size_t i = 0; i < n; ++i) out[i] = !a[i];
            break;
        }
        case Conn::Or: {
            const auto a = eval(m, f.left(), memo);
            const auto b = eval(m, f.right(), memo);
            for (std::size_t i = 0; i < n; ++i) out[i] = a[i] || b[i];
            break;
        }
        case Conn::And: {
            const auto a = eval(m, f.left(), memo);
            const auto b = eval(m, f.right(), memo);
            for (std::size_t i = 0; i < n; ++i) out[i] = a[i] && b[i];
            break;
        }
        case Conn::Implies: {
            const auto a = eval(m, f.left(), memo);
            const auto b = eval(m, f.right(), memo);
            for (std::size_t i = 0; i < n; ++i) out[i] = !a[i] || b[i];
            break;
        }
        case Conn::Diamond: {
            const auto a = eval(m, f.left(), memo);
            for (int w = 0; w < m.size(); ++w)
                for (int v : m.successors(w))
                    if (a[static_cast<std::size_t>(v)]) {
                        out[static_cast<std::size_t>(w)] = 1;
                        break;
                    }
            break;
        }
        case Conn::Box: {
            const auto a = eval(m, f.left(), memo);
            for (int w = 0; w < m.size(); ++w) {
                char all = 1;
                for (int v : m.successors(w))
                    if (!a[static_cast<std::size_t>(v)]) {
                        all = 0;
                        break;
                    }
                out[static_cast<std::size_t>(w)] = all;
            }
            break;
        }
    }
    memo.emplace(f, out);
    return out;
}

}  // namespace

std::vector<char> satisfying_worlds(const PointedModel& m, const Formula& f) {
    std::unordered_map<Formula, std::vector<char>, FormulaHash> memo;
    return eval(m, f, memo);
}

bool model_check(const PointedModel& m, int world, const Formula& f) {
    if (world < 0 || world >= m.size()) throw DomainError("unknown world index");
    return satisfying_worlds(m, f)[static_cast<std::size_t>(world)] != 0;
}

bool model_check(const PointedModel& m, const std::string& world_id, const Formula& f) {
    return model_check(m, m.index(world_id), f);
}

}  // namespace densify
