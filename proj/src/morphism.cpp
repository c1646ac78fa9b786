#include "densify/morphism.hpp"

#include "densify/invariant.hpp"

namespace densify {

PMorphismReport verify_pmorphism_parts(const PointedModel& source, const PointedModel& target,
                                       const std::vector<int>& map) {
    if (static_cast<int>(map.size()) != source.size())
        throw DomainError("p-morphism map is not total on the source");
    for (int t : map)
        if (t < 0 || t >= target.size()) throw DomainError("p-morphism map hits unknown target world");

    PMorphismReport report;
    report.pointed_ok = map[static_cast<std::size_t>(source.root())] == target.root();
    for (int x = 0; x < source.size(); ++x) {
        const int fx = map[static_cast<std::size_t>(x)];
        for (int y : source.successors(x))
            if (!target.has_edge(fx, map[static_cast<std::size_t>(y)]))
                report.forth_violations.emplace_back(x, y);
        for (int yt : target.successors(fx)) {
            bool witnessed = false;
            for (int y : source.successors(x))
                if (map[static_cast<std::size_t>(y)] == yt) {
                    witnessed = true;
                    break;
                }
            if (!witnessed) report.back_violations.emplace_back(x, yt);
        }
    }
    return report;
}

PMorphismReport verify_pmorphism(const PMorphism& f) {
    return verify_pmorphism_parts(f.source, f.target, f.map);
}

std::string PMorphismReport::describe(const PMorphism& f) const {
    std::string out;
    if (!pointed_ok)
        out += "pointed: f(" + f.source.id(f.source.root()) + ") != " +
               f.target.id(f.target.root()) + "\n";
    for (const Edge& e : forth_violations)
        out += "forth: edge " + f.source.id(e.first) + " -> " + f.source.id(e.second) +
               " has no image edge\n";
    for (const Edge& e : back_violations)
        out += "back: " + f.target.id(f.map[static_cast<std::size_t>(e.first)]) + " -> " +
               f.target.id(e.second) + " unmatched at " + f.source.id(e.first) + "\n";
    return out.empty() ? "ok" : out;
}

std::map<std::string, std::set<int>> pullback_valuation(
    const PMorphism& f, const std::map<std::string, std::set<int>>& target_valuation) {
    const PMorphismReport report = verify_pmorphism(f);
    if (!report.ok())
        throw DomainError("pullback refused, map is not a p-morphism:\n" + report.describe(f));
    std::map<std::string, std::set<int>> out;
    for (const auto& [prop, members] : target_valuation) {
        std::set<int> pre;
        for (int x = 0; x < f.source.size(); ++x)
            if (members.count(f.map[static_cast<std::size_t>(x)])) pre.insert(x);
        if (!pre.empty()) out[prop] = std::move(pre);
    }
    return out;
}

PointedModel pullback_model(const PMorphism& f) {
    auto val = pullback_valuation(f, f.target.valuation());
    PointedModel out = f.source;
    out.clear_valuation();
    for (auto& [prop, members] : val) out.set_valuation(prop, std::move(members));
    return out;
}

PMorphism unravel_pmorphism(const Unraveling& u, const PointedModel& target) {
    invariant(static_cast<int>(u.image.size()) == u.tree.size(), "unraveling image not total");
    return PMorphism{u.tree, target, u.image};
}

}  // namespace densify
