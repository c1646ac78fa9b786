#include "densify/filtration.hpp"

#include <algorithm>

#include "densify/invariant.hpp"

namespace densify {

namespace {

// R^f membership by the defining formula, for concrete representatives.
bool rf_decide(const FiltrationResult& f, int x, int y) {
    const int dx = f.depths.of(x);
    if (dx == f.k) return true;
    if (f.depths.of(y) > dx + 1) return false;
    const BisimMatrix& sim = f.table.level(f.k - dx - 1);
    for (int y1 : f.input.successors(x))
        if (sim.at(y1, y)) return true;
    return false;
}

// Fills depths, bounded worlds, the ~ table and the == partition.
void build_partition(FiltrationResult& f) {
    const PointedModel& m = f.input;
    f.depths = depth_map(m);
    for (int w = 0; w < m.size(); ++w)
        if (f.depths.of(w) <= f.k) f.bounded.push_back(w);
    f.table = k_bisim_table(m, m, f.vars, f.k);

    // classes of ==, grouped by (depth, ~_{k-d} class), ordered by
    // (depth, least member id)
    f.classes.class_of.assign(static_cast<std::size_t>(m.size()), -1);
    for (int d = 0; d <= f.k; ++d) {
        std::vector<int> at_depth;
        for (int w : f.bounded)
            if (f.depths.of(w) == d) at_depth.push_back(w);
        std::sort(at_depth.begin(), at_depth.end(),
                  [&](int a, int b) { return m.id(a) < m.id(b); });
        const BisimMatrix& sim = f.table.level(f.k - d);
        for (int w : at_depth) {
            bool placed = false;
            for (std::size_t c = 0; c < f.classes.classes.size(); ++c) {
                if (f.class_depth[c] != d) continue;
                if (sim.at(w, f.classes.classes[c].front())) {
                    f.classes.classes[c].push_back(w);
                    f.classes.class_of[static_cast<std::size_t>(w)] = static_cast<int>(c);
                    placed = true;
                    break;
                }
            }
            if (!placed) {
                f.classes.class_of[static_cast<std::size_t>(w)] = static_cast<int>(f.classes.classes.size());
                f.classes.classes.push_back({w});
                f.class_depth.push_back(d);
            }
        }
    }
    for (auto& members : f.classes.classes) std::sort(members.begin(), members.end());

    // Fact 2 finiteness bound: per depth no more classes than ~_{k-d} has on
    // all of W
    for (int d = 0; d <= f.k; ++d) {
        int here = 0;
        for (std::size_t c = 0; c < f.classes.classes.size(); ++c)
            if (f.class_depth[c] == d) ++here;
        std::vector<int> all(static_cast<std::size_t>(m.size()));
        for (int w = 0; w < m.size(); ++w) all[static_cast<std::size_t>(w)] = w;
        const Partition whole = partition_by(f.table.level(f.k - d), all, m.size());
        invariant(here <= static_cast<int>(whole.classes.size()),
                  "filtration: class count exceeds the Fact 2 bound");
    }
}

}  // namespace

FiltrationResult build_filtration(const PointedModel& m, const Formula& phi,
                                  const AxiomSet& axioms, bool strict) {
    if (!is_rooted(m)) throw DomainError("filtration requires a rooted model");

    FiltrationResult f;
    f.input = m;
    f.phi = phi;
    f.k = modal_depth(phi);
    f.vars = prop_vars(phi);

    const ConditionReport pre = strict ? verify_global_conditions(m, axioms)
                                       : verify_bounded_conditions(m, axioms, f.k);
    if (!pre.ok()) {
        std::string what = "filtration preconditions failed:";
        for (const Cond2Violation& v : pre.cond2)
            what += " (2)@(" + m.id(v.x) + "," + m.id(v.y) + ")";
        for (const Cond3Violation& v : pre.cond3)
            what += " (3)@(" + m.id(v.x) + "," + m.id(v.z) + "," + v.axiom.to_string() + ")";
        throw FiltrationPreconditionError(what, pre);
    }

    build_partition(f);

    // quotient frame
    const int num_classes = static_cast<int>(f.classes.classes.size());
    for (int c = 0; c < num_classes; ++c) f.quotient.add_world("q" + std::to_string(c));
    f.quotient.set_root(f.classes.class_of[static_cast<std::size_t>(m.root())]);
    invariant(f.quotient.root() >= 0, "filtration: root class missing");
    for (int a = 0; a < num_classes; ++a) {
        const int rep_a = f.classes.classes[static_cast<std::size_t>(a)].front();
        for (int b = 0; b < num_classes; ++b) {
            const int rep_b = f.classes.classes[static_cast<std::size_t>(b)].front();
            if (rf_decide(f, rep_a, rep_b)) f.quotient.add_edge(a, b);
        }
    }

    // V^f restricted to Prop(phi)
    for (const std::string& p : f.vars) {
        std::set<int> members;
        for (int c = 0; c < num_classes; ++c)
            if (m.holds(p, f.classes.classes[static_cast<std::size_t>(c)].front()))
                members.insert(c);
        if (!members.empty()) f.quotient.set_valuation(p, std::move(members));
    }

    invariant(is_rooted(f.quotient), "filtration: quotient not rooted");
    const DepthMap qd = depth_map(f.quotient);
    for (int c = 0; c < num_classes; ++c)
        invariant(qd.of(c) == f.class_depth[static_cast<std::size_t>(c)],
                  "filtration: quotient depth differs from class depth");
    return f;
}

Partition stratified_equiv(const PointedModel& m, const Formula& phi) {
    // the partition needs only rootedness, none of the frame conditions
    if (!is_rooted(m)) throw DomainError("stratified equivalence requires a rooted model");
    FiltrationResult f;
    f.input = m;
    f.phi = phi;
    f.k = modal_depth(phi);
    f.vars = prop_vars(phi);
    build_partition(f);
    return f.classes;
}

// ── verifiers ────────────────────────────────────────────────────────────────

IndependenceReport verify_representative_independence(const FiltrationResult& f) {
    IndependenceReport report;
    const int num_classes = static_cast<int>(f.classes.classes.size());
    for (int c = 0; c < num_classes; ++c) {
        const auto& members = f.classes.classes[static_cast<std::size_t>(c)];
        const BisimMatrix& sim = f.table.level(f.k - f.class_depth[static_cast<std::size_t>(c)]);
        for (int a : members)
            for (int b : members)
                if (f.depths.of(a) != f.depths.of(b) || !sim.at(a, b))
                    report.inhomogeneous.push_back({c, a, b});
    }
    for (int a = 0; a < num_classes; ++a) {
        for (int b = 0; b < num_classes; ++b) {
            const bool stored = f.quotient.has_edge(a, b);
            for (int x : f.classes.classes[static_cast<std::size_t>(a)])
                for (int y : f.classes.classes[static_cast<std::size_t>(b)]) {
                    const bool decided = rf_decide(f, x, y);
                    if (decided != stored)
                        report.mismatches.push_back({a, b, x, y, decided});
                }
        }
    }
    return report;
}

bool QuotientFrameReport::ok() const {
    for (const auto& [axiom, edges] : violations) {
        (void)axiom;
        if (!edges.empty()) return false;
    }
    return true;
}

QuotientFrameReport verify_quotient_frame(const FiltrationResult& f, const AxiomSet& axioms) {
    QuotientFrameReport report;
    for (const Axiom& a : axioms) report.violations.emplace_back(a, check_axiom_condition(f.quotient, a));
    return report;
}

HomomorphismReport verify_homomorphism(const FiltrationResult& f) {
    HomomorphismReport report;
    for (int x : f.bounded) {
        const int cx = f.classes.class_of[static_cast<std::size_t>(x)];
        for (int y : f.input.successors(x)) {
            const int cy = f.classes.class_of[static_cast<std::size_t>(y)];
            if (cy < 0) continue;  // y outside W<=k
            if (!f.quotient.has_edge(cx, cy)) report.missing.emplace_back(x, y);
        }
    }
    return report;
}

TruthLemmaReport verify_truth_lemma(const FiltrationResult& f) {
    TruthLemmaReport report;
    for (const Formula& psi : subformulas(f.phi)) {
        const std::vector<char> on_input = satisfying_worlds(f.input, psi);
        const std::vector<char> on_quotient = satisfying_worlds(f.quotient, psi);
        for (int x : f.bounded) {
            if (modal_depth(psi) > f.k - f.depths.of(x)) continue;
            const int cx = f.classes.class_of[static_cast<std::size_t>(x)];
            if (on_input[static_cast<std::size_t>(x)] != on_quotient[static_cast<std::size_t>(cx)])
                report.disagreements.push_back({x, psi, on_input[static_cast<std::size_t>(x)] != 0});
        }
    }
    return report;
}

}  // namespace densify
