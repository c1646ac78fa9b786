#include "densify/reports.hpp"

namespace densify {

using nlohmann::json;

json to_json(const PMorphismReport& r, const PMorphism& f) {
    json out;
    out["ok"] = r.ok();
    out["pointed_ok"] = r.pointed_ok;
    json forth = json::array();
    for (const Edge& e : r.forth_violations)
        forth.push_back(json::array({f.source.id(e.first), f.source.id(e.second)}));
    out["forth_violations"] = forth;
    json back = json::array();
    for (const Edge& e : r.back_violations)
        back.push_back(json::array({f.source.id(e.first), f.target.id(e.second)}));
    out["back_violations"] = back;
    return out;
}

json to_json(const ConditionReport& r, const PointedModel& m) {
    json out;
    out["ok"] = r.ok();
    out["empty_valuation"] = r.empty_valuation;
    json c2 = json::array();
    for (const Cond2Violation& v : r.cond2) c2.push_back(json::array({m.id(v.x), m.id(v.y)}));
    out["condition2_violations"] = c2;
    json c3 = json::array();
    for (const Cond3Violation& v : r.cond3)
        c3.push_back(json{{"x", m.id(v.x)}, {"z", m.id(v.z)}, {"axiom", v.axiom.to_string()}});
    out["condition3_violations"] = c3;
    return out;
}

json to_json(const DefectCensus& census) {
    json rows = json::array();
    for (const auto& [key, count] : census.counts)
        rows.push_back(json{{"type", key.first}, {"depth", key.second}, {"count", count}});
    return json{{"total", census.total()}, {"rows", rows}};
}

json axiom_violations_json(const PointedModel& m, const AxiomSet& axioms) {
    json out = json::array();
    for (const Axiom& a : axioms) {
        json witnesses = json::array();
        for (const Edge& e : check_axiom_condition(m, a))
            witnesses.push_back(json::array({m.id(e.first), m.id(e.second)}));
        out.push_back(json{{"axiom", a.to_string()}, {"violations", witnesses}});
    }
    return out;
}

json to_json(const IndependenceReport& r, const FiltrationResult& f) {
    json out;
    out["ok"] = r.ok();
    json mm = json::array();
    for (const IndependenceViolation& v : r.mismatches)
        mm.push_back(json{{"class_x", f.quotient.id(v.class_x)},
                          {"class_y", f.quotient.id(v.class_y)},
                          {"rep_x", f.input.id(v.rep_x)},
                          {"rep_y", f.input.id(v.rep_y)},
                          {"decided", v.decided}});
    out["mismatches"] = mm;
    json hh = json::array();
    for (const HomogeneityViolation& v : r.inhomogeneous)
        hh.push_back(json{{"class", f.quotient.id(v.cls)},
                          {"a", f.input.id(v.a)},
                          {"b", f.input.id(v.b)}});
    out["inhomogeneous"] = hh;
    return out;
}

json to_json(const QuotientFrameReport& r, const FiltrationResult& f) {
    json out;
    out["ok"] = r.ok();
    json per_axiom = json::array();
    for (const auto& [axiom, edges] : r.violations) {
        json witnesses = json::array();
        for (const Edge& e : edges)
            witnesses.push_back(json::array({f.quotient.id(e.first), f.quotient.id(e.second)}));
        per_axiom.push_back(json{{"axiom", axiom.to_string()}, {"violations", witnesses}});
    }
    out["axioms"] = per_axiom;
    return out;
}

json to_json(const HomomorphismReport& r, const FiltrationResult& f) {
    json out;
    out["ok"] = r.ok();
    json missing = json::array();
    for (const Edge& e : r.missing)
        missing.push_back(json::array({f.input.id(e.first), f.input.id(e.second)}));
    out["missing"] = missing;
    return out;
}

json to_json(const TruthLemmaReport& r, const FiltrationResult& f) {
    json out;
    out["ok"] = r.ok();
    json dd = json::array();
    for (const TruthLemmaViolation& v : r.disagreements)
        dd.push_back(json{{"world", f.input.id(v.world)},
                          {"formula", v.psi.to_string()},
                          {"input_value", v.input_value}});
    out["disagreements"] = dd;
    return out;
}

json filtration_report_json(const FiltrationResult& f, const AxiomSet& axioms) {
    json out;
    out["formula"] = f.phi.to_string();
    out["k"] = f.k;
    out["vars"] = f.vars;
    json classes = json::array();
    for (std::size_t c = 0; c < f.classes.classes.size(); ++c) {
        json members = json::array();
        for (int w : f.classes.classes[c]) members.push_back(f.input.id(w));
        classes.push_back(json{{"id", f.quotient.id(static_cast<int>(c))},
                               {"depth", f.class_depth[c]},
                               {"members", members}});
    }
    out["classes"] = classes;
    out["verifiers"] =
        json{{"independence", to_json(verify_representative_independence(f), f)},
             {"quotient_frame", to_json(verify_quotient_frame(f, axioms), f)},
             {"homomorphism", to_json(verify_homomorphism(f), f)},
             {"truth_lemma", to_json(verify_truth_lemma(f), f)}};
    return out;
}

}  // namespace densify
