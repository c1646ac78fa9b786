// JSON renderings of verification reports, shared by the CLI, the pipeline
// and the test suites.  All output is deterministic for fixed inputs.

#pragma once

#include "json.hpp"

#include "densify/filtration.hpp"
#include "densify/morphism.hpp"
#include "densify/repair.hpp"

namespace densify {

nlohmann::json to_json(const PMorphismReport& r, const PMorphism& f);
nlohmann::json to_json(const ConditionReport& r, const PointedModel& m);
nlohmann::json to_json(const DefectCensus& census);
nlohmann::json axiom_violations_json(const PointedModel& m, const AxiomSet& axioms);

nlohmann::json to_json(const IndependenceReport& r, const FiltrationResult& f);
nlohmann::json to_json(const QuotientFrameReport& r, const FiltrationResult& f);
nlohmann::json to_json(const HomomorphismReport& r, const FiltrationResult& f);
nlohmann::json to_json(const TruthLemmaReport& r, const FiltrationResult& f);

// Class listing plus all four verifier outcomes.
nlohmann::json filtration_report_json(const FiltrationResult& f, const AxiomSet& axioms);

}  // namespace densify
