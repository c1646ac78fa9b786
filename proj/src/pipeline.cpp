#include "densify/pipeline.hpp"

#include <chrono>

#include "densify/invariant.hpp"
#include "densify/model_io.hpp"
#include "densify/reports.hpp"

namespace densify {

using nlohmann::json;

json PipelineReport::to_json(bool include_timings) const {
    json out;
    out["stages"] = stages;
    out["summary"] = summary;
    out["exit_code"] = exit_code;
    if (include_timings) out["timings_ms"] = timings_ms;
    return out;
}

PipelineReport run_pipeline(const PointedModel& input, const Formula& phi, const AxiomSet& axioms,
                            const PipelineOptions& opts) {
    if (axioms.empty()) throw DomainError("pipeline requires a nonempty axiom set");
    PipelineReport report;
    report.timings_ms = json::object();

    const auto t_start = std::chrono::steady_clock::now();
    auto lap = [&, last = t_start](const std::string& name) mutable {
        const auto now = std::chrono::steady_clock::now();
        report.timings_ms[name] =
            std::chrono::duration<double, std::milli>(now - last).count();
        last = now;
    };

    const int budget = opts.budget >= 0 ? opts.budget : modal_depth(phi);

    // point-generated submodel at the root
    PointedModel base = generated_submodel(input, input.root());
    const bool input_sat = model_check(base, base.root(), phi);
    report.stages.push_back(json{{"stage", "generated-submodel"},
                                 {"outcome", "ok"},
                                 {"worlds", base.size()},
                                 {"dropped", input.size() - base.size()}});
    lap("generated-submodel");

    // Saturation is a generator, not theory-preserving: the quotient answers
    // for the saturated base, so record that satisfaction separately.
    if (opts.saturate) {
        const int before = base.edge_count();
        base = saturate_to_phi_frame(std::move(base), axioms);
        report.stages.push_back(json{{"stage", "saturate"},
                                     {"outcome", "ok"},
                                     {"added_loops", base.edge_count() - before}});
    } else {
        const json violations = axiom_violations_json(base, axioms);
        bool ok = true;
        for (const auto& row : violations) ok = ok && row["violations"].empty();
        report.stages.push_back(json{{"stage", "frame-check"},
                                     {"outcome", ok ? "ok" : "violated"},
                                     {"axioms", violations}});
        if (!ok) {
            report.exit_code = kExitViolation;
            report.summary = json{{"root_satisfaction", json{{"input", input_sat}}}};
            return report;
        }
    }
    lap(opts.saturate ? "saturate" : "frame-check");
    const bool base_sat = model_check(base, base.root(), phi);

    RepairState seed =
        opts.unravel ? seed_state_unravel(base, budget) : seed_state_identity(base);
    report.stages.push_back(json{{"stage", "seed"},
                                 {"outcome", "ok"},
                                 {"mode", opts.unravel ? "unravel" : "identity"},
                                 {"worlds", seed.current.size()}});
    lap("seed");

    RepairRun run = run_repair_from(std::move(seed), axioms, budget, opts.max_steps);
    const bool truncated = run.status == RepairStatus::Truncated;
    report.stages.push_back(json{{"stage", "repair"},
                                 {"outcome", truncated ? "truncated" : "ok"},
                                 {"steps", run.steps},
                                 {"budget", budget},
                                 {"worlds", run.state.current.size()},
                                 {"census", to_json(run.unresolved)}});
    lap("repair");

    PMorphism f{run.state.current, run.state.base, run.state.f};
    PointedModel repaired = pullback_model(f);
    report.stages.push_back(json{{"stage", "pullback"},
                                 {"outcome", "ok"},
                                 {"vars", repaired.valuation_props()}});
    lap("pullback");

    if (truncated) {
        report.exit_code = kExitTruncated;
        report.summary = json{{"repaired_worlds", repaired.size()},
                              {"root_satisfaction", json{{"input", input_sat}}},
                              {"note", "repair truncated; filtration not attempted"}};
        return report;
    }

    const ConditionReport pre = opts.strict ? verify_global_conditions(repaired, axioms)
                                            : verify_bounded_conditions(repaired, axioms,
                                                                        modal_depth(phi));
    if (!pre.ok()) {
        report.stages.push_back(json{{"stage", "filtration"},
                                     {"outcome", "violated"},
                                     {"preconditions", to_json(pre, repaired)}});
        report.exit_code = kExitViolation;
        report.summary = json{{"root_satisfaction", json{{"input", input_sat}}}};
        return report;
    }

    const FiltrationResult filt = build_filtration(repaired, phi, axioms, opts.strict);
    const bool verifiers_ok = verify_representative_independence(filt).ok() &&
                              verify_quotient_frame(filt, axioms).ok() &&
                              verify_homomorphism(filt).ok() && verify_truth_lemma(filt).ok();
    report.stages.push_back(json{{"stage", "filtration"},
                                 {"outcome", verifiers_ok ? "ok" : "violated"},
                                 {"report", filtration_report_json(filt, axioms)}});
    lap("filtration");

    const bool quotient_sat = model_check(filt.quotient, filt.quotient.root(), phi);
    report.summary = json{{"quotient_worlds", filt.quotient.size()},
                          {"quotient_edges", filt.quotient.edge_count()},
                          {"quotient", model_to_json(filt.quotient)},
                          {"root_satisfaction", json{{"input", input_sat},
                                                     {"base", base_sat},
                                                     {"quotient", quotient_sat}}}};
    if (!verifiers_ok || quotient_sat != base_sat) report.exit_code = kExitViolation;
    lap("summary");
    return report;
}

}  // namespace densify
