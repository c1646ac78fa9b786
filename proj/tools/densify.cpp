// densify — countermodel toolkit for modal logics K + {<>^m p -> <>^n p}.
//
// Subcommands operate on JSON model files and formula strings; every
// command emits a JSON report to stdout or --out.  Exit codes: 0 ok,
// 2 truncated, 3 violation, 4 input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "densify/bisim.hpp"
#include "densify/filtration.hpp"
#include "densify/invariant.hpp"
#include "densify/model_io.hpp"
#include "densify/pipeline.hpp"
#include "densify/reports.hpp"
#include "densify/sat_oracle.hpp"

using nlohmann::json;
using namespace densify;

namespace {

void emit(const json& doc, const std::string& out_path) {
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw IoError("cannot write '" + out_path + "'");
        out << text;
    }
}

json error_json(const std::string& kind, const std::string& message) {
    return json{{"error", json{{"kind", kind}, {"message", message}}}};
}

std::set<std::string> split_vars(const std::string& spec) {
    std::set<std::string> out;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        std::size_t end = spec.find(',', pos);
        if (end == std::string::npos) end = spec.size();
        if (end > pos) out.insert(spec.substr(pos, end - pos));
        pos = end + 1;
    }
    return out;
}

struct CommonArgs {
    std::string out;
};

int cmd_parse(const std::string& formula_text, const CommonArgs& common) {
    const Formula f = parse_formula(formula_text);
    json doc;
    doc["canonical"] = f.to_string();
    doc["modal_depth"] = modal_depth(f);
    doc["prop_vars"] = prop_vars(f);
    doc["subformulas"] = subformulas(f).size();
    emit(doc, common.out);
    return kExitOk;
}

int cmd_mc(const std::string& model_path, const std::string& world, const std::string& formula_text,
           const CommonArgs& common) {
    const PointedModel m = load_model(model_path);
    const Formula f = parse_formula(formula_text);
    const bool value = model_check(m, world, f);
    emit(json{{"world", world}, {"formula", f.to_string()}, {"value", value}}, common.out);
    return kExitOk;
}

int cmd_frame_check(const std::string& model_path, const std::string& axiom_spec,
                    const CommonArgs& common) {
    const PointedModel m = load_model(model_path);
    const AxiomSet axioms = parse_axiom_set(axiom_spec);
    const json violations = axiom_violations_json(m, axioms);
    bool ok = true;
    for (const auto& row : violations) ok = ok && row["violations"].empty();
    emit(json{{"ok", ok}, {"axioms", violations}}, common.out);
    return ok ? kExitOk : kExitViolation;
}

int cmd_saturate(const std::string& model_path, const std::string& axiom_spec,
                 const CommonArgs& common) {
    const PointedModel m = load_model(model_path);
    const AxiomSet axioms = parse_axiom_set(axiom_spec);
    emit(model_to_json(saturate_to_phi_frame(m, axioms)), common.out);
    return kExitOk;
}

int cmd_unravel(const std::string& model_path, int bound, const CommonArgs& common) {
    const PointedModel m = load_model(model_path);
    const Unraveling u = unravel(m, bound);
    const PMorphism f = unravel_pmorphism(u, m);
    emit(json{{"model", model_to_json(u.tree)}, {"map", map_to_json(f)["map"]}}, common.out);
    return kExitOk;
}

int cmd_bisim(const std::string& model_path, const std::string& model2_path,
              const std::string& vars_spec, int k, const CommonArgs& common) {
    const PointedModel m = load_model(model_path);
    json doc;
    if (!model2_path.empty()) {
        const PointedModel m2 = load_model(model2_path);
        json pairs = json::array();
        if (k < 0) {
            const BisimMatrix z = full_bisim(m, m2);
            for (int i = 0; i < m.size(); ++i)
                for (int j = 0; j < m2.size(); ++j)
                    if (z.at(i, j)) pairs.push_back(json::array({m.id(i), m2.id(j)}));
            doc["relation"] = "full";
        } else {
            std::set<std::string> vars = split_vars(vars_spec);
            const KBisimTable t = k_bisim_table(m, m2, vars, k);
            for (int i = 0; i < m.size(); ++i)
                for (int j = 0; j < m2.size(); ++j)
                    if (t.level(k).at(i, j)) pairs.push_back(json::array({m.id(i), m2.id(j)}));
            doc["relation"] = "level-" + std::to_string(k);
        }
        doc["pairs"] = pairs;
    } else {
        if (k < 0) throw DomainError("single-model bisim needs --k");
        const Partition p = classes_mod_k_bisim(m, split_vars(vars_spec), k);
        json classes = json::array();
        for (const auto& members : p.classes) {
            json row = json::array();
            for (int w : members) row.push_back(m.id(w));
            classes.push_back(row);
        }
        doc["k"] = k;
        doc["classes"] = classes;
    }
    emit(doc, common.out);
    return kExitOk;
}

int cmd_verify_pmorphism(const std::string& source_path, const std::string& target_path,
                         const std::string& map_path, const CommonArgs& common) {
    PointedModel source = load_model(source_path);
    PointedModel target = load_model(target_path);
    const PMorphism f = load_map(map_path, std::move(source), std::move(target));
    const PMorphismReport report = verify_pmorphism(f);
    emit(to_json(report, f), common.out);
    return report.ok() ? kExitOk : kExitViolation;
}

int cmd_repair(const std::string& model_path, const std::string& axiom_spec, int budget,
               int max_steps, int unravel_bound, const CommonArgs& common) {
    const PointedModel loaded = load_model(model_path);
    const PointedModel base = generated_submodel(loaded, loaded.root());
    const AxiomSet axioms = parse_axiom_set(axiom_spec);
    RepairState seed = unravel_bound >= 0 ? seed_state_unravel(base, unravel_bound)
                                          : seed_state_identity(base);
    const RepairRun run = run_repair_from(std::move(seed), axioms, budget, max_steps);

    // census as a human-readable table on stderr
    std::fprintf(stderr, "%-8s %-6s %s\n", "type", "depth", "count");
    for (const auto& [key, count] : run.unresolved.counts)
        std::fprintf(stderr, "%-8s %-6d %d\n", key.first.c_str(), key.second, count);

    const PMorphism f{run.state.current, run.state.base, run.state.f};
    json doc;
    doc["status"] = run.status == RepairStatus::Saturated ? "saturated" : "truncated";
    doc["steps"] = run.steps;
    doc["current"] = model_to_json(run.state.current);
    doc["base"] = model_to_json(run.state.base);
    doc["map"] = map_to_json(f)["map"];
    doc["census"] = to_json(run.unresolved);
    emit(doc, common.out);
    return run.status == RepairStatus::Saturated ? kExitOk : kExitTruncated;
}

int cmd_verify_conditions(const std::string& model_path, const std::string& axiom_spec, int k,
                          bool strict, const CommonArgs& common) {
    const PointedModel m = load_model(model_path);
    const AxiomSet axioms = parse_axiom_set(axiom_spec);
    const ConditionReport report =
        strict ? verify_global_conditions(m, axioms) : verify_bounded_conditions(m, axioms, k);
    emit(to_json(report, m), common.out);
    return report.ok() ? kExitOk : kExitViolation;
}

int cmd_filtrate(const std::string& model_path, const std::string& formula_text,
                 const std::string& axiom_spec, bool strict, const std::string& report_path,
                 const CommonArgs& common) {
    const PointedModel m = load_model(model_path);
    const Formula phi = parse_formula(formula_text);
    const AxiomSet axioms = parse_axiom_set(axiom_spec);
    try {
        const FiltrationResult f = build_filtration(m, phi, axioms, strict);
        const json report = filtration_report_json(f, axioms);
        if (!report_path.empty()) emit(report, report_path);
        emit(model_to_json(f.quotient), common.out);
        const auto& verifiers = report["verifiers"];
        const bool ok = verifiers["independence"]["ok"].get<bool>() &&
                        verifiers["quotient_frame"]["ok"].get<bool>() &&
                        verifiers["homomorphism"]["ok"].get<bool>() &&
                        verifiers["truth_lemma"]["ok"].get<bool>();
        return ok ? kExitOk : kExitViolation;
    } catch (const FiltrationPreconditionError& e) {
        const json doc = json{{"error", json{{"kind", "precondition"}, {"message", e.what()}}},
                              {"preconditions", to_json(e.report(), m)}};
        if (!report_path.empty()) emit(doc, report_path);
        emit(doc, common.out);
        return kExitViolation;
    }
}

int cmd_pipeline(const std::string& model_path, const std::string& formula_text,
                 const std::string& axiom_spec, const PipelineOptions& opts,
                 const CommonArgs& common) {
    const PointedModel m = load_model(model_path);
    const Formula phi = parse_formula(formula_text);
    const AxiomSet axioms = parse_axiom_set(axiom_spec);
    const PipelineReport report = run_pipeline(m, phi, axioms, opts);
    emit(report.to_json(true), common.out);
    return report.exit_code;
}

int cmd_sat(const std::string& formula_text, const std::string& axiom_spec, int max_size,
            const CommonArgs& common) {
    const Formula phi = parse_formula(formula_text);
    const AxiomSet axioms = parse_axiom_set(axiom_spec);
    const auto model = sat_oracle(phi, axioms, max_size);
    json doc;
    doc["formula"] = phi.to_string();
    doc["satisfiable"] = model.has_value();
    if (model) doc["model"] = model_to_json(*model);
    emit(doc, common.out);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"countermodel toolkit for K + {<>^m p -> <>^n p} logics"};
    app.require_subcommand(1);

    CommonArgs common;
    std::string model_path, model2_path, formula_text, axiom_spec, world, vars_spec;
    std::string source_path, target_path, map_path, report_path;
    int k = -1, bound = 1, budget = 1, max_steps = 1000, max_size = 3, unravel_bound = -1;
    PipelineOptions pipeline_opts;

    auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", common.out, "write JSON here"); };

    auto* parse_cmd = app.add_subcommand("parse", "parse a formula");
    parse_cmd->add_option("--formula", formula_text, "formula text")->required();
    add_out(parse_cmd);

    auto* mc_cmd = app.add_subcommand("mc", "model check a formula at a world");
    mc_cmd->add_option("--model", model_path)->required();
    mc_cmd->add_option("--world", world)->required();
    mc_cmd->add_option("--formula", formula_text)->required();
    add_out(mc_cmd);

    auto* fc_cmd = app.add_subcommand("frame-check", "check the axiom frame conditions");
    fc_cmd->add_option("--model", model_path)->required();
    fc_cmd->add_option("--axioms", axiom_spec)->required();
    add_out(fc_cmd);

    auto* sat_cmd_frame = app.add_subcommand("saturate", "saturate into a Phi-frame");
    sat_cmd_frame->add_option("--model", model_path)->required();
    sat_cmd_frame->add_option("--axioms", axiom_spec)->required();
    add_out(sat_cmd_frame);

    auto* unravel_cmd = app.add_subcommand("unravel", "bounded tree unraveling");
    unravel_cmd->add_option("--model", model_path)->required();
    unravel_cmd->add_option("--bound", bound)->required();
    add_out(unravel_cmd);

    auto* bisim_cmd = app.add_subcommand("bisim", "bisimilarity classes or cross-model pairs");
    bisim_cmd->add_option("--model", model_path)->required();
    bisim_cmd->add_option("--model2", model2_path);
    bisim_cmd->add_option("--vars", vars_spec, "comma-separated variables");
    bisim_cmd->add_option("--k", k, "level; omit for full bisimilarity");
    add_out(bisim_cmd);

    auto* vp_cmd = app.add_subcommand("verify-pmorphism", "check the three p-morphism clauses");
    vp_cmd->add_option("--source", source_path)->required();
    vp_cmd->add_option("--target", target_path)->required();
    vp_cmd->add_option("--map", map_path)->required();
    add_out(vp_cmd);

    auto* repair_cmd = app.add_subcommand("repair", "bounded defect repair");
    repair_cmd->add_option("--model", model_path)->required();
    repair_cmd->add_option("--axioms", axiom_spec)->required();
    repair_cmd->add_option("--budget", budget)->required();
    repair_cmd->add_option("--max-steps", max_steps);
    repair_cmd->add_option("--seed-unravel", unravel_bound, "seed from a closed unraveling");
    add_out(repair_cmd);

    auto* vc_cmd = app.add_subcommand("verify-conditions", "representation-lemma conditions");
    vc_cmd->add_option("--model", model_path)->required();
    vc_cmd->add_option("--axioms", axiom_spec)->required();
    vc_cmd->add_option("--k", k)->required();
    vc_cmd->add_flag("--strict", pipeline_opts.strict);
    add_out(vc_cmd);

    auto* filt_cmd = app.add_subcommand("filtrate", "stratified filtration quotient");
    filt_cmd->add_option("--model", model_path)->required();
    filt_cmd->add_option("--formula", formula_text)->required();
    filt_cmd->add_option("--axioms", axiom_spec)->required();
    filt_cmd->add_flag("--strict", pipeline_opts.strict);
    filt_cmd->add_option("--report", report_path, "write the verifier report here");
    add_out(filt_cmd);

    auto* pipe_cmd = app.add_subcommand("pipeline", "end-to-end countermodel pipeline");
    pipe_cmd->add_option("--model", model_path)->required();
    pipe_cmd->add_option("--formula", formula_text)->required();
    pipe_cmd->add_option("--axioms", axiom_spec)->required();
    pipe_cmd->add_option("--budget", pipeline_opts.budget);
    pipe_cmd->add_option("--max-steps", pipeline_opts.max_steps);
    pipe_cmd->add_flag("--saturate", pipeline_opts.saturate);
    pipe_cmd->add_flag("--unravel", pipeline_opts.unravel);
    pipe_cmd->add_flag("--strict", pipeline_opts.strict);
    add_out(pipe_cmd);

    auto* sat_cmd = app.add_subcommand("sat", "brute-force satisfiability over Phi-frames");
    sat_cmd->add_option("--formula", formula_text)->required();
    sat_cmd->add_option("--axioms", axiom_spec)->required();
    sat_cmd->add_option("--max-size", max_size);
    add_out(sat_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (parse_cmd->parsed()) return cmd_parse(formula_text, common);
        if (mc_cmd->parsed()) return cmd_mc(model_path, world, formula_text, common);
        if (fc_cmd->parsed()) return cmd_frame_check(model_path, axiom_spec, common);
        if (sat_cmd_frame->parsed()) return cmd_saturate(model_path, axiom_spec, common);
        if (unravel_cmd->parsed()) return cmd_unravel(model_path, bound, common);
        if (bisim_cmd->parsed()) return cmd_bisim(model_path, model2_path, vars_spec, k, common);
        if (vp_cmd->parsed())
            return cmd_verify_pmorphism(source_path, target_path, map_path, common);
        if (repair_cmd->parsed())
            return cmd_repair(model_path, axiom_spec, budget, max_steps, unravel_bound, common);
        if (vc_cmd->parsed())
            return cmd_verify_conditions(model_path, axiom_spec, k, pipeline_opts.strict, common);
        if (filt_cmd->parsed())
            return cmd_filtrate(model_path, formula_text, axiom_spec, pipeline_opts.strict,
                                report_path, common);
        if (pipe_cmd->parsed())
            return cmd_pipeline(model_path, formula_text, axiom_spec, pipeline_opts, common);
        if (sat_cmd->parsed()) return cmd_sat(formula_text, axiom_spec, max_size, common);
    } catch (const ParseError& e) {
        json doc = error_json("parse", e.what());
        doc["error"]["position"] = e.position();
        emit(doc, common.out);
        return kExitInputError;
    } catch (const IoError& e) {
        emit(error_json("io", e.what()), common.out);
        return kExitInputError;
    } catch (const DomainError& e) {
        emit(error_json("domain", e.what()), common.out);
        return kExitInputError;
    } catch (const InvariantViolation& e) {
        emit(error_json("invariant", e.what()), common.out);
        return kExitViolation;
    }
    return kExitInputError;
}
