// ============================================================================
// pipeline.hpp — end-to-end countermodel pipeline
// ============================================================================
//
// load -> point-generated submodel -> frame check (or saturation) -> seed ->
// bounded repair -> valuation pullback -> filtration + verifiers.  Each
// stage records an outcome {ok, truncated, violated}; a truncated repair
// stops the run before filtration, a violated stage stops it immediately.
// Reports are deterministic for fixed inputs and flags; timings live in a
// separate field so they can be stripped for byte comparisons.
// Exit codes: 0 ok, 2 truncated, 3 violation, 4 input error.
// ============================================================================

#pragma once

#include <string>

#include "json.hpp"

#include "densify/filtration.hpp"
#include "densify/model.hpp"
#include "densify/repair.hpp"

namespace densify {

inline constexpr int kExitOk = 0;
inline constexpr int kExitTruncated = 2;
inline constexpr int kExitViolation = 3;
inline constexpr int kExitInputError = 4;

struct PipelineOptions {
    bool saturate = false;
    bool unravel = false;
    bool strict = false;
    int budget = -1;  // defaults to md(phi)
    int max_steps = 1000;
};

struct PipelineReport {
    nlohmann::json stages = nlohmann::json::array();
    nlohmann::json summary;
    nlohmann::json timings_ms;
    int exit_code = kExitOk;

    nlohmann::json to_json(bool include_timings = true) const;
};

PipelineReport run_pipeline(const PointedModel& input, const Formula& phi, const AxiomSet& axioms,
                            const PipelineOptions& opts);

}  // namespace densify
