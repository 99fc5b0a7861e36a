#pragma once

// Experiment plan ingestion and expansion. The canonical plan format is
// a strict JSON document: unknown keys are rejected and every error
// names the JSON-pointer path of the offending key. All randomness in a
// run flows from the single plan seed.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "satqos/cluster.hpp"
#include "satqos/link.hpp"
#include "satqos/orbit.hpp"
#include "satqos/qos.hpp"
#include "satqos/topology.hpp"

namespace satqos {

struct ClusterNodesConfig {
    std::string master_id;
    std::vector<std::pair<std::string, NodeKind>> workers;

    friend bool operator==(const ClusterNodesConfig&, const ClusterNodesConfig&) = default;
};

struct TestPlan {
    ConstellationConfig constellation;
    double window_t0_s = 0.0;
    double window_t1_s = 0.0;
    double step_s = 1.0;
    VisibilityParams visibility;
    LinkBudgetParams link;            // bandwidth_hz stays 0; it is swept
    std::vector<double> bandwidths_hz;
    std::vector<FlowSpec> flows;
    LossModelParams loss;
    ClusterNodesConfig cluster_nodes; // defaulted from flows when omitted
    std::uint64_t seed = 0;

    friend bool operator==(const TestPlan&, const TestPlan&) = default;
};

struct ScenarioRun {
    std::string run_id;      // unique within the expansion
    FlowSpec flow;
    double bandwidth_hz = 0.0;
    LinkBudgetParams link;   // resolved, bandwidth_hz = cell bandwidth
    LossModelParams loss;
    std::uint64_t seed_derived = 0;

    friend bool operator==(const ScenarioRun&, const ScenarioRun&) = default;
};

// Parse + validate the canonical JSON plan text. Defaults are applied;
// unknown keys, missing required fields and out-of-range values raise
// ValidationError with the field's path.
TestPlan parse_plan(const std::string& text);

// Canonical serialization; parse_plan(emit_plan(p)) == p.
std::string emit_plan(const TestPlan& plan);

// Cartesian product flows x bandwidths, flows outer. Per-run seeds are
// derive_run_seed(plan.seed, src, dst, bandwidth) -- independent of the
// run's position in the expansion.
std::vector<ScenarioRun> expand_matrix(const TestPlan& plan);

// Non-fatal advisories: unreachable ranges, utilization saturation,
// flow endpoints missing from the constellation.
std::vector<std::string> validate_compat(const TestPlan& plan);

}  // namespace satqos
