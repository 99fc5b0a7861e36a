#pragma once

// Full pipeline: plan -> constellation -> topology -> cluster -> QoS
// sessions -> report bundle. Scenario cells run concurrently up to a
// jobs bound; results are keyed, so concurrency never changes output.

#include <cstdint>
#include <functional>
#include <string>

#include "satqos/report.hpp"
#include "satqos/testplan.hpp"

namespace satqos {

using ProgressFn = std::function<void(const std::string& line)>;

// jobs = 0 picks min(cells, hardware threads). The progress callback,
// when set, receives one "run_id=... status=..." line per finished cell
// (from worker threads, already serialized).
ReportBundle run_pipeline(const TestPlan& plan, unsigned jobs = 0,
                          const ProgressFn& progress = nullptr);

// Adjacency snapshot of the plan's constellation at time t (t >= 0,
// independent of the plan window).
TopologySnapshot snapshot_at(const TestPlan& plan, double t);

// Canonical JSON form of a snapshot, used by the topology subcommand.
std::string emit_snapshot_json(const TopologySnapshot& snap);

// The deterministic "randomly selected" node whose degree series the
// report tracks: seeded pick from the constellation.
std::string designated_degree_node(const TestPlan& plan);

}  // namespace satqos
