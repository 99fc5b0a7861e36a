#pragma once

// Result aggregation and machine-readable emission: canonical
// report.json plus the CSV plot tables (throughput and drop rate per
// node per bandwidth, degree series, skips).

#include <cstdint>
#include <string>
#include <vector>

#include "satqos/cluster.hpp"
#include "satqos/qos.hpp"
#include "satqos/testplan.hpp"

namespace satqos {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunOutcome {
    std::string run_id;
    std::string src;
    std::string dst;
    double bandwidth_hz = 0.0;
    bool skipped = false;
    QoSReport report;         // valid when !skipped
    std::string skip_reason;  // valid when skipped

    friend bool operator==(const RunOutcome&, const RunOutcome&) = default;
};

struct DegreeSample {
    double t_s = 0.0;
    int degree = 0;

    friend bool operator==(const DegreeSample&, const DegreeSample&) = default;
};

struct ClusterSummary {
    std::vector<NodeRecord> nodes;
    std::vector<Deployment> deployments;
    std::uint64_t events_applied = 0;

    friend bool operator==(const ClusterSummary&, const ClusterSummary&) = default;
};

struct ReportBundle {
    TestPlan plan;                  // full echo
    std::vector<RunOutcome> runs;   // canonical expansion order
    std::string degree_node;        // designated node for the degree series
    std::vector<DegreeSample> degrees;
    ClusterSummary cluster;
    std::uint64_t seed = 0;         // effective seed (after any override)
    std::string tool_version = kToolVersion;

    friend bool operator==(const ReportBundle&, const ReportBundle&) = default;
};

// Order results into the plan's canonical expansion order. Every run_id
// must appear exactly once; missing or duplicate ids raise
// AggregationError listing them.
ReportBundle aggregate(const TestPlan& plan, std::vector<RunOutcome> results,
                       std::string degree_node = {}, std::vector<DegreeSample> degrees = {},
                       ClusterSummary cluster = {}, std::uint64_t seed = 0);

// Canonical JSON bytes: sorted keys, 17-significant-digit floats,
// byte-stable across runs.
std::string emit_json(const ReportBundle& bundle);

// Inverse of emit_json (accepts any JSON with the documented schema).
ReportBundle parse_bundle(const std::string& json_text);

struct PlotTables {
    std::string throughput_csv;       // node,bandwidth_mbps,throughput_mbps
    std::string packet_drop_rate_csv; // node,bandwidth_mbps,packet_drop_rate,loss_fraction
    std::string skips_csv;            // run_id,node,bandwidth_mbps,reason
    std::string degrees_csv;          // t_s,node,degree
};

// Fixed 6-decimal formatting, rows sorted by (node, bandwidth, run_id).
// Every number is copied from a QoSReport field; nothing is recomputed.
PlotTables emit_plot_data(const ReportBundle& bundle);

}  // namespace satqos
