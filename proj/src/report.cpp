#include "satqos/report.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "plan_json.hpp"

namespace satqos {

namespace {

using detail::as_double;
using detail::as_int;
using detail::as_string;
using detail::as_u64;
using detail::fail;
using detail::ObjectReader;
using nlohmann::json;

const char* node_role_name(NodeRole r) { return r == NodeRole::kMaster ? "master" : "worker"; }
const char* node_kind_name(NodeKind k) { return k == NodeKind::kPhysical ? "physical" : "virtual"; }
const char* node_status_name(NodeStatus s) { return s == NodeStatus::kLive ? "live" : "removed"; }

const char* deploy_status_name(DeployStatus s) {
    switch (s) {
        case DeployStatus::kPending: return "pending";
        case DeployStatus::kRunning: return "running";
        case DeployStatus::kFailed: return "failed";
    }
    return "failed";
}

void emit_link_params(JsonWriter& w, const LinkBudgetParams& p) {
    w.begin_object();
    w.field("bandwidth_hz", p.bandwidth_hz);
    w.field("carrier_frequency_hz", p.carrier_frequency_hz);
    if (p.constant_path_loss_linear) {
        w.field("constant_path_loss_linear", *p.constant_path_loss_linear);
    }
    w.field("noise_model",
            p.noise_model == NoiseModel::kBandwidthFree ? "bandwidth_free" : "bandwidth_scaled");
    w.field("noise_temperature_k", p.noise_temperature_k);
    w.field("peak_gain_linear", p.peak_gain_linear);
    w.field("transmit_power_w", p.transmit_power_w);
    w.end_object();
}

void emit_loss_params(JsonWriter& w, const LossModelParams& p) {
    w.begin_object();
    w.field("base_loss_prob", p.base_loss_prob);
    w.field("load_coefficient", p.load_coefficient);
    w.field("max_loss_prob", p.max_loss_prob);
    w.end_object();
}

void emit_run(JsonWriter& w, const RunOutcome& run) {
    w.begin_object();
    w.field("bandwidth_hz", run.bandwidth_hz);
    if (!run.skipped) {
        const QoSReport& r = run.report;
        w.field("delivered_rate_bps", r.delivered_rate_bps);
        w.field("dst", run.dst);
        w.field("loss_fraction", r.loss_fraction);
        w.field("packet_drop_rate", r.packet_drop_rate);
        w.field("packets_attempted", r.packets_attempted);
        w.field("packets_delivered", r.packets_delivered);
        w.field("packets_lost", r.packets_lost);
        w.key("params");
        w.begin_object();
        w.key("link");
        emit_link_params(w, r.link);
        w.key("loss");
        emit_loss_params(w, r.loss);
        w.field("seed", r.seed);
        w.end_object();
        w.field("run_id", run.run_id);
        w.field("src", run.src);
        w.field("status", "ok");
        w.field("throughput_bps", r.throughput_bps);
        w.key("window_metrics");
        w.begin_array();
        for (const auto& m : r.window_metrics) {
            w.begin_object();
            w.field("t_connect_s", m.t_connect_s);
            w.field("t_trans_s", m.t_trans_s);
            w.end_object();
        }
        w.end_array();
    } else {
        w.field("dst", run.dst);
        w.field("reason", run.skip_reason);
        w.field("run_id", run.run_id);
        w.field("src", run.src);
        w.field("status", "skipped");
    }
    w.end_object();
}

LinkBudgetParams parse_link_echo(const json& j, const std::string& path) {
    ObjectReader r(j, path);
    LinkBudgetParams p;
    p.bandwidth_hz = as_double(r.required("bandwidth_hz"), r.child("bandwidth_hz"));
    p.carrier_frequency_hz =
        as_double(r.required("carrier_frequency_hz"), r.child("carrier_frequency_hz"));
    if (const json* v = r.optional("constant_path_loss_linear")) {
        p.constant_path_loss_linear = as_double(*v, r.child("constant_path_loss_linear"));
    }
    const std::string model = as_string(r.required("noise_model"), r.child("noise_model"));
    if (model == "bandwidth_free") {
        p.noise_model = NoiseModel::kBandwidthFree;
    } else if (model == "bandwidth_scaled") {
        p.noise_model = NoiseModel::kBandwidthScaled;
    } else {
        fail(r.child("noise_model"), "unknown noise model " + model);
    }
    p.noise_temperature_k =
        as_double(r.required("noise_temperature_k"), r.child("noise_temperature_k"));
    p.peak_gain_linear = as_double(r.required("peak_gain_linear"), r.child("peak_gain_linear"));
    p.transmit_power_w = as_double(r.required("transmit_power_w"), r.child("transmit_power_w"));
    r.finish();
    return p;
}

LossModelParams parse_loss_echo(const json& j, const std::string& path) {
    ObjectReader r(j, path);
    LossModelParams p;
    p.base_loss_prob = as_double(r.required("base_loss_prob"), r.child("base_loss_prob"));
    p.load_coefficient = as_double(r.required("load_coefficient"), r.child("load_coefficient"));
    p.max_loss_prob = as_double(r.required("max_loss_prob"), r.child("max_loss_prob"));
    r.finish();
    return p;
}

RunOutcome parse_run(const json& j, const std::string& path) {
    ObjectReader r(j, path);
    RunOutcome run;
    run.bandwidth_hz = as_double(r.required("bandwidth_hz"), r.child("bandwidth_hz"));
    run.dst = as_string(r.required("dst"), r.child("dst"));
    run.run_id = as_string(r.required("run_id"), r.child("run_id"));
    run.src = as_string(r.required("src"), r.child("src"));
    const std::string status = as_string(r.required("status"), r.child("status"));
    if (status == "skipped") {
        run.skipped = true;
        run.skip_reason = as_string(r.required("reason"), r.child("reason"));
        r.finish();
        return run;
    }
    if (status != "ok") fail(r.child("status"), "expected \"ok\" or \"skipped\"");

    QoSReport& q = run.report;
    q.src = run.src;
    q.dst = run.dst;
    q.bandwidth_hz = run.bandwidth_hz;
    q.delivered_rate_bps = as_double(r.required("delivered_rate_bps"), r.child("delivered_rate_bps"));
    q.loss_fraction = as_double(r.required("loss_fraction"), r.child("loss_fraction"));
    q.packet_drop_rate = as_double(r.required("packet_drop_rate"), r.child("packet_drop_rate"));
    q.packets_attempted = as_u64(r.required("packets_attempted"), r.child("packets_attempted"));
    q.packets_delivered = as_u64(r.required("packets_delivered"), r.child("packets_delivered"));
    q.packets_lost = as_u64(r.required("packets_lost"), r.child("packets_lost"));
    {
        const std::string ppath = r.child("params");
        ObjectReader pr(r.required("params"), ppath);
        q.link = parse_link_echo(pr.required("link"), pr.child("link"));
        q.loss = parse_loss_echo(pr.required("loss"), pr.child("loss"));
        q.seed = as_u64(pr.required("seed"), pr.child("seed"));
        pr.finish();
    }
    q.throughput_bps = as_double(r.required("throughput_bps"), r.child("throughput_bps"));
    {
        const json& wm = r.required("window_metrics");
        if (!wm.is_array()) fail(r.child("window_metrics"), "expected an array");
        for (std::size_t i = 0; i < wm.size(); ++i) {
            const std::string mpath = r.child("window_metrics") + "/" + std::to_string(i);
            ObjectReader mr(wm[i], mpath);
            WindowMetric m;
            m.t_connect_s = as_double(mr.required("t_connect_s"), mr.child("t_connect_s"));
            m.t_trans_s = as_double(mr.required("t_trans_s"), mr.child("t_trans_s"));
            mr.finish();
            q.window_metrics.push_back(m);
        }
    }
    r.finish();
    return run;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

ReportBundle aggregate(const TestPlan& plan, std::vector<RunOutcome> results,
                       std::string degree_node, std::vector<DegreeSample> degrees,
                       ClusterSummary cluster, std::uint64_t seed) {
    const std::vector<ScenarioRun> expansion = expand_matrix(plan);

    std::map<std::string, RunOutcome> by_id;
    std::vector<std::string> duplicates;
    for (auto& outcome : results) {
        std::string id = outcome.run_id;  // read before the move; emplace may consume it
        if (!by_id.emplace(id, std::move(outcome)).second) {
            duplicates.push_back(std::move(id));
        }
    }
    std::vector<std::string> missing;
    std::vector<std::string> unexpected;
    for (const auto& run : expansion) {
        if (!by_id.contains(run.run_id)) missing.push_back(run.run_id);
    }
    for (const auto& [id, _] : by_id) {
        if (std::none_of(expansion.begin(), expansion.end(),
                         [&](const ScenarioRun& r) { return r.run_id == id; })) {
            unexpected.push_back(id);
        }
    }
    if (!duplicates.empty() || !missing.empty() || !unexpected.empty()) {
        std::string msg = "aggregate: results do not cover the plan expansion exactly once;";
        auto list = [&msg](const char* label, const std::vector<std::string>& ids) {
            if (ids.empty()) return;
            msg += std::string(" ") + label + ":";
            for (const auto& id : ids) msg += " " + id;
        };
        list("missing", missing);
        list("duplicate", duplicates);
        list("unexpected", unexpected);
        throw AggregationError(msg);
    }

    ReportBundle bundle;
    bundle.plan = plan;
    bundle.runs.reserve(expansion.size());
    for (const auto& run : expansion) {
        bundle.runs.push_back(std::move(by_id.at(run.run_id)));
    }
    bundle.degree_node = std::move(degree_node);
    bundle.degrees = std::move(degrees);
    bundle.cluster = std::move(cluster);
    bundle.seed = seed;
    return bundle;
}

std::string emit_json(const ReportBundle& bundle) {
    JsonWriter w;
    w.begin_object();

    w.key("cluster");
    w.begin_object();
    w.key("deployments");
    w.begin_array();
    for (const auto& d : bundle.cluster.deployments) {
        w.begin_object();
        w.field("id", d.id);
        w.field("node", d.node);
        w.field("ns", d.ns);
        w.field("status", deploy_status_name(d.status));
        w.field("tool", d.tool);
        w.end_object();
    }
    w.end_array();
    w.field("events_applied", bundle.cluster.events_applied);
    w.key("nodes");
    w.begin_array();
    for (const auto& n : bundle.cluster.nodes) {
        w.begin_object();
        w.field("id", n.id);
        w.field("kind", node_kind_name(n.kind));
        w.field("role", node_role_name(n.role));
        w.field("status", node_status_name(n.status));
        w.end_object();
    }
    w.end_array();
    w.end_object();

    w.key("generated_at");
    w.begin_object();
    w.field("seed", bundle.seed);
    w.field("tool_version", bundle.tool_version);
    w.end_object();

    w.key("plan");
    detail::emit_plan_object(w, bundle.plan);

    w.key("runs");
    w.begin_array();
    for (const auto& run : bundle.runs) emit_run(w, run);
    w.end_array();

    w.field("schema", "satqos.report.v1");

    w.key("topology_summary");
    w.begin_object();
    w.key("degrees");
    w.begin_array();
    for (const auto& d : bundle.degrees) {
        w.begin_object();
        w.field("degree", d.degree);
        w.field("t_s", d.t_s);
        w.end_object();
    }
    w.end_array();
    w.field("node", bundle.degree_node);
    w.end_object();

    w.end_object();
    std::string out = w.take();
    out += '\n';
    return out;
}

ReportBundle parse_bundle(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("report bundle is not valid JSON: ") + e.what());
    }
    ObjectReader r(doc, "");
    ReportBundle bundle;

    {
        const std::string cpath = r.child("cluster");
        ObjectReader cr(r.required("cluster"), cpath);
        const json& deps = cr.required("deployments");
        if (!deps.is_array()) fail(cr.child("deployments"), "expected an array");
        for (std::size_t i = 0; i < deps.size(); ++i) {
            const std::string dpath = cr.child("deployments") + "/" + std::to_string(i);
            ObjectReader dr(deps[i], dpath);
            Deployment d;
            d.id = as_string(dr.required("id"), dr.child("id"));
            d.node = as_string(dr.required("node"), dr.child("node"));
            d.ns = as_string(dr.required("ns"), dr.child("ns"));
            const std::string status = as_string(dr.required("status"), dr.child("status"));
            if (status == "pending") {
                d.status = DeployStatus::kPending;
            } else if (status == "running") {
                d.status = DeployStatus::kRunning;
            } else if (status == "failed") {
                d.status = DeployStatus::kFailed;
            } else {
                fail(dr.child("status"), "unknown deployment status " + status);
            }
            d.tool = as_string(dr.required("tool"), dr.child("tool"));
            dr.finish();
            bundle.cluster.deployments.push_back(std::move(d));
        }
        bundle.cluster.events_applied =
            as_u64(cr.required("events_applied"), cr.child("events_applied"));
        const json& nodes = cr.required("nodes");
        if (!nodes.is_array()) fail(cr.child("nodes"), "expected an array");
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const std::string npath = cr.child("nodes") + "/" + std::to_string(i);
            ObjectReader nr(nodes[i], npath);
            NodeRecord n;
            n.id = as_string(nr.required("id"), nr.child("id"));
            const std::string kind = as_string(nr.required("kind"), nr.child("kind"));
            n.kind = kind == "physical" ? NodeKind::kPhysical : NodeKind::kVirtual;
            const std::string role = as_string(nr.required("role"), nr.child("role"));
            n.role = role == "master" ? NodeRole::kMaster : NodeRole::kWorker;
            const std::string status = as_string(nr.required("status"), nr.child("status"));
            n.status = status == "live" ? NodeStatus::kLive : NodeStatus::kRemoved;
            nr.finish();
            bundle.cluster.nodes.push_back(std::move(n));
        }
        cr.finish();
    }

    {
        const std::string gpath = r.child("generated_at");
        ObjectReader gr(r.required("generated_at"), gpath);
        bundle.seed = as_u64(gr.required("seed"), gr.child("seed"));
        bundle.tool_version = as_string(gr.required("tool_version"), gr.child("tool_version"));
        gr.finish();
    }

    bundle.plan = detail::parse_plan_object(r.required("plan"), r.child("plan"));

    {
        const json& runs = r.required("runs");
        if (!runs.is_array()) fail(r.child("runs"), "expected an array");
        for (std::size_t i = 0; i < runs.size(); ++i) {
            bundle.runs.push_back(parse_run(runs[i], r.child("runs") + "/" + std::to_string(i)));
        }
    }

    const std::string schema = as_string(r.required("schema"), r.child("schema"));
    if (schema != "satqos.report.v1") fail(r.child("schema"), "unsupported schema " + schema);

    {
        const std::string tpath = r.child("topology_summary");
        ObjectReader tr(r.required("topology_summary"), tpath);
        const json& degrees = tr.required("degrees");
        if (!degrees.is_array()) fail(tr.child("degrees"), "expected an array");
        for (std::size_t i = 0; i < degrees.size(); ++i) {
            const std::string dpath = tr.child("degrees") + "/" + std::to_string(i);
            ObjectReader dr(degrees[i], dpath);
            DegreeSample s;
            s.degree = static_cast<int>(as_int(dr.required("degree"), dr.child("degree")));
            s.t_s = as_double(dr.required("t_s"), dr.child("t_s"));
            dr.finish();
            bundle.degrees.push_back(s);
        }
        bundle.degree_node = as_string(tr.required("node"), tr.child("node"));
        tr.finish();
    }

    r.finish();
    return bundle;
}

PlotTables emit_plot_data(const ReportBundle& bundle) {
    std::vector<const RunOutcome*> ok_runs;
    std::vector<const RunOutcome*> skipped;
    for (const auto& run : bundle.runs) {
        (run.skipped ? skipped : ok_runs).push_back(&run);
    }
    auto by_node_bandwidth = [](const RunOutcome* a, const RunOutcome* b) {
        return std::tie(a->dst, a->bandwidth_hz, a->run_id) <
               std::tie(b->dst, b->bandwidth_hz, b->run_id);
    };
    std::sort(ok_runs.begin(), ok_runs.end(), by_node_bandwidth);
    std::sort(skipped.begin(), skipped.end(), by_node_bandwidth);

    PlotTables tables;
    tables.throughput_csv = "node,bandwidth_mbps,throughput_mbps\n";
    tables.packet_drop_rate_csv = "node,bandwidth_mbps,packet_drop_rate,loss_fraction\n";
    for (const auto* run : ok_runs) {
        const std::string node = csv_field(run->dst);
        const std::string bw = format_fixed6(run->bandwidth_hz / 1e6);
        tables.throughput_csv += node + "," + bw + "," +
                                 format_fixed6(run->report.throughput_bps / 1e6) + "\n";
        tables.packet_drop_rate_csv += node + "," + bw + "," +
                                       format_fixed6(run->report.packet_drop_rate) + "," +
                                       format_fixed6(run->report.loss_fraction) + "\n";
    }

    tables.skips_csv = "run_id,node,bandwidth_mbps,reason\n";
    for (const auto* run : skipped) {
        tables.skips_csv += csv_field(run->run_id) + "," + csv_field(run->dst) + "," +
                            format_fixed6(run->bandwidth_hz / 1e6) + "," +
                            csv_field(run->skip_reason) + "\n";
    }

    tables.degrees_csv = "t_s,node,degree\n";
    for (const auto& d : bundle.degrees) {
        tables.degrees_csv += format_fixed6(d.t_s) + "," + csv_field(bundle.degree_node) + "," +
                              std::to_string(d.degree) + "\n";
    }
    return tables;
}

}  // namespace satqos
