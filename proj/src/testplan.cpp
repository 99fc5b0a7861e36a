#include "satqos/testplan.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <unordered_set>

#include "plan_json.hpp"
#include "satqos/rng.hpp"

namespace satqos {

namespace detail {

namespace {

bool valid_node_id(const std::string& id) {
    if (id.empty()) return false;
    return std::all_of(id.begin(), id.end(), [](unsigned char c) {
        return std::isalnum(c) != 0 || c == '-' || c == '_' || c == '.';
    });
}

std::string node_id_field(const json& j, const std::string& path) {
    std::string id = as_string(j, path);
    if (!valid_node_id(id)) {
        fail(path, "node ids must be non-empty and use only [A-Za-z0-9._-]");
    }
    return id;
}

double positive(const json& j, const std::string& path) {
    const double v = as_double(j, path);
    if (!(v > 0.0)) fail(path, "must be > 0");
    return v;
}

ConstellationConfig parse_constellation(const json& j, const std::string& path) {
    ObjectReader r(j, path);
    ConstellationConfig c;
    c.planes = static_cast<int>(as_int(r.required("planes"), r.child("planes")));
    if (c.planes < 1) fail(r.child("planes"), "must be >= 1");
    c.sats_per_plane =
        static_cast<int>(as_int(r.required("sats_per_plane"), r.child("sats_per_plane")));
    if (c.sats_per_plane < 1) fail(r.child("sats_per_plane"), "must be >= 1");
    c.altitude_km = positive(r.required("altitude_km"), r.child("altitude_km"));
    c.inclination_deg = as_double(r.required("inclination_deg"), r.child("inclination_deg"));
    if (c.inclination_deg < 0.0 || c.inclination_deg > 180.0) {
        fail(r.child("inclination_deg"), "must be in [0, 180]");
    }
    if (const json* f = r.optional("phasing_factor")) {
        c.phasing_factor = static_cast<int>(as_int(*f, r.child("phasing_factor")));
    } else {
        c.phasing_factor = std::min(1, c.planes - 1);
    }
    if (c.phasing_factor < 0 || c.phasing_factor >= c.planes) {
        fail(r.child("phasing_factor"), "must be in [0, planes)");
    }
    if (const json* s = r.optional("raan_spread_deg")) {
        c.raan_spread_deg = as_double(*s, r.child("raan_spread_deg"));
        if (c.raan_spread_deg < 0.0 || c.raan_spread_deg > 360.0) {
            fail(r.child("raan_spread_deg"), "must be in [0, 360]");
        }
    }
    r.finish();
    return c;
}

VisibilityParams parse_visibility(const json& j, const std::string& path) {
    ObjectReader r(j, path);
    VisibilityParams v;
    if (const json* m = r.optional("max_range_km")) {
        v.max_range_km = positive(*m, r.child("max_range_km"));
    }
    if (const json* m = r.optional("occlusion_margin_km")) {
        v.occlusion_margin_km = as_double(*m, r.child("occlusion_margin_km"));
        if (v.occlusion_margin_km < 0.0) fail(r.child("occlusion_margin_km"), "must be >= 0");
    }
    r.finish();
    return v;
}

NoiseModel parse_noise_model(const json& j, const std::string& path) {
    const std::string s = as_string(j, path);
    if (s == "bandwidth_free") return NoiseModel::kBandwidthFree;
    if (s == "bandwidth_scaled") return NoiseModel::kBandwidthScaled;
    fail(path, "expected \"bandwidth_free\" or \"bandwidth_scaled\"");
}

LinkBudgetParams parse_link(const json& j, const std::string& path, bool allow_bandwidth) {
    ObjectReader r(j, path);
    LinkBudgetParams p;
    if (const json* v = r.optional("transmit_power_w")) {
        p.transmit_power_w = positive(*v, r.child("transmit_power_w"));
    }
    if (const json* v = r.optional("peak_gain_linear")) {
        p.peak_gain_linear = positive(*v, r.child("peak_gain_linear"));
    }
    if (const json* v = r.optional("noise_temperature_k")) {
        p.noise_temperature_k = positive(*v, r.child("noise_temperature_k"));
    }
    if (const json* v = r.optional("carrier_frequency_hz")) {
        p.carrier_frequency_hz = positive(*v, r.child("carrier_frequency_hz"));
    }
    if (const json* v = r.optional("noise_model")) {
        p.noise_model = parse_noise_model(*v, r.child("noise_model"));
    }
    if (const json* v = r.optional("constant_path_loss_linear")) {
        const double loss = as_double(*v, r.child("constant_path_loss_linear"));
        if (loss < 1.0) fail(r.child("constant_path_loss_linear"), "must be >= 1");
        p.constant_path_loss_linear = loss;
    }
    if (allow_bandwidth) {
        if (const json* v = r.optional("bandwidth_hz")) {
            p.bandwidth_hz = positive(*v, r.child("bandwidth_hz"));
        }
    }
    r.finish();
    return p;
}

LossModelParams parse_loss(const json& j, const std::string& path) {
    ObjectReader r(j, path);
    LossModelParams p;
    if (const json* v = r.optional("base_loss_prob")) {
        p.base_loss_prob = as_double(*v, r.child("base_loss_prob"));
    }
    if (const json* v = r.optional("load_coefficient")) {
        p.load_coefficient = as_double(*v, r.child("load_coefficient"));
        if (p.load_coefficient < 0.0) fail(r.child("load_coefficient"), "must be >= 0");
    }
    if (const json* v = r.optional("max_loss_prob")) {
        p.max_loss_prob = as_double(*v, r.child("max_loss_prob"));
    }
    if (!(p.base_loss_prob >= 0.0 && p.base_loss_prob <= p.max_loss_prob && p.max_loss_prob <= 1.0)) {
        fail(path, "requires 0 <= base_loss_prob <= max_loss_prob <= 1");
    }
    r.finish();
    return p;
}

FlowSpec parse_flow(const json& j, const std::string& path) {
    ObjectReader r(j, path);
    FlowSpec f;
    f.src = node_id_field(r.required("src"), r.child("src"));
    f.dst = node_id_field(r.required("dst"), r.child("dst"));
    if (f.src == f.dst) fail(r.child("dst"), "src and dst must differ");
    f.packet_size_bits = positive(r.required("packet_size_bits"), r.child("packet_size_bits"));
    f.offered_rate_bps = positive(r.required("offered_rate_bps"), r.child("offered_rate_bps"));
    f.duration_s = positive(r.required("duration_s"), r.child("duration_s"));
    r.finish();
    return f;
}

NodeKind parse_node_kind(const json& j, const std::string& path) {
    const std::string s = as_string(j, path);
    if (s == "physical") return NodeKind::kPhysical;
    if (s == "virtual") return NodeKind::kVirtual;
    fail(path, "expected \"physical\" or \"virtual\"");
}

ClusterNodesConfig parse_cluster_nodes(const json& j, const std::string& path) {
    ObjectReader r(j, path);
    ClusterNodesConfig c;
    c.master_id = node_id_field(r.required("master"), r.child("master"));
    const json& workers = r.required("workers");
    if (!workers.is_array()) fail(r.child("workers"), "expected an array");
    std::unordered_set<std::string> seen{c.master_id};
    for (std::size_t i = 0; i < workers.size(); ++i) {
        const std::string wpath = r.child("workers") + "/" + std::to_string(i);
        ObjectReader wr(workers[i], wpath);
        std::string id = node_id_field(wr.required("id"), wr.child("id"));
        NodeKind kind = NodeKind::kPhysical;
        if (const json* k = wr.optional("kind")) kind = parse_node_kind(*k, wr.child("kind"));
        wr.finish();
        if (!seen.insert(id).second) fail(wpath + "/id", "duplicate node id " + id);
        c.workers.emplace_back(std::move(id), kind);
    }
    r.finish();
    return c;
}

ClusterNodesConfig default_cluster_nodes(const std::vector<FlowSpec>& flows) {
    ClusterNodesConfig c;
    if (flows.empty()) {
        c.master_id = "master";
        return c;
    }
    c.master_id = flows.front().src;
    std::unordered_set<std::string> seen{c.master_id};
    for (const auto& f : flows) {
        if (seen.insert(f.dst).second) c.workers.emplace_back(f.dst, NodeKind::kPhysical);
    }
    return c;
}

}  // namespace

TestPlan parse_plan_object(const json& j, const std::string& path) {
    ObjectReader r(j, path);
    TestPlan plan;

    plan.constellation = parse_constellation(r.required("constellation"), r.child("constellation"));

    {
        const std::string wpath = r.child("window");
        ObjectReader wr(r.required("window"), wpath);
        plan.window_t0_s = as_double(wr.required("t0_s"), wr.child("t0_s"));
        plan.window_t1_s = as_double(wr.required("t1_s"), wr.child("t1_s"));
        wr.finish();
        if (plan.window_t0_s < 0.0) fail(wr.child("t0_s"), "must be >= 0");
        if (!(plan.window_t1_s > plan.window_t0_s)) fail(wr.child("t1_s"), "must be > t0_s");
    }

    plan.step_s = as_double(r.required("step_s"), r.child("step_s"));
    if (!(plan.step_s > 0.0)) fail(r.child("step_s"), "must be > 0");

    if (const json* v = r.optional("visibility")) {
        plan.visibility = parse_visibility(*v, r.child("visibility"));
    }
    if (const json* v = r.optional("link")) {
        plan.link = parse_link(*v, r.child("link"), /*allow_bandwidth=*/false);
    }

    {
        const json& bw = r.required("bandwidths_hz");
        if (!bw.is_array() || bw.empty()) fail(r.child("bandwidths_hz"), "expected a non-empty array");
        for (std::size_t i = 0; i < bw.size(); ++i) {
            plan.bandwidths_hz.push_back(
                positive(bw[i], r.child("bandwidths_hz") + "/" + std::to_string(i)));
        }
    }

    {
        const json& flows = r.required("flows");
        if (!flows.is_array()) fail(r.child("flows"), "expected an array");
        for (std::size_t i = 0; i < flows.size(); ++i) {
            plan.flows.push_back(parse_flow(flows[i], r.child("flows") + "/" + std::to_string(i)));
        }
    }

    if (const json* v = r.optional("loss")) {
        plan.loss = parse_loss(*v, r.child("loss"));
    }
    if (const json* v = r.optional("cluster_nodes")) {
        plan.cluster_nodes = parse_cluster_nodes(*v, r.child("cluster_nodes"));
    } else {
        plan.cluster_nodes = default_cluster_nodes(plan.flows);
    }

    plan.seed = as_u64(r.required("seed"), r.child("seed"));

    r.finish();
    return plan;
}

void emit_plan_object(JsonWriter& w, const TestPlan& plan) {
    w.begin_object();
    w.key("bandwidths_hz");
    w.begin_array();
    for (double b : plan.bandwidths_hz) w.value(b);
    w.end_array();

    w.key("cluster_nodes");
    w.begin_object();
    w.field("master", plan.cluster_nodes.master_id);
    w.key("workers");
    w.begin_array();
    for (const auto& [id, kind] : plan.cluster_nodes.workers) {
        w.begin_object();
        w.field("id", id);
        w.field("kind", kind == NodeKind::kPhysical ? "physical" : "virtual");
        w.end_object();
    }
    w.end_array();
    w.end_object();

    w.key("constellation");
    w.begin_object();
    w.field("altitude_km", plan.constellation.altitude_km);
    w.field("inclination_deg", plan.constellation.inclination_deg);
    w.field("phasing_factor", plan.constellation.phasing_factor);
    w.field("planes", plan.constellation.planes);
    w.field("raan_spread_deg", plan.constellation.raan_spread_deg);
    w.field("sats_per_plane", plan.constellation.sats_per_plane);
    w.end_object();

    w.key("flows");
    w.begin_array();
    for (const auto& f : plan.flows) {
        w.begin_object();
        w.field("dst", f.dst);
        w.field("duration_s", f.duration_s);
        w.field("offered_rate_bps", f.offered_rate_bps);
        w.field("packet_size_bits", f.packet_size_bits);
        w.field("src", f.src);
        w.end_object();
    }
    w.end_array();

    w.key("link");
    w.begin_object();
    w.field("carrier_frequency_hz", plan.link.carrier_frequency_hz);
    if (plan.link.constant_path_loss_linear) {
        w.field("constant_path_loss_linear", *plan.link.constant_path_loss_linear);
    }
    w.field("noise_model", plan.link.noise_model == NoiseModel::kBandwidthFree
                               ? "bandwidth_free"
                               : "bandwidth_scaled");
    w.field("noise_temperature_k", plan.link.noise_temperature_k);
    w.field("peak_gain_linear", plan.link.peak_gain_linear);
    w.field("transmit_power_w", plan.link.transmit_power_w);
    w.end_object();

    w.key("loss");
    w.begin_object();
    w.field("base_loss_prob", plan.loss.base_loss_prob);
    w.field("load_coefficient", plan.loss.load_coefficient);
    w.field("max_loss_prob", plan.loss.max_loss_prob);
    w.end_object();

    w.field("seed", plan.seed);
    w.field("step_s", plan.step_s);

    w.key("visibility");
    w.begin_object();
    w.field("max_range_km", plan.visibility.max_range_km);
    w.field("occlusion_margin_km", plan.visibility.occlusion_margin_km);
    w.end_object();

    w.key("window");
    w.begin_object();
    w.field("t0_s", plan.window_t0_s);
    w.field("t1_s", plan.window_t1_s);
    w.end_object();

    w.end_object();
}

}  // namespace detail

TestPlan parse_plan(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("plan is not valid JSON: ") + e.what());
    }
    return detail::parse_plan_object(doc, "");
}

std::string emit_plan(const TestPlan& plan) {
    JsonWriter w;
    detail::emit_plan_object(w, plan);
    return w.take();
}

std::vector<ScenarioRun> expand_matrix(const TestPlan& plan) {
    std::vector<ScenarioRun> runs;
    runs.reserve(plan.flows.size() * plan.bandwidths_hz.size());
    for (std::size_t fi = 0; fi < plan.flows.size(); ++fi) {
        const FlowSpec& flow = plan.flows[fi];
        for (double bandwidth : plan.bandwidths_hz) {
            ScenarioRun run;
            char prefix[16];
            std::snprintf(prefix, sizeof prefix, "f%02zu", fi);
            run.run_id = std::string(prefix) + "-" + flow.src + "-" + flow.dst + "-b" +
                         format_double(bandwidth);
            run.flow = flow;
            run.bandwidth_hz = bandwidth;
            run.link = plan.link;
            run.link.bandwidth_hz = bandwidth;
            run.loss = plan.loss;
            run.seed_derived = derive_run_seed(plan.seed, flow.src, flow.dst, bandwidth);
            runs.push_back(std::move(run));
        }
    }
    return runs;
}

std::vector<std::string> validate_compat(const TestPlan& plan) {
    std::vector<std::string> warnings;

    // Range cap vs. the closest permanent neighbours (same-plane, adjacent
    // slots): if even those are out of range the topology is likely empty.
    if (plan.constellation.sats_per_plane > 1) {
        const double a = kEarthRadiusKm + plan.constellation.altitude_km;
        const double chord =
            2.0 * a * std::sin(std::numbers::pi / plan.constellation.sats_per_plane);
        if (plan.visibility.max_range_km < chord) {
            char buf[160];
            std::snprintf(buf, sizeof buf,
                          "visibility.max_range_km=%.1f is below the in-plane neighbour distance "
                          "%.1f km; topology likely empty",
                          plan.visibility.max_range_km, chord);
            warnings.emplace_back(buf);
        }
    }

    std::unordered_set<std::string> sat_ids;
    for (int p = 0; p < plan.constellation.planes; ++p) {
        for (int s = 0; s < plan.constellation.sats_per_plane; ++s) {
            sat_ids.insert(satellite_id(p, s));
        }
    }

    for (std::size_t fi = 0; fi < plan.flows.size(); ++fi) {
        const FlowSpec& flow = plan.flows[fi];
        for (const std::string& endpoint : {flow.src, flow.dst}) {
            if (!sat_ids.contains(endpoint)) {
                warnings.push_back("flows/" + std::to_string(fi) + ": " + endpoint +
                                   " is not a satellite of the constellation; its sessions will "
                                   "be skipped");
            }
        }
        for (double bandwidth : plan.bandwidths_hz) {
            if (flow.offered_rate_bps > bandwidth) {
                warnings.push_back(
                    "flows/" + std::to_string(fi) + ": offered rate " +
                    format_double(flow.offered_rate_bps) + " bps exceeds bandwidth " +
                    format_double(bandwidth) + " Hz; utilization above 1 saturates the loss cap");
            }
        }
    }
    return warnings;
}

}  // namespace satqos
