#include "satqos/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

#include "satqos/errors.hpp"
#include "satqos/rng.hpp"

namespace satqos {

namespace {

std::size_t grid_size(const TestPlan& plan) {
    // Half-open grid [t0, t1): snapshots at t0 + k*step for k < n.
    return static_cast<std::size_t>(
        std::floor((plan.window_t1_s - plan.window_t0_s) / plan.step_s + 1e-9));
}

std::vector<TopologySnapshot> build_snapshots(const TestPlan& plan,
                                              const std::vector<SatelliteSpec>& specs) {
    const std::size_t n = grid_size(plan);
    if (n < 2) {
        throw ValidationError(
            "plan window/step yields fewer than two snapshots; nothing to simulate");
    }
    std::vector<TopologySnapshot> snapshots;
    snapshots.reserve(n);
    std::vector<StateVector> states(specs.size());
    for (std::size_t k = 0; k < n; ++k) {
        const double t = plan.window_t0_s + static_cast<double>(k) * plan.step_s;
        for (std::size_t i = 0; i < specs.size(); ++i) states[i] = propagate(specs[i], t);
        snapshots.push_back(snapshot(states, plan.visibility, t));
    }
    return snapshots;
}

int degree_of(const TopologySnapshot& snap, const std::string& node) {
    int degree = 0;
    for (const auto& e : snap.edges) {
        if (e.a == node || e.b == node) ++degree;
    }
    return degree;
}

// Contact windows for the pair, clipped to the flow's active interval
// [t0, t0 + duration], each with the mean edge distance over its
// remaining grid points.
std::vector<SessionWindow> session_windows(const std::vector<TopologySnapshot>& snapshots,
                                           double t0, double step, const FlowSpec& flow) {
    const std::string lo = std::min(flow.src, flow.dst);
    const std::string hi = std::max(flow.src, flow.dst);
    const double active_end = t0 + flow.duration_s;

    std::vector<SessionWindow> out;
    for (const auto& window : contact_windows(snapshots, flow.src, flow.dst)) {
        const double start = window.start_s;
        const double end = std::min(window.end_s, active_end);
        if (!(end > start)) continue;

        double distance_sum = 0.0;
        std::size_t samples = 0;
        for (const auto& snap : snapshots) {
            if (snap.t < start || snap.t >= end) continue;
            for (const auto& e : snap.edges) {
                if (e.a == lo && e.b == hi) {
                    distance_sum += e.distance_km;
                    ++samples;
                    break;
                }
            }
        }
        if (samples == 0) continue;  // clipped below one grid point
        out.push_back(SessionWindow{ContactWindow{lo, hi, start, end},
                                    distance_sum / static_cast<double>(samples)});
    }
    (void)step;
    return out;
}

ClusterSummary drive_cluster(const TestPlan& plan,
                             const std::vector<TopologySnapshot>& snapshots) {
    ClusterState state =
        ClusterState::bootstrap(plan.cluster_nodes.master_id, plan.cluster_nodes.workers);
    if (!plan.cluster_nodes.workers.empty()) {
        state.schedule_deployment("probe", "qos");
    }
    std::uint64_t applied = 0;
    for (std::size_t k = 1; k < snapshots.size(); ++k) {
        state.apply_topology_events(diff(snapshots[k - 1], snapshots[k]));
        ++applied;
    }
    return ClusterSummary{state.nodes(), state.deployments(), applied};
}

}  // namespace

std::string designated_degree_node(const TestPlan& plan) {
    const std::uint64_t total = static_cast<std::uint64_t>(plan.constellation.planes) *
                                static_cast<std::uint64_t>(plan.constellation.sats_per_plane);
    const std::uint64_t pick = hash_combine(plan.seed, fnv1a(kFnvOffset, "degree-node")) % total;
    const int plane = static_cast<int>(pick / plan.constellation.sats_per_plane);
    const int slot = static_cast<int>(pick % plan.constellation.sats_per_plane);
    return satellite_id(plane, slot);
}

TopologySnapshot snapshot_at(const TestPlan& plan, double t) {
    if (t < 0.0) throw UsageError("snapshot time must be >= 0");
    const std::vector<SatelliteSpec> specs = generate_constellation(plan.constellation);
    std::vector<StateVector> states;
    states.reserve(specs.size());
    for (const auto& spec : specs) states.push_back(propagate(spec, t));
    return snapshot(states, plan.visibility, t);
}

std::string emit_snapshot_json(const TopologySnapshot& snap) {
    JsonWriter w;
    w.begin_object();
    w.key("edges");
    w.begin_array();
    for (const auto& e : snap.edges) {
        w.begin_object();
        w.field("a", e.a);
        w.field("b", e.b);
        w.field("distance_km", e.distance_km);
        w.end_object();
    }
    w.end_array();
    w.key("nodes");
    w.begin_array();
    for (const auto& n : snap.nodes) w.value(n);
    w.end_array();
    w.field("t", snap.t);
    w.end_object();
    std::string out = w.take();
    out += '\n';
    return out;
}

ReportBundle run_pipeline(const TestPlan& plan, unsigned jobs, const ProgressFn& progress) {
    const std::vector<SatelliteSpec> specs = generate_constellation(plan.constellation);
    const std::vector<TopologySnapshot> snapshots = build_snapshots(plan, specs);

    const std::string degree_node = designated_degree_node(plan);
    std::vector<DegreeSample> degrees;
    degrees.reserve(snapshots.size());
    for (const auto& snap : snapshots) {
        degrees.push_back(DegreeSample{snap.t, degree_of(snap, degree_node)});
    }

    ClusterSummary cluster = drive_cluster(plan, snapshots);

    // Windows per unique flow pair, shared across the bandwidth sweep.
    std::map<std::pair<std::string, std::string>, std::vector<SessionWindow>> windows_by_flow;
    for (const auto& flow : plan.flows) {
        auto key = std::make_pair(flow.src, flow.dst);
        if (!windows_by_flow.contains(key)) {
            windows_by_flow.emplace(key,
                                    session_windows(snapshots, plan.window_t0_s, plan.step_s, flow));
        }
    }

    const std::vector<ScenarioRun> runs = expand_matrix(plan);
    std::vector<RunOutcome> outcomes(runs.size());

    unsigned worker_count = jobs;
    if (worker_count == 0) {
        const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
        worker_count = static_cast<unsigned>(std::min<std::size_t>(runs.size(), hw));
    }
    worker_count = std::max(1u, std::min<unsigned>(worker_count, static_cast<unsigned>(
                                                       std::max<std::size_t>(runs.size(), 1))));

    std::atomic<std::size_t> next{0};
    std::mutex progress_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= runs.size()) return;
            const ScenarioRun& run = runs[i];
            RunOutcome outcome;
            outcome.run_id = run.run_id;
            outcome.src = run.flow.src;
            outcome.dst = run.flow.dst;
            outcome.bandwidth_hz = run.bandwidth_hz;
            try {
                SessionContext ctx;
                ctx.flow = run.flow;
                ctx.bandwidth_hz = run.bandwidth_hz;
                ctx.link = run.link;
                ctx.loss = run.loss;
                ctx.windows = windows_by_flow.at({run.flow.src, run.flow.dst});
                ctx.seed = run.seed_derived;
                outcome.report = run_qos_session(ctx);
            } catch (const DomainError& e) {
                outcome.skipped = true;
                outcome.skip_reason = e.what();
            }
            if (progress) {
                std::lock_guard<std::mutex> lock(progress_mutex);
                progress("run_id=" + outcome.run_id +
                         " status=" + (outcome.skipped ? "skipped" : "ok"));
            }
            outcomes[i] = std::move(outcome);
        }
    };

    if (worker_count <= 1 || runs.size() <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(worker_count);
        for (unsigned i = 0; i < worker_count; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    return aggregate(plan, std::move(outcomes), degree_node, std::move(degrees),
                     std::move(cluster), plan.seed);
}

}  // namespace satqos
