#include "satqos/topology.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "satqos/errors.hpp"

namespace satqos {

namespace {

// Distance from the origin (Earth center) to the segment [a, b].
double segment_distance_to_origin(const Vec3& a, const Vec3& b) {
    const Vec3 ab = b - a;
    const double ab2 = dot(ab, ab);
    if (ab2 == 0.0) return norm(a);
    const double t = std::clamp(-dot(a, ab) / ab2, 0.0, 1.0);
    return norm(a + t * ab);
}

}  // namespace

bool visible(const StateVector& a, const StateVector& b, const VisibilityParams& params) {
    if (a.t != b.t) {
        throw UsageError("visible: mismatched state timestamps");
    }
    const double distance = norm(a.position_km - b.position_km);
    if (distance > params.max_range_km) return false;
    const double clearance = kEarthRadiusKm + params.occlusion_margin_km;
    return segment_distance_to_origin(a.position_km, b.position_km) > clearance;
}

TopologySnapshot snapshot(const std::vector<StateVector>& states, const VisibilityParams& params,
                          double t) {
    std::unordered_set<std::string> seen;
    for (const auto& s : states) {
        if (s.t != t) {
            throw ValidationError("snapshot: state for " + s.sat_id + " has timestamp " +
                                  std::to_string(s.t) + ", expected " + std::to_string(t));
        }
        if (!seen.insert(s.sat_id).second) {
            throw ValidationError("snapshot: duplicate sat_id " + s.sat_id);
        }
    }

    // Deterministic ordering by identifier.
    std::vector<const StateVector*> ordered;
    ordered.reserve(states.size());
    for (const auto& s : states) ordered.push_back(&s);
    std::sort(ordered.begin(), ordered.end(),
              [](const StateVector* x, const StateVector* y) { return x->sat_id < y->sat_id; });

    TopologySnapshot snap;
    snap.t = t;
    snap.nodes.reserve(ordered.size());
    for (const auto* s : ordered) snap.nodes.push_back(s->sat_id);

    for (std::size_t i = 0; i < ordered.size(); ++i) {
        for (std::size_t j = i + 1; j < ordered.size(); ++j) {
            if (visible(*ordered[i], *ordered[j], params)) {
                snap.edges.push_back(TopologyEdge{
                    ordered[i]->sat_id, ordered[j]->sat_id,
                    norm(ordered[i]->position_km - ordered[j]->position_km)});
            }
        }
    }
    return snap;
}

std::vector<ContactWindow> contact_windows(const std::vector<TopologySnapshot>& snapshots,
                                           const std::string& x, const std::string& y) {
    if (snapshots.empty()) {
        throw ValidationError("contact_windows: empty snapshot list");
    }
    if (snapshots.size() < 2) {
        throw ValidationError("contact_windows: need at least two snapshots to define the grid step");
    }
    const double step = snapshots[1].t - snapshots[0].t;
    if (!(step > 0.0)) {
        throw ValidationError("contact_windows: snapshots must be strictly increasing in t");
    }
    for (std::size_t k = 1; k < snapshots.size(); ++k) {
        const double dt = snapshots[k].t - snapshots[k - 1].t;
        if (std::abs(dt - step) > 1e-9 * std::max(1.0, step)) {
            throw ValidationError("contact_windows: snapshot grid step is not uniform");
        }
    }

    const std::string& lo = std::min(x, y);
    const std::string& hi = std::max(x, y);

    std::vector<ContactWindow> windows;
    bool in_run = false;
    std::size_t run_start = 0;
    std::size_t run_len = 0;
    auto close_run = [&] {
        // end = last grid point + step, computed from the run length so the
        // total duration is exactly run_len * step.
        windows.push_back(ContactWindow{lo, hi, snapshots[run_start].t,
                                        snapshots[run_start].t + static_cast<double>(run_len) * step});
        in_run = false;
        run_len = 0;
    };

    for (std::size_t k = 0; k < snapshots.size(); ++k) {
        const auto& edges = snapshots[k].edges;
        const bool present = std::any_of(edges.begin(), edges.end(), [&](const TopologyEdge& e) {
            return e.a == lo && e.b == hi;
        });
        if (present) {
            if (!in_run) {
                in_run = true;
                run_start = k;
            }
            ++run_len;
        } else if (in_run) {
            close_run();
        }
    }
    if (in_run) close_run();
    return windows;
}

namespace {

template <typename T>
std::vector<T> sorted_difference(std::vector<T> a, std::vector<T> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<T> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<NodePair> edge_pairs(const TopologySnapshot& snap) {
    std::vector<NodePair> pairs;
    pairs.reserve(snap.edges.size());
    for (const auto& e : snap.edges) pairs.emplace_back(e.a, e.b);
    return pairs;
}

}  // namespace

TopologyEvents diff(const TopologySnapshot& prev, const TopologySnapshot& next) {
    TopologyEvents ev;
    ev.t = next.t;
    ev.links_up = sorted_difference(edge_pairs(next), edge_pairs(prev));
    ev.links_down = sorted_difference(edge_pairs(prev), edge_pairs(next));
    ev.nodes_joined = sorted_difference(next.nodes, prev.nodes);
    ev.nodes_left = sorted_difference(prev.nodes, next.nodes);
    return ev;
}

}  // namespace satqos
