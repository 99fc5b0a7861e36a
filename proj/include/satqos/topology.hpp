#pragma once

// Time-varying ISL adjacency: range + Earth-occlusion visibility,
// per-step snapshots, maximal contact windows on the snapshot grid, and
// snapshot-to-snapshot event diffs.

#include <string>
#include <utility>
#include <vector>

#include "satqos/orbit.hpp"

namespace satqos {

struct VisibilityParams {
    double max_range_km = 5500.0;      // communication range cap
    double occlusion_margin_km = 0.0;  // added to Earth radius for grazing rays

    friend bool operator==(const VisibilityParams&, const VisibilityParams&) = default;
};

struct TopologyEdge {
    std::string a;  // a < b by identifier order
    std::string b;
    double distance_km = 0.0;

    friend bool operator==(const TopologyEdge&, const TopologyEdge&) = default;
};

struct TopologySnapshot {
    double t = 0.0;
    std::vector<std::string> nodes;      // sorted, unique
    std::vector<TopologyEdge> edges;     // sorted by (a, b)

    friend bool operator==(const TopologySnapshot&, const TopologySnapshot&) = default;
};

struct ContactWindow {
    std::string x;  // x < y by identifier order
    std::string y;
    double start_s = 0.0;
    double end_s = 0.0;  // exclusive: last grid point + step

    double duration_s() const { return end_s - start_s; }

    friend bool operator==(const ContactWindow&, const ContactWindow&) = default;
};

using NodePair = std::pair<std::string, std::string>;

struct TopologyEvents {
    double t = 0.0;
    std::vector<NodePair> links_up;
    std::vector<NodePair> links_down;
    std::vector<std::string> nodes_joined;
    std::vector<std::string> nodes_left;

    bool empty() const {
        return links_up.empty() && links_down.empty() && nodes_joined.empty() && nodes_left.empty();
    }

    friend bool operator==(const TopologyEvents&, const TopologyEvents&) = default;
};

// True iff the satellites are within max_range_km of each other and the
// straight segment between them stays farther than
// kEarthRadiusKm + occlusion_margin_km from the Earth center.
// Throws UsageError if the state timestamps differ.
bool visible(const StateVector& a, const StateVector& b, const VisibilityParams& params);

// All-pairs snapshot at time t. Throws ValidationError on duplicate ids
// or states whose timestamp is not t.
TopologySnapshot snapshot(const std::vector<StateVector>& states, const VisibilityParams& params,
                          double t);

// Maximal runs of consecutive snapshots containing the pair's edge.
// Snapshots must be strictly increasing with a uniform step (at least
// two of them, to define the step). Window end = last grid point + step.
std::vector<ContactWindow> contact_windows(const std::vector<TopologySnapshot>& snapshots,
                                           const std::string& x, const std::string& y);

// Set differences between consecutive snapshots; event t = next.t.
TopologyEvents diff(const TopologySnapshot& prev, const TopologySnapshot& next);

}  // namespace satqos
