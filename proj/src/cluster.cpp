#include "satqos/cluster.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <unordered_set>

#include "satqos/errors.hpp"

namespace satqos {

ClusterState ClusterState::bootstrap(
    const std::string& master_id,
    const std::vector<std::pair<std::string, NodeKind>>& initial_workers) {
    std::unordered_set<std::string> seen{master_id};
    ClusterState state;
    state.master_id_ = master_id;
    state.initial_workers_ = initial_workers;
    state.nodes_.push_back(
        NodeRecord{master_id, NodeRole::kMaster, NodeKind::kPhysical, NodeStatus::kLive});
    for (const auto& [id, kind] : initial_workers) {
        if (!seen.insert(id).second) {
            throw ValidationError("bootstrap: duplicate node id " + id);
        }
        state.nodes_.push_back(NodeRecord{id, NodeRole::kWorker, kind, NodeStatus::kLive});
    }
    return state;
}

const NodeRecord* ClusterState::find_node(const std::string& id) const {
    auto it = std::find_if(nodes_.begin(), nodes_.end(),
                           [&](const NodeRecord& n) { return n.id == id; });
    return it == nodes_.end() ? nullptr : &*it;
}

bool ClusterState::node_is_live_worker(const std::string& id) const {
    const NodeRecord* n = find_node(id);
    return n != nullptr && n->role == NodeRole::kWorker && n->status == NodeStatus::kLive;
}

NodeRecord& ClusterState::upsert_worker(const std::string& id, NodeKind kind_if_new) {
    auto it = std::find_if(nodes_.begin(), nodes_.end(),
                           [&](const NodeRecord& n) { return n.id == id; });
    if (it != nodes_.end()) {
        it->status = NodeStatus::kLive;
        return *it;
    }
    nodes_.push_back(NodeRecord{id, NodeRole::kWorker, kind_if_new, NodeStatus::kLive});
    return nodes_.back();
}

std::string ClusterState::next_deployment_id() {
    char buf[24];
    std::snprintf(buf, sizeof buf, "dep-%06llu",
                  static_cast<unsigned long long>(next_deployment_seq_++));
    return buf;
}

void ClusterState::recover_failed_deployments(const std::string& exclude) {
    // Live-worker load = running deployments per node, updated as moves land.
    auto running_count = [&](const std::string& node) {
        return std::count_if(deployments_.begin(), deployments_.end(), [&](const Deployment& d) {
            return d.node == node && d.status == DeployStatus::kRunning;
        });
    };

    // Ascending deployment id: deployments_ is append-only with ascending
    // ids, so iteration order is already id order.
    for (auto& dep : deployments_) {
        if (dep.status != DeployStatus::kFailed) continue;
        const NodeRecord* best = nullptr;
        long best_load = std::numeric_limits<long>::max();
        for (const auto& node : nodes_) {
            if (node.role != NodeRole::kWorker || node.status != NodeStatus::kLive) continue;
            if (node.id == exclude) continue;
            const long load = running_count(node.id);
            if (load < best_load || (load == best_load && best != nullptr && node.id < best->id)) {
                best = &node;
                best_load = load;
            }
        }
        if (best != nullptr) {
            dep.node = best->id;
            dep.status = DeployStatus::kRunning;
        }
    }
}

void ClusterState::apply_topology_events(const TopologyEvents& events) {
    // Validate before mutating: an error must leave the state unchanged.
    for (const auto& id : events.nodes_left) {
        if (id == master_id_) {
            throw ValidationError("apply_topology_events: event removes the master node " + id);
        }
    }
    for (const auto& id : events.nodes_joined) {
        if (id == master_id_) {
            throw ValidationError("apply_topology_events: event names the master node " + id);
        }
    }

    for (const auto& id : events.nodes_joined) {
        upsert_worker(id, NodeKind::kVirtual);
    }
    for (const auto& id : events.nodes_left) {
        auto it = std::find_if(nodes_.begin(), nodes_.end(),
                               [&](const NodeRecord& n) { return n.id == id; });
        if (it == nodes_.end()) continue;  // unknown ids are tolerated
        it->status = NodeStatus::kRemoved;
        for (auto& dep : deployments_) {
            if (dep.node == id && dep.status == DeployStatus::kRunning) {
                dep.status = DeployStatus::kFailed;
            }
        }
    }
    recover_failed_deployments();

    ClusterLogEntry entry;
    entry.kind = ClusterLogEntry::Kind::kTopologyEvents;
    entry.events = events;
    log_.push_back(std::move(entry));
}

void ClusterState::schedule_deployment(const std::string& tool, const std::string& ns) {
    std::vector<const NodeRecord*> live_workers;
    for (const auto& node : nodes_) {
        if (node.role == NodeRole::kWorker && node.status == NodeStatus::kLive) {
            live_workers.push_back(&node);
        }
    }
    if (live_workers.empty()) {
        throw DomainError("schedule_deployment: no live workers");
    }

    for (const auto* worker : live_workers) {
        const bool already = std::any_of(
            deployments_.begin(), deployments_.end(), [&](const Deployment& d) {
                return d.tool == tool && d.ns == ns && d.node == worker->id &&
                       d.status == DeployStatus::kRunning;
            });
        if (already) continue;
        deployments_.push_back(
            Deployment{next_deployment_id(), tool, ns, worker->id, DeployStatus::kRunning});
    }

    ClusterLogEntry entry;
    entry.kind = ClusterLogEntry::Kind::kSchedule;
    entry.tool = tool;
    entry.ns = ns;
    log_.push_back(std::move(entry));
}

void ClusterState::reschedule_on_failure(const std::string& failed_node) {
    if (find_node(failed_node) == nullptr) {
        throw ValidationError("reschedule_on_failure: unknown node " + failed_node);
    }
    for (auto& dep : deployments_) {
        if (dep.node == failed_node && dep.status == DeployStatus::kRunning) {
            dep.status = DeployStatus::kFailed;
        }
    }
    recover_failed_deployments(failed_node);

    ClusterLogEntry entry;
    entry.kind = ClusterLogEntry::Kind::kReschedule;
    entry.node = failed_node;
    log_.push_back(std::move(entry));
}

ClusterState ClusterState::replayed() const {
    ClusterState fresh = bootstrap(master_id_, initial_workers_);
    for (const auto& entry : log_) {
        switch (entry.kind) {
            case ClusterLogEntry::Kind::kTopologyEvents:
                fresh.apply_topology_events(entry.events);
                break;
            case ClusterLogEntry::Kind::kSchedule:
                fresh.schedule_deployment(entry.tool, entry.ns);
                break;
            case ClusterLogEntry::Kind::kReschedule:
                fresh.reschedule_on_failure(entry.node);
                break;
        }
    }
    return fresh;
}

}  // namespace satqos
