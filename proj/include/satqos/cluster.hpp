#pragma once

// Master-worker cluster state machine. Worker membership follows
// topology events; tool deployments are placed per live worker and
// rescheduled when their node is lost. Single writer: mutations are
// applied sequentially and logged so the state can be replayed.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "satqos/topology.hpp"

namespace satqos {

enum class NodeRole { kMaster, kWorker };
enum class NodeKind { kPhysical, kVirtual };
enum class NodeStatus { kLive, kRemoved };
enum class DeployStatus { kPending, kRunning, kFailed };

struct NodeRecord {
    std::string id;
    NodeRole role = NodeRole::kWorker;
    NodeKind kind = NodeKind::kVirtual;
    NodeStatus status = NodeStatus::kLive;

    friend bool operator==(const NodeRecord&, const NodeRecord&) = default;
};

struct Deployment {
    std::string id;         // "dep-NNNNNN", cluster-wide sequence
    std::string tool;
    std::string ns;         // namespace shared by one rollout
    std::string node;
    DeployStatus status = DeployStatus::kPending;

    friend bool operator==(const Deployment&, const Deployment&) = default;
};

// Replayable record of one applied mutation.
struct ClusterLogEntry {
    enum class Kind { kTopologyEvents, kSchedule, kReschedule };
    Kind kind = Kind::kTopologyEvents;
    TopologyEvents events;  // kTopologyEvents
    std::string tool;       // kSchedule
    std::string ns;         // kSchedule
    std::string node;       // kReschedule

    friend bool operator==(const ClusterLogEntry&, const ClusterLogEntry&) = default;
};

class ClusterState {
  public:
    // Master + initial workers, all live, no deployments.
    // Throws ValidationError on duplicate ids.
    static ClusterState bootstrap(
        const std::string& master_id,
        const std::vector<std::pair<std::string, NodeKind>>& initial_workers);

    // Joins become live workers (created as virtual when unknown), leaves
    // become removed and their running deployments are rescheduled. Any
    // event naming the master is rejected (ValidationError) with no
    // mutation. After the call no deployment stays failed while a live
    // worker exists.
    void apply_topology_events(const TopologyEvents& events);

    // One running deployment per live worker, idempotent on
    // (tool, namespace, node). Throws DomainError with no live workers.
    void schedule_deployment(const std::string& tool, const std::string& ns);

    // Move the node's deployments to the least-loaded live worker
    // (lowest id on ties); without a live worker they stay failed.
    // Throws ValidationError if the node does not exist.
    void reschedule_on_failure(const std::string& failed_node);

    // Re-run the log against a fresh bootstrap; reproduces *this exactly.
    ClusterState replayed() const;

    const std::vector<NodeRecord>& nodes() const { return nodes_; }
    const std::vector<Deployment>& deployments() const { return deployments_; }
    const std::vector<ClusterLogEntry>& event_log() const { return log_; }
    const std::string& master_id() const { return master_id_; }

    const NodeRecord* find_node(const std::string& id) const;
    bool node_is_live_worker(const std::string& id) const;

    friend bool operator==(const ClusterState&, const ClusterState&) = default;

  private:
    NodeRecord& upsert_worker(const std::string& id, NodeKind kind_if_new);
    // Failed deployments -> least-loaded live worker (never `exclude`),
    // in ascending deployment-id order.
    void recover_failed_deployments(const std::string& exclude = {});
    std::string next_deployment_id();

    std::string master_id_;
    std::vector<std::pair<std::string, NodeKind>> initial_workers_;  // for replay
    std::vector<NodeRecord> nodes_;
    std::vector<Deployment> deployments_;
    std::vector<ClusterLogEntry> log_;
    std::uint64_t next_deployment_seq_ = 1;
};

}  // namespace satqos
