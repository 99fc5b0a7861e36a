#pragma once

// Seeded packet-level transfer sessions over contact windows and the QoS
// metrics derived from them: window-sum throughput and drop rate.

#include <cstdint>
#include <string>
#include <vector>

#include "satqos/link.hpp"
#include "satqos/topology.hpp"

namespace satqos {

struct FlowSpec {
    std::string src;
    std::string dst;
    double packet_size_bits = 0.0;
    double offered_rate_bps = 0.0;
    double duration_s = 0.0;  // active interval is [t0, t0 + duration_s]

    friend bool operator==(const FlowSpec&, const FlowSpec&) = default;
};

// Per-packet Bernoulli loss with a load-dependent term:
//   p = clamp(base + load_coefficient * offered_rate/capacity, 0, max)
struct LossModelParams {
    double base_loss_prob = 0.001;
    double load_coefficient = 0.02;
    double max_loss_prob = 0.5;

    friend bool operator==(const LossModelParams&, const LossModelParams&) = default;
};

struct WindowMetric {
    double t_connect_s = 0.0;
    double t_trans_s = 0.0;

    friend bool operator==(const WindowMetric&, const WindowMetric&) = default;
};

struct TransferResult {
    FlowSpec flow;
    std::uint64_t packets_attempted = 0;
    std::uint64_t packets_delivered = 0;
    std::uint64_t packets_lost = 0;
    std::vector<WindowMetric> window_metrics;

    friend bool operator==(const TransferResult&, const TransferResult&) = default;
};

// One contact window with its link budget (evaluated at the window's
// representative distance).
struct WindowBudget {
    ContactWindow window;
    LinkBudget budget;

    friend bool operator==(const WindowBudget&, const WindowBudget&) = default;
};

// TP = B * sum(t_connect) / sum(t_connect + t_trans) over the windows.
// Throws DomainError on an empty list, negative durations, all-zero
// t_connect or an all-zero denominator.
double throughput(const std::vector<WindowMetric>& window_metrics, double bandwidth_hz);

// lost / delivered. Throws DomainError when nothing was delivered.
// May exceed 1 by definition; see loss_fraction for the lost/attempted ratio.
double packet_drop_rate(const TransferResult& result);

// lost / attempted, the conventional loss fraction. Throws DomainError
// when nothing was attempted.
double loss_fraction(const TransferResult& result);

// Emit whole packets at flow.offered_rate_bps inside each window and
// drop each independently with the loss model's probability, drawn from
// the stream keyed by (seed, flow, packet sequence number). An empty
// window list yields a zero-attempt result.
TransferResult simulate_transfer(const FlowSpec& flow, const std::vector<WindowBudget>& windows,
                                 const LossModelParams& loss, std::uint64_t seed);

struct QoSReport {
    std::string src;
    std::string dst;
    double bandwidth_hz = 0.0;
    double throughput_bps = 0.0;
    double packet_drop_rate = 0.0;   // lost / delivered
    double loss_fraction = 0.0;      // lost / attempted
    double delivered_rate_bps = 0.0; // delivered bits / total connected time
    std::uint64_t packets_attempted = 0;
    std::uint64_t packets_delivered = 0;
    std::uint64_t packets_lost = 0;
    std::vector<WindowMetric> window_metrics;
    LinkBudgetParams link;           // parameter echo, bandwidth_hz filled in
    LossModelParams loss;
    std::uint64_t seed = 0;

    friend bool operator==(const QoSReport&, const QoSReport&) = default;
};

// One contact window plus the representative distance used for its budget.
struct SessionWindow {
    ContactWindow window;
    double distance_km = 0.0;

    friend bool operator==(const SessionWindow&, const SessionWindow&) = default;
};

struct SessionContext {
    FlowSpec flow;
    double bandwidth_hz = 0.0;
    LinkBudgetParams link;  // bandwidth_hz ignored; the cell bandwidth is used
    LossModelParams loss;
    std::vector<SessionWindow> windows;
    std::uint64_t seed = 0;
};

// Compose simulate_transfer + throughput + packet_drop_rate into one
// report row. Domain errors are tagged with the pair; a pair with no
// windows raises "no contact windows".
QoSReport run_qos_session(const SessionContext& ctx);

}  // namespace satqos
