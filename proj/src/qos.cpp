#include "satqos/qos.hpp"

#include <algorithm>
#include <cmath>

#include "satqos/errors.hpp"
#include "satqos/rng.hpp"

namespace satqos {

double throughput(const std::vector<WindowMetric>& window_metrics, double bandwidth_hz) {
    if (window_metrics.empty()) {
        throw DomainError("throughput: no contact windows");
    }
    if (!(bandwidth_hz > 0.0)) {
        throw DomainError("throughput: bandwidth must be > 0 Hz");
    }
    double connect_sum = 0.0;
    double total_sum = 0.0;
    for (const auto& w : window_metrics) {
        if (w.t_connect_s < 0.0 || w.t_trans_s < 0.0) {
            throw DomainError("throughput: negative window duration");
        }
        connect_sum += w.t_connect_s;
        total_sum += w.t_connect_s + w.t_trans_s;
    }
    if (!(connect_sum > 0.0)) {
        throw DomainError("throughput: zero total connected time");
    }
    if (!(total_sum > 0.0)) {
        throw DomainError("throughput: zero denominator");
    }
    return bandwidth_hz * connect_sum / total_sum;
}

double packet_drop_rate(const TransferResult& result) {
    if (result.packets_delivered == 0) {
        throw DomainError("packet_drop_rate: PDR undefined, zero packets delivered");
    }
    return static_cast<double>(result.packets_lost) / static_cast<double>(result.packets_delivered);
}

double loss_fraction(const TransferResult& result) {
    if (result.packets_attempted == 0) {
        throw DomainError("loss_fraction: zero packets attempted");
    }
    return static_cast<double>(result.packets_lost) / static_cast<double>(result.packets_attempted);
}

TransferResult simulate_transfer(const FlowSpec& flow, const std::vector<WindowBudget>& windows,
                                 const LossModelParams& loss, std::uint64_t seed) {
    if (!(flow.packet_size_bits > 0.0) || !(flow.offered_rate_bps > 0.0)) {
        throw DomainError("simulate_transfer: packet size and offered rate must be > 0");
    }
    TransferResult result;
    result.flow = flow;
    if (windows.empty()) return result;

    const std::uint64_t stream = flow_stream_key(flow.src, flow.dst);
    std::uint64_t seq = 0;
    for (const auto& wb : windows) {
        const double duration = wb.window.duration_s();
        // Whole packets only; the partial packet at the window edge is not
        // counted as an attempt.
        const auto attempts = static_cast<std::uint64_t>(
            std::floor(flow.offered_rate_bps * duration / flow.packet_size_bits));
        const double utilization = flow.offered_rate_bps / wb.budget.capacity_bps;
        const double p_loss =
            std::clamp(loss.base_loss_prob + loss.load_coefficient * utilization, 0.0,
                       loss.max_loss_prob);

        std::uint64_t lost = 0;
        for (std::uint64_t i = 0; i < attempts; ++i, ++seq) {
            if (packet_uniform(seed, stream, seq) < p_loss) ++lost;
        }
        result.packets_attempted += attempts;
        result.packets_lost += lost;
        result.packets_delivered += attempts - lost;
        result.window_metrics.push_back(WindowMetric{duration, wb.budget.t_trans_s});
    }
    return result;
}

QoSReport run_qos_session(const SessionContext& ctx) {
    const std::string tag = "session " + ctx.flow.src + "->" + ctx.flow.dst + ": ";
    if (ctx.windows.empty()) {
        throw DomainError(tag + "no contact windows");
    }

    LinkBudgetParams link = ctx.link;
    link.bandwidth_hz = ctx.bandwidth_hz;

    try {
        std::vector<WindowBudget> budgets;
        budgets.reserve(ctx.windows.size());
        for (const auto& sw : ctx.windows) {
            budgets.push_back(
                WindowBudget{sw.window, transmission_delay(ctx.flow.packet_size_bits, link,
                                                           sw.distance_km)});
        }

        const TransferResult transfer = simulate_transfer(ctx.flow, budgets, ctx.loss, ctx.seed);

        QoSReport report;
        report.src = ctx.flow.src;
        report.dst = ctx.flow.dst;
        report.bandwidth_hz = ctx.bandwidth_hz;
        report.throughput_bps = throughput(transfer.window_metrics, ctx.bandwidth_hz);
        report.packet_drop_rate = packet_drop_rate(transfer);
        report.loss_fraction = loss_fraction(transfer);
        report.packets_attempted = transfer.packets_attempted;
        report.packets_delivered = transfer.packets_delivered;
        report.packets_lost = transfer.packets_lost;
        report.window_metrics = transfer.window_metrics;
        report.link = link;
        report.loss = ctx.loss;
        report.seed = ctx.seed;

        double connected = 0.0;
        for (const auto& w : transfer.window_metrics) connected += w.t_connect_s;
        report.delivered_rate_bps =
            static_cast<double>(report.packets_delivered) * ctx.flow.packet_size_bits / connected;
        return report;
    } catch (const DomainError& e) {
        throw DomainError(tag + e.what());
    }
}

}  // namespace satqos
