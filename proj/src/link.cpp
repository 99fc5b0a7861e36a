#include "satqos/link.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "satqos/errors.hpp"

namespace satqos {

double path_loss(double distance_km, double carrier_frequency_hz) {
    if (!(distance_km > 0.0)) {
        throw DomainError("path_loss: distance must be > 0 km");
    }
    if (!(carrier_frequency_hz > 0.0)) {
        throw DomainError("path_loss: carrier frequency must be > 0 Hz");
    }
    const double d_m = distance_km * 1000.0;
    const double x = 4.0 * std::numbers::pi * d_m * carrier_frequency_hz / kSpeedOfLightMPerS;
    return x * x;
}

double snr(const LinkBudgetParams& params, double path_loss_linear) {
    if (!(path_loss_linear >= 1.0)) {
        throw DomainError("snr: path loss must be >= 1 (linear)");
    }
    double noise = kBoltzmannJPerK * params.noise_temperature_k * path_loss_linear;
    if (params.noise_model == NoiseModel::kBandwidthScaled) {
        noise *= params.bandwidth_hz;
    }
    return params.transmit_power_w * params.peak_gain_linear * params.peak_gain_linear / noise;
}

double capacity(double bandwidth_hz, double snr_linear) {
    if (!(bandwidth_hz > 0.0)) {
        throw DomainError("capacity: bandwidth must be > 0 Hz");
    }
    if (snr_linear < 0.0) {
        throw DomainError("capacity: SNR must be >= 0");
    }
    return bandwidth_hz * std::log2(1.0 + snr_linear);
}

LinkBudget transmission_delay(double d_trans_bits, const LinkBudgetParams& params,
                              double distance_km) {
    if (!(d_trans_bits > 0.0)) {
        throw DomainError("transmission_delay: packet size must be > 0 bits");
    }
    if (!(distance_km > 0.0)) {
        throw DomainError("transmission_delay: distance must be > 0 km");
    }
    const double loss = params.constant_path_loss_linear
                            ? *params.constant_path_loss_linear
                            : path_loss(distance_km, params.carrier_frequency_hz);
    const double snr_linear = snr(params, loss);
    const double cap = capacity(params.bandwidth_hz, snr_linear);
    if (!(cap > 0.0)) {
        throw DomainError("transmission_delay: link infeasible at distance " +
                          std::to_string(distance_km) + " km (zero capacity)");
    }
    return LinkBudget{
        .distance_km = distance_km,
        .path_loss_linear = loss,
        .snr_linear = snr_linear,
        .capacity_bps = cap,
        .t_trans_s = d_trans_bits / cap,
    };
}

}  // namespace satqos
