#pragma once

// ISL link budget: free-space path loss, SNR, Shannon capacity and the
// per-packet transmission delay D_trans / capacity.

#include <optional>

namespace satqos {

inline constexpr double kBoltzmannJPerK = 1.380649e-23;  // CODATA, not configurable
inline constexpr double kSpeedOfLightMPerS = 299792458.0;

// Two noise-floor conventions are supported and both are tested:
//   bandwidth_free:   noise = k_B * tau * L          (the default)
//   bandwidth_scaled: noise = k_B * tau * B * L      (conventional thermal floor)
enum class NoiseModel { kBandwidthFree, kBandwidthScaled };

struct LinkBudgetParams {
    double transmit_power_w = 10.0;
    double peak_gain_linear = 1000.0;      // 30 dBi
    double noise_temperature_k = 290.0;
    double bandwidth_hz = 0.0;             // set per scenario cell
    double carrier_frequency_hz = 26.0e9;
    NoiseModel noise_model = NoiseModel::kBandwidthFree;
    // Test hook: when set, path loss is this constant instead of the
    // free-space model.
    std::optional<double> constant_path_loss_linear;

    friend bool operator==(const LinkBudgetParams&, const LinkBudgetParams&) = default;
};

struct LinkBudget {
    double distance_km = 0.0;
    double path_loss_linear = 0.0;  // >= 1
    double snr_linear = 0.0;
    double capacity_bps = 0.0;
    double t_trans_s = 0.0;

    friend bool operator==(const LinkBudget&, const LinkBudget&) = default;
};

// Free-space loss (4 pi d f / c)^2, linear. Throws DomainError for d <= 0.
double path_loss(double distance_km, double carrier_frequency_hz);

// SNR for the given linear path loss (>= 1) under params.noise_model.
double snr(const LinkBudgetParams& params, double path_loss_linear);

// Shannon capacity B * log2(1 + SNR), bits/second.
double capacity(double bandwidth_hz, double snr_linear);

// Full budget for one packet of d_trans_bits over distance_km.
// Throws DomainError if the link is infeasible (zero capacity).
LinkBudget transmission_delay(double d_trans_bits, const LinkBudgetParams& params,
                              double distance_km);

}  // namespace satqos
