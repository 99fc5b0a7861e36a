#include "satqos/orbit.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "satqos/errors.hpp"

namespace satqos {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double rad) {
    double w = std::fmod(rad, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

}  // namespace

void validate(const ConstellationConfig& config) {
    if (config.planes < 1) {
        throw ValidationError("constellation.planes: must be >= 1");
    }
    if (config.sats_per_plane < 1) {
        throw ValidationError("constellation.sats_per_plane: must be >= 1");
    }
    if (!(config.altitude_km > 0.0)) {
        throw ValidationError("constellation.altitude_km: must be > 0");
    }
    if (!(config.inclination_deg >= 0.0 && config.inclination_deg <= 180.0)) {
        throw ValidationError("constellation.inclination_deg: must be in [0, 180]");
    }
    if (config.phasing_factor < 0 || config.phasing_factor >= config.planes) {
        throw ValidationError("constellation.phasing_factor: must be in [0, planes)");
    }
    if (!(config.raan_spread_deg >= 0.0 && config.raan_spread_deg <= 360.0)) {
        throw ValidationError("constellation.raan_spread_deg: must be in [0, 360]");
    }
}

std::string satellite_id(int plane_index, int slot_index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "sat-%03d-%03d", plane_index, slot_index);
    return buf;
}

std::vector<SatelliteSpec> generate_constellation(const ConstellationConfig& config) {
    validate(config);

    const double a = kEarthRadiusKm + config.altitude_km;
    const double incl = config.inclination_deg * std::numbers::pi / 180.0;
    const double raan_spread = config.raan_spread_deg * std::numbers::pi / 180.0;
    const int planes = config.planes;
    const int slots = config.sats_per_plane;

    std::vector<SatelliteSpec> specs;
    specs.reserve(static_cast<std::size_t>(planes) * slots);
    for (int p = 0; p < planes; ++p) {
        const double raan = raan_spread * p / planes;
        for (int s = 0; s < slots; ++s) {
            const double anomaly = kTwoPi * s / slots
                + kTwoPi * config.phasing_factor * p / (static_cast<double>(planes) * slots);
            specs.push_back(SatelliteSpec{
                .id = satellite_id(p, s),
                .plane_index = p,
                .slot_index = s,
                .semi_major_axis_km = a,
                .inclination_rad = incl,
                .raan_rad = wrap_angle(raan),
                .initial_anomaly_rad = wrap_angle(anomaly),
            });
        }
    }
    return specs;
}

double mean_motion_rad_s(const SatelliteSpec& spec) {
    const double a = spec.semi_major_axis_km;
    return std::sqrt(kMuKm3S2 / (a * a * a));
}

double orbital_period_s(const SatelliteSpec& spec) {
    return kTwoPi / mean_motion_rad_s(spec);
}

StateVector propagate(const SatelliteSpec& spec, double t) {
    const double a = spec.semi_major_axis_km;
    const double n = mean_motion_rad_s(spec);
    const double theta = spec.initial_anomaly_rad + n * t;

    // In-plane position and its time derivative.
    const double cos_th = std::cos(theta);
    const double sin_th = std::sin(theta);
    const double px = a * cos_th;
    const double py = a * sin_th;
    const double vx = -a * n * sin_th;
    const double vy = a * n * cos_th;

    const double cos_i = std::cos(spec.inclination_rad);
    const double sin_i = std::sin(spec.inclination_rad);
    const double cos_o = std::cos(spec.raan_rad);
    const double sin_o = std::sin(spec.raan_rad);

    // Rz(raan) * Rx(inclination) applied to (px, py, 0).
    auto rotate = [&](double x, double y) {
        return Vec3{x * cos_o - y * cos_i * sin_o, x * sin_o + y * cos_i * cos_o, y * sin_i};
    };

    return StateVector{
        .sat_id = spec.id,
        .t = t,
        .position_km = rotate(px, py),
        .velocity_km_s = rotate(vx, vy),
    };
}

}  // namespace satqos
