#pragma once

// Walker-style constellation generation and analytic circular two-body
// propagation in an Earth-centered inertial frame. No perturbations, no
// Earth rotation: downstream consumers only need inter-satellite
// distances and line-of-sight geometry.

#include <string>
#include <vector>

#include "satqos/vec3.hpp"

namespace satqos {

inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kMuKm3S2 = 398600.4418;  // Earth gravitational parameter

struct ConstellationConfig {
    int planes = 0;
    int sats_per_plane = 0;
    double altitude_km = 0.0;        // above mean Earth radius
    double inclination_deg = 0.0;    // [0, 180]
    int phasing_factor = 0;          // Walker F, 0 <= F < planes
    double raan_spread_deg = 360.0;  // total right-ascension span

    friend bool operator==(const ConstellationConfig&, const ConstellationConfig&) = default;
};

// Throws ValidationError naming the offending field.
void validate(const ConstellationConfig& config);

struct SatelliteSpec {
    std::string id;
    int plane_index = 0;
    int slot_index = 0;
    double semi_major_axis_km = 0.0;
    double inclination_rad = 0.0;
    double raan_rad = 0.0;            // normalized to [0, 2pi)
    double initial_anomaly_rad = 0.0; // normalized to [0, 2pi)

    friend bool operator==(const SatelliteSpec&, const SatelliteSpec&) = default;
};

struct StateVector {
    std::string sat_id;
    double t = 0.0;       // seconds since plan epoch
    Vec3 position_km;     // ECI
    Vec3 velocity_km_s;   // ECI

    friend bool operator==(const StateVector&, const StateVector&) = default;
};

// Plane k gets raan = raan_spread * k / planes; slot j in plane k gets
// initial anomaly 360*j/S + 360*F*k/(P*S). Ids are "sat-PPP-SSS".
std::vector<SatelliteSpec> generate_constellation(const ConstellationConfig& config);

std::string satellite_id(int plane_index, int slot_index);

// Circular orbit: position = Rz(raan) * Rx(incl) * (a cos th, a sin th, 0)
// with th = initial_anomaly + n*t, n = sqrt(mu/a^3). Velocity is the
// analytic time derivative.
StateVector propagate(const SatelliteSpec& spec, double t);

double mean_motion_rad_s(const SatelliteSpec& spec);
double orbital_period_s(const SatelliteSpec& spec);

}  // namespace satqos
