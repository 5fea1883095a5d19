#pragma once

#include <cmath>
#include <stdexcept>

#include "rdk/grid.hpp"

namespace rdk {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

struct PolarCoord {
    double azimuth = 0.0;   // radians, (-pi, pi]
    double range = 0.0;     // meters, >= 0
    double elevation = 0.0; // radians, [-pi/2, pi/2]
};

/// x forward, y left, z up.
inline Vec3 polar_to_cartesian(double azimuth, double range, double elevation) {
    const double ce = std::cos(elevation);
    return {range * ce * std::cos(azimuth),
            range * ce * std::sin(azimuth),
            range * std::sin(elevation)};
}

inline PolarCoord cartesian_to_polar(const Vec3& p) {
    const double r = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
    if (r == 0.0)
        throw std::domain_error("cartesian_to_polar: zero vector has no direction");
    const double rho = std::sqrt(p.x * p.x + p.y * p.y);
    PolarCoord out;
    out.range = r;
    out.elevation = std::atan2(p.z, rho);
    out.azimuth = (rho == 0.0) ? 0.0 : std::atan2(p.y, p.x); // canonical 0 at the poles
    return out;
}

/// Bin-center coordinates of a discrete (azimuth, range, elevation) cell.
inline PolarCoord discrete_to_continuous(std::size_t ia, std::size_t ir, std::size_t ie,
                                         const PolarGridSpec& grid) {
    if (ia >= grid.n_azimuth || ir >= grid.n_range || ie >= grid.n_elevation)
        throw std::out_of_range("discrete_to_continuous: index outside grid");
    return {grid.azimuth_center(ia), grid.range_center(ir), grid.elevation_center(ie)};
}

} // namespace rdk
