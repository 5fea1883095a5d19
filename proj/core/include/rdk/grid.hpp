#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace rdk {

/// Polar measurement grid of a 4D radar tensor.
///
/// Axes are (azimuth, range, elevation, Doppler). Index -> physical
/// coordinate mapping uses bin centers: azimuth and elevation bins are
/// linearly spaced over their bounds, range bins start at range_start
/// with pitch range_step, Doppler bins are centered on zero velocity.
struct PolarGridSpec {
    std::size_t n_azimuth = 1;
    std::size_t n_range = 1;
    std::size_t n_elevation = 1;
    std::size_t n_doppler = 1;
    double azimuth_min = 0.0;   // radians
    double azimuth_max = 0.0;
    double elevation_min = 0.0; // radians
    double elevation_max = 0.0;
    double range_start = 0.0;   // meters
    double range_step = 0.0;    // meters per bin
    double doppler_step = 0.0;  // m/s per bin

    void validate() const {
        if (n_azimuth < 1 || n_range < 1 || n_elevation < 1 || n_doppler < 1)
            throw std::invalid_argument("PolarGridSpec: all axis counts must be >= 1");
        if (!(azimuth_max > azimuth_min))
            throw std::invalid_argument("PolarGridSpec: azimuth_max must exceed azimuth_min");
        if (!(elevation_max > elevation_min))
            throw std::invalid_argument("PolarGridSpec: elevation_max must exceed elevation_min");
        if (!(range_step > 0.0))
            throw std::invalid_argument("PolarGridSpec: range_step must be positive");
        if (range_start < 0.0)
            throw std::invalid_argument("PolarGridSpec: range_start must be non-negative");
    }

    double azimuth_step() const { return (azimuth_max - azimuth_min) / double(n_azimuth); }
    double elevation_step() const { return (elevation_max - elevation_min) / double(n_elevation); }

    double azimuth_center(std::size_t i) const {
        return azimuth_min + (double(i) + 0.5) * azimuth_step();
    }
    double range_center(std::size_t i) const {
        return range_start + (double(i) + 0.5) * range_step;
    }
    double elevation_center(std::size_t i) const {
        return elevation_min + (double(i) + 0.5) * elevation_step();
    }
    double doppler_center(std::size_t i) const {
        return (double(i) - 0.5 * double(n_doppler - 1)) * doppler_step;
    }

    std::size_t volume_cells() const { return n_azimuth * n_range * n_elevation; }
    std::size_t tensor_cells() const { return volume_cells() * n_doppler; }

    // Row-major (azimuth, range, elevation, Doppler) storage order.
    std::size_t tensor_index(std::size_t ia, std::size_t ir, std::size_t ie, std::size_t id) const {
        return ((ia * n_range + ir) * n_elevation + ie) * n_doppler + id;
    }
    std::size_t volume_index(std::size_t ia, std::size_t ir, std::size_t ie) const {
        return (ia * n_range + ir) * n_elevation + ie;
    }
};

/// Axis-aligned Cartesian region of interest with cubic voxels.
struct CartesianGridSpec {
    double x_min = 0.0, x_max = 72.0;
    double y_min = -16.0, y_max = 16.0;
    double z_min = -2.0, z_max = 7.6;
    double voxel_size = 0.4; // meters

    void validate() const {
        if (!(x_max > x_min) || !(y_max > y_min) || !(z_max > z_min))
            throw std::invalid_argument("CartesianGridSpec: each axis must span a nonempty interval");
        if (!(voxel_size > 0.0))
            throw std::invalid_argument("CartesianGridSpec: voxel_size must be positive");
    }

    static std::size_t axis_count(double lo, double hi, double step) {
        double n = (hi - lo) / step;
        auto cells = std::size_t(std::ceil(n - 1e-9));
        return cells < 1 ? 1 : cells;
    }

    std::size_t nx() const { return axis_count(x_min, x_max, voxel_size); }
    std::size_t ny() const { return axis_count(y_min, y_max, voxel_size); }
    std::size_t nz() const { return axis_count(z_min, z_max, voxel_size); }
    std::size_t voxel_count() const { return nx() * ny() * nz(); }

    double x_center(std::size_t i) const { return x_min + (double(i) + 0.5) * voxel_size; }
    double y_center(std::size_t i) const { return y_min + (double(i) + 0.5) * voxel_size; }
    double z_center(std::size_t i) const { return z_min + (double(i) + 0.5) * voxel_size; }

    std::size_t voxel_index(std::size_t ix, std::size_t iy, std::size_t iz) const {
        return (ix * ny() + iy) * nz() + iz;
    }

    double volume_m3() const { return (x_max - x_min) * (y_max - y_min) * (z_max - z_min); }
};

} // namespace rdk
