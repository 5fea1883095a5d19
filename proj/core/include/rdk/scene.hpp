#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rdk/tensor.hpp"

namespace rdk {

/// A single idealized reflector placed in continuous polar coordinates.
/// spread_* are Gaussian point-spread widths in bins; 0 collapses the
/// response to the nearest bin on that axis.
struct Scatterer {
    double range = 0.0;     // meters
    double azimuth = 0.0;   // radians
    double elevation = 0.0; // radians
    double doppler = 0.0;   // m/s
    double amplitude = 1.0; // linear power at the peak
    double spread_azimuth = 0.0;
    double spread_range = 0.0;
    double spread_elevation = 0.0;
    double spread_doppler = 0.0;
};

struct SceneConfig {
    std::vector<Scatterer> scatterers;
    double noise_mean = 0.0; // mean of the exponential clutter floor
    std::uint64_t seed = 0;
};

/// Synthesizes a deterministic 4D radar tensor: the sum of separable
/// Gaussian point-spreads (one per scatterer) plus i.i.d. exponential
/// noise with the configured mean. Identical (scene, grid) inputs yield
/// bit-identical tensors.
RadarTensor4D generate_4drt(const SceneConfig& scene, const PolarGridSpec& grid);

/// JSON scene file: {"grid": {...}, "noise_mean": x, "seed": n,
/// "scatterers": [{...}]}. Schema documented in the README.
struct SceneFile {
    PolarGridSpec grid;
    SceneConfig scene;
};

SceneFile load_scene_file(const std::string& path);
void save_scene_file(const std::string& path, const SceneFile& sf);

} // namespace rdk
