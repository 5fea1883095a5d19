#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rdk/pointcloud.hpp"
#include "rdk/tensor.hpp"

namespace rdk {

/// Cell-averaging CFAR window. The window spans the active axes only;
/// on each active axis the full half-extent is guard + training cells.
/// A cell is detected when power > scale_alpha * mean(training cells).
struct CfarConfig {
    std::size_t train_azimuth = 8;
    std::size_t train_range = 8;
    std::size_t train_elevation = 0;
    std::size_t guard_azimuth = 2;
    std::size_t guard_range = 2;
    std::size_t guard_elevation = 0;
    bool axis_azimuth = true;
    bool axis_range = true;
    bool axis_elevation = false;
    double scale_alpha = 2.0;

    void validate() const;
    /// Number of training cells in a full window.
    std::size_t training_cell_count() const;
};

/// Closed-form false-alarm probability of CA-CFAR on exponential noise
/// with n training cells: (1 + alpha/n)^(-n).
double cfar_false_alarm_rate(double alpha, std::size_t n_training);

/// Threshold multiplier achieving a target false-alarm rate:
/// alpha = n * (p_fa^(-1/n) - 1).
double cfar_alpha_for_rate(double p_fa, std::size_t n_training);

/// Detection in grid-index space, power from the collapsed volume.
struct CfarDetection {
    std::size_t ia, ir, ie;
    float power;
};

/// CA-CFAR over the polar power volume. Cells whose window does not fit
/// inside the grid are never detected. Detections come out in row-major
/// scan order. Throws std::invalid_argument when the window fits nowhere.
std::vector<CfarDetection> ca_cfar_detect(const PowerVolume3D& volume, const CfarConfig& cfg);

/// ca_cfar_detect + conversion of kept cells to Cartesian points.
PointCloud ca_cfar(const PowerVolume3D& volume, const CfarConfig& cfg);

/// RTNH+-style two-level pre-processing: coarse CA-CFAR, then a
/// per-range-ring nearest-rank percentile over the survivors' powers
/// (azimuth and elevation pooled within the ring).
struct TlpConfig {
    CfarConfig coarse;
    double second_stage_r = 50.0; // percentile in [0, 100]

    void validate() const;
};

PointCloud two_level_preproc(const RadarTensor4D& tensor, const TlpConfig& cfg);

} // namespace rdk
