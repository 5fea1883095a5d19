#pragma once

#include <span>

#include "rdk/pointcloud.hpp"
#include "rdk/tensor.hpp"

namespace rdk {

/// Nearest-rank index for the r-th percentile of n values:
/// ceil(r/100 * n) - 1, clamped to [0, n-1]. r=0 selects the minimum,
/// r=100 the maximum.
std::size_t nearest_rank_index(double r, std::size_t n);

/// Nearest-rank percentile of the values (selection, not a full sort).
/// Throws std::domain_error on an empty span or r outside [0, 100].
float percentile_threshold(std::span<const float> values, double r);

inline float percentile_threshold(const PowerVolume3D& volume, double r) {
    return percentile_threshold(std::span<const float>(volume.values), r);
}

/// Global percentile filter in native polar geometry: collapse Doppler,
/// keep cells with power >= the r-th percentile, convert kept cells to
/// Cartesian points in row-major (azimuth, range, elevation) scan order.
PointCloud filter_polar_percentile(const RadarTensor4D& tensor, double r);

} // namespace rdk
