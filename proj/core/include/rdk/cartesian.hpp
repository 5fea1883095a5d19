#pragma once

#include <cstdint>
#include <vector>

#include "rdk/grid.hpp"
#include "rdk/pointcloud.hpp"
#include "rdk/tensor.hpp"

namespace rdk {

/// Regular Cartesian voxel volume resampled from a polar power volume.
/// Voxels whose centers fall outside the polar field of view are marked
/// invalid and excluded from all statistics.
struct CartesianVoxelVolume {
    CartesianGridSpec grid;
    std::vector<float> values;  // one power per voxel, row-major (x, y, z)
    std::vector<std::uint8_t> valid;

    std::size_t valid_count() const;
};

/// Trilinear resampling of the polar volume at every voxel center.
/// A voxel is valid when its polar coordinates lie within the bin-center
/// hull on all three axes.
CartesianVoxelVolume resample_to_cartesian(const PowerVolume3D& volume,
                                           const CartesianGridSpec& grid);

/// Nearest-rank percentile filter over valid voxels; kept voxels emit
/// their center coordinates and power, in row-major (x, y, z) order.
/// Throws std::domain_error when no voxel is valid.
PointCloud filter_cartesian_percentile(const CartesianVoxelVolume& voxels, double r);

} // namespace rdk
