#pragma once

#include <cstdint>
#include <string>

#include "rdk/cartesian.hpp"
#include "rdk/grid.hpp"
#include "rdk/pointcloud.hpp"
#include "rdk/tensor.hpp"

namespace rdk {

/// Thrown on malformed container files; offset is the byte position of
/// the first inconsistency.
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& what, std::uint64_t offset);
    std::uint64_t offset() const { return offset_; }

private:
    std::uint64_t offset_;
};

/// "RPC1" point cloud container: magic, u32 count, then per point four
/// 32-bit IEEE754 little-endian floats [x, y, z, power]. 8 + 16*count bytes.
void write_cloud(const std::string& path, const PointCloud& cloud);
PointCloud read_cloud(const std::string& path);

/// CSV with header x,y,z,power; re-imports within 1e-6 (decimal text).
void write_cloud_csv(const std::string& path, const PointCloud& cloud);
PointCloud read_cloud_csv(const std::string& path);

struct CloudStats {
    std::size_t num_points = 0;
    std::uint64_t bytes_on_disk = 0; // 8 + 16 * num_points
    double density = 0.0;            // points per m^3 of the RoI
};

CloudStats size_stats(const PointCloud& cloud, const CartesianGridSpec& roi);

/// "4DRT" tensor container: magic, u16 version, four u32 axis counts,
/// seven f64 grid parameters (azimuth_min, azimuth_max, elevation_min,
/// elevation_max, range_start, range_step, doppler_step), then f32 values
/// in row-major (azimuth, range, elevation, Doppler) order. Little-endian.
void write_tensor(const std::string& path, const RadarTensor4D& tensor);
RadarTensor4D read_tensor(const std::string& path);

/// "CVOX" voxel container: magic, u16 version, three u32 axis counts,
/// seven f64 grid parameters (x/y/z bounds + voxel_size), f32 values in
/// row-major (x, y, z) order, then one validity byte per voxel.
void write_voxels(const std::string& path, const CartesianVoxelVolume& voxels);
CartesianVoxelVolume read_voxels(const std::string& path);

} // namespace rdk
