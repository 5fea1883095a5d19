#pragma once

#include <string>
#include <vector>

#include "rdk/grid.hpp"
#include "rdk/pointcloud.hpp"

namespace rdk {

/// 2D projection of a Cartesian RoI: width indexes x, height indexes y.
struct BEVGridSpec {
    double x_min = 0.0, x_max = 72.0;
    double y_min = -16.0, y_max = 16.0;
    double cell_size = 0.4;

    void validate() const {
        if (!(x_max > x_min) || !(y_max > y_min))
            throw std::invalid_argument("BEVGridSpec: bounds must span nonempty intervals");
        if (!(cell_size > 0.0))
            throw std::invalid_argument("BEVGridSpec: cell_size must be positive");
    }

    static BEVGridSpec from_roi(const CartesianGridSpec& roi) {
        return {roi.x_min, roi.x_max, roi.y_min, roi.y_max, roi.voxel_size};
    }

    std::size_t width() const { return CartesianGridSpec::axis_count(x_min, x_max, cell_size); }
    std::size_t height() const { return CartesianGridSpec::axis_count(y_min, y_max, cell_size); }
};

/// C x H x W feature grid over a BEV projection.
struct BEVFeatureMap {
    std::size_t channels = 0, height = 0, width = 0;
    std::vector<float> values;
    BEVGridSpec grid;

    BEVFeatureMap() = default;
    BEVFeatureMap(std::size_t c, std::size_t h, std::size_t w)
        : channels(c), height(h), width(w), values(c * h * w, 0.0f) {}

    float& at(std::size_t c, std::size_t h, std::size_t w) {
        return values[(c * height + h) * width + w];
    }
    float at(std::size_t c, std::size_t h, std::size_t w) const {
        return values[(c * height + h) * width + w];
    }
};

/// Ground-truth box in BEV: center, extents, heading.
struct BoxLabel {
    double center_x = 0.0, center_y = 0.0; // meters
    double length = 1.0, width = 1.0;      // meters, > 0
    double yaw = 0.0;                      // radians
};

/// Per-cell weights in [0, 1] from Gaussian splatting of labels.
struct Heatmap {
    std::size_t height = 0, width = 0;
    std::vector<float> values;

    Heatmap() = default;
    Heatmap(std::size_t h, std::size_t w) : height(h), width(w), values(h * w, 0.0f) {}

    float& at(std::size_t h, std::size_t w) { return values[h * width + w]; }
    float at(std::size_t h, std::size_t w) const { return values[h * width + w]; }
};

struct LossWeights {
    double alpha = 1.0;
    double beta = 1.0;
};

/// 3-channel BEV summary of a point cloud: per cell max power, point
/// count, and mean z. Points outside the grid are ignored.
BEVFeatureMap voxelize_bev(const PointCloud& cloud, const BEVGridSpec& grid);

/// One axis-aligned 2D Gaussian per label, peak exactly 1 at the center
/// cell, sigma = rotated-footprint extent / 6 in cells with a 1-cell
/// floor. Overlaps combine by element-wise max.
Heatmap splat_gaussian_heatmap(const std::vector<BoxLabel>& labels, const BEVGridSpec& grid);

/// Mean over all C*H*W elements of (mask*teacher - mask*student)^2;
/// the mask broadcasts over channels.
double masked_mse(const BEVFeatureMap& teacher, const BEVFeatureMap& student,
                  const Heatmap& mask);

double total_loss(double l_detect, double l_distill, const LossWeights& w);

/// CSV labels file with header center_x,center_y,length,width,yaw.
std::vector<BoxLabel> read_labels_csv(const std::string& path);

/// 16-bit PGM image of a heatmap (values scaled from [0,1]) plus a CSV
/// twin for numeric inspection.
void write_heatmap_pgm(const std::string& path, const Heatmap& hm);
void write_heatmap_csv(const std::string& path, const Heatmap& hm);

} // namespace rdk
