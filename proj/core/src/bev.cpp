#include "rdk/bev.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rdk {

BEVFeatureMap voxelize_bev(const PointCloud& cloud, const BEVGridSpec& grid) {
    grid.validate();
    const std::size_t h = grid.height(), w = grid.width();
    BEVFeatureMap map(3, h, w);
    map.grid = grid;
    std::vector<double> z_sum(h * w, 0.0);

    for (const RadarPoint& p : cloud.points) {
        const double fx = (p.x - grid.x_min) / grid.cell_size;
        const double fy = (p.y - grid.y_min) / grid.cell_size;
        if (fx < 0.0 || fy < 0.0) continue;
        const std::size_t ix = std::size_t(fx), iy = std::size_t(fy);
        if (ix >= w || iy >= h) continue;
        map.at(0, iy, ix) = std::max(map.at(0, iy, ix), p.power);
        map.at(1, iy, ix) += 1.0f;
        z_sum[iy * w + ix] += p.z;
    }
    for (std::size_t i = 0; i < h * w; ++i) {
        const float count = map.values[h * w + i]; // channel 1
        if (count > 0.0f) map.values[2 * h * w + i] = float(z_sum[i] / count);
    }
    return map;
}

Heatmap splat_gaussian_heatmap(const std::vector<BoxLabel>& labels, const BEVGridSpec& grid) {
    grid.validate();
    const std::size_t h = grid.height(), w = grid.width();
    Heatmap hm(h, w);

    for (const BoxLabel& box : labels) {
        if (!(box.length > 0.0) || !(box.width > 0.0))
            throw std::invalid_argument("splat_gaussian_heatmap: box extents must be > 0");
        // Axis-aligned footprint of the rotated box.
        const double c = std::abs(std::cos(box.yaw)), s = std::abs(std::sin(box.yaw));
        const double ext_x = box.length * c + box.width * s;
        const double ext_y = box.length * s + box.width * c;
        const double sigma_x = std::max(ext_x / 6.0 / grid.cell_size, 1.0); // cells
        const double sigma_y = std::max(ext_y / 6.0 / grid.cell_size, 1.0);

        const double fx = (box.center_x - grid.x_min) / grid.cell_size;
        const double fy = (box.center_y - grid.y_min) / grid.cell_size;
        const long cx = std::lround(fx - 0.5), cy = std::lround(fy - 0.5);
        if (cx < 0 || cy < 0 || cx >= long(w) || cy >= long(h)) continue;

        const long rx = long(std::ceil(3.0 * sigma_x));
        const long ry = long(std::ceil(3.0 * sigma_y));
        const long x0 = std::max(0L, cx - rx), x1 = std::min(long(w) - 1, cx + rx);
        const long y0 = std::max(0L, cy - ry), y1 = std::min(long(h) - 1, cy + ry);
        for (long y = y0; y <= y1; ++y)
            for (long x = x0; x <= x1; ++x) {
                const double dx = double(x - cx) / sigma_x;
                const double dy = double(y - cy) / sigma_y;
                const float v = float(std::exp(-0.5 * (dx * dx + dy * dy)));
                float& cell = hm.at(std::size_t(y), std::size_t(x));
                cell = std::max(cell, v);
            }
    }
    return hm;
}

double masked_mse(const BEVFeatureMap& teacher, const BEVFeatureMap& student,
                  const Heatmap& mask) {
    if (teacher.channels != student.channels || teacher.height != student.height ||
        teacher.width != student.width)
        throw std::invalid_argument("masked_mse: feature map shapes differ");
    if (mask.height != teacher.height || mask.width != teacher.width)
        throw std::invalid_argument("masked_mse: mask shape does not match features");

    const std::size_t plane = teacher.height * teacher.width;
    double acc = 0.0;
    for (std::size_t c = 0; c < teacher.channels; ++c)
        for (std::size_t i = 0; i < plane; ++i) {
            const double m = mask.values[i];
            const double d = m * teacher.values[c * plane + i] - m * student.values[c * plane + i];
            acc += d * d;
        }
    return acc / double(teacher.channels * plane);
}

double total_loss(double l_detect, double l_distill, const LossWeights& w) {
    if (!std::isfinite(l_detect) || !std::isfinite(l_distill))
        throw std::invalid_argument("total_loss: inputs must be finite");
    return w.alpha * l_detect + w.beta * l_distill;
}

std::vector<BoxLabel> read_labels_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open labels file: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("center_x,center_y,length,width,yaw", 0) != 0)
        throw std::runtime_error(path + ": expected header center_x,center_y,length,width,yaw");
    std::vector<BoxLabel> labels;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        BoxLabel b;
        char c1, c2, c3, c4;
        std::istringstream ss(line);
        if (!(ss >> b.center_x >> c1 >> b.center_y >> c2 >> b.length >> c3 >> b.width >> c4 >>
              b.yaw) ||
            c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',')
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed row");
        labels.push_back(b);
    }
    return labels;
}

void write_heatmap_pgm(const std::string& path, const Heatmap& hm) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "P5\n" << hm.width << " " << hm.height << "\n65535\n";
    for (std::size_t i = 0; i < hm.values.size(); ++i) {
        const double v = std::clamp(double(hm.values[i]), 0.0, 1.0);
        const auto q = std::uint16_t(std::lround(v * 65535.0));
        const unsigned char bytes[2] = {(unsigned char)(q >> 8), (unsigned char)(q & 0xff)};
        out.write(reinterpret_cast<const char*>(bytes), 2);
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_heatmap_csv(const std::string& path, const Heatmap& hm) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    char num[32];
    for (std::size_t y = 0; y < hm.height; ++y) {
        for (std::size_t x = 0; x < hm.width; ++x) {
            std::snprintf(num, sizeof(num), "%.9g", hm.at(y, x));
            out << num << (x + 1 < hm.width ? "," : "\n");
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace rdk
