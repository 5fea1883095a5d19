#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rdk {

struct RadarPoint {
    float x = 0.0f; // meters
    float y = 0.0f;
    float z = 0.0f;
    float power = 0.0f; // linear power
};

inline bool operator==(const RadarPoint& a, const RadarPoint& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z && a.power == b.power;
}

/// Ordered list of detections. Producers emit points in row-major scan
/// order of the source grid so repeated runs are byte-identical.
struct PointCloud {
    std::vector<RadarPoint> points;
    std::string frame_id;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
};

} // namespace rdk
