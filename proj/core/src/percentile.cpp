#include "rdk/percentile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rdk/geometry.hpp"

namespace rdk {

std::size_t nearest_rank_index(double r, std::size_t n) {
    if (n == 0) throw std::domain_error("nearest_rank_index: empty input");
    if (!(r >= 0.0 && r <= 100.0))
        throw std::domain_error("percentile r must lie in [0, 100]");
    // Slack absorbs the representation error of r/100 * n (e.g. 0.9 * 10).
    const long double q = (long double)(r) / 100.0L * (long double)(n);
    long long rank = (long long)(std::ceil(q - 1e-9L)) - 1;
    if (rank < 0) rank = 0;
    if (rank >= (long long)(n)) rank = (long long)(n)-1;
    return std::size_t(rank);
}

float percentile_threshold(std::span<const float> values, double r) {
    const std::size_t k = nearest_rank_index(r, values.size());
    std::vector<float> scratch(values.begin(), values.end());
    std::nth_element(scratch.begin(), scratch.begin() + long(k), scratch.end());
    return scratch[k];
}

PointCloud filter_polar_percentile(const RadarTensor4D& tensor, double r) {
    const PowerVolume3D volume = power_map(tensor);
    const float threshold = percentile_threshold(volume, r);
    const PolarGridSpec& g = volume.grid;

    PointCloud cloud;
    std::size_t idx = 0;
    for (std::size_t ia = 0; ia < g.n_azimuth; ++ia)
        for (std::size_t ir = 0; ir < g.n_range; ++ir)
            for (std::size_t ie = 0; ie < g.n_elevation; ++ie, ++idx) {
                const float pw = volume.values[idx];
                if (pw >= threshold) {
                    const PolarCoord pc = discrete_to_continuous(ia, ir, ie, g);
                    const Vec3 p = polar_to_cartesian(pc.azimuth, pc.range, pc.elevation);
                    cloud.points.push_back({float(p.x), float(p.y), float(p.z), pw});
                }
            }
    return cloud;
}

} // namespace rdk
