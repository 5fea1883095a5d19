#include "rdk/cartesian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rdk/geometry.hpp"
#include "rdk/parallel.hpp"
#include "rdk/percentile.hpp"

namespace rdk {

namespace {

struct AxisHull {
    double center0;
    double step;
    std::size_t n;

    // Fractional bin index; valid when the coordinate is inside the
    // bin-center hull (a degenerate single-bin axis accepts +-step/2).
    bool locate(double coord, double& f) const {
        if (n == 1) {
            if (std::abs(coord - center0) > 0.5 * std::abs(step)) return false;
            f = 0.0;
            return true;
        }
        f = (coord - center0) / step;
        return f >= 0.0 && f <= double(n - 1);
    }
};

void split(double f, std::size_t n, std::size_t& i0, double& t) {
    double fl = std::floor(f);
    if (fl > double(n - 2)) fl = double(n - 2); // f == n-1 maps to the last interval
    if (fl < 0.0) fl = 0.0;
    i0 = std::size_t(fl);
    t = f - fl;
}

} // namespace

std::size_t CartesianVoxelVolume::valid_count() const {
    return std::size_t(std::count(valid.begin(), valid.end(), std::uint8_t(1)));
}

CartesianVoxelVolume resample_to_cartesian(const PowerVolume3D& volume,
                                           const CartesianGridSpec& grid) {
    grid.validate();
    const PolarGridSpec& pg = volume.grid;
    pg.validate();

    CartesianVoxelVolume out;
    out.grid = grid;
    const std::size_t nx = grid.nx(), ny = grid.ny(), nz = grid.nz();
    out.values.assign(nx * ny * nz, 0.0f);
    out.valid.assign(nx * ny * nz, 0);

    const AxisHull az{pg.azimuth_center(0), pg.azimuth_step(), pg.n_azimuth};
    const AxisHull rg{pg.range_center(0), pg.range_step, pg.n_range};
    const AxisHull el{pg.elevation_center(0), pg.elevation_step(), pg.n_elevation};

    parallel_for(nx * ny * nz, [&](std::size_t begin, std::size_t end) {
        for (std::size_t v = begin; v < end; ++v) {
            const std::size_t ix = v / (ny * nz);
            const std::size_t iy = (v / nz) % ny;
            const std::size_t iz = v % nz;
            const Vec3 c{grid.x_center(ix), grid.y_center(iy), grid.z_center(iz)};
            const double rr = std::sqrt(c.x * c.x + c.y * c.y + c.z * c.z);
            if (rr == 0.0) continue;
            const PolarCoord pc = cartesian_to_polar(c);

            double fa, fr, fe;
            if (!az.locate(pc.azimuth, fa) || !rg.locate(pc.range, fr) ||
                !el.locate(pc.elevation, fe))
                continue;

            std::size_t a0 = 0, r0 = 0, e0 = 0;
            double ta = 0.0, tr = 0.0, te = 0.0;
            if (pg.n_azimuth > 1) split(fa, pg.n_azimuth, a0, ta);
            if (pg.n_range > 1) split(fr, pg.n_range, r0, tr);
            if (pg.n_elevation > 1) split(fe, pg.n_elevation, e0, te);
            const std::size_t a1 = std::min(a0 + 1, pg.n_azimuth - 1);
            const std::size_t r1 = std::min(r0 + 1, pg.n_range - 1);
            const std::size_t e1 = std::min(e0 + 1, pg.n_elevation - 1);

            const double value =
                (1 - ta) * ((1 - tr) * ((1 - te) * volume.at(a0, r0, e0) + te * volume.at(a0, r0, e1)) +
                            tr * ((1 - te) * volume.at(a0, r1, e0) + te * volume.at(a0, r1, e1))) +
                ta * ((1 - tr) * ((1 - te) * volume.at(a1, r0, e0) + te * volume.at(a1, r0, e1)) +
                      tr * ((1 - te) * volume.at(a1, r1, e0) + te * volume.at(a1, r1, e1)));
            out.values[v] = float(value);
            out.valid[v] = 1;
        }
    });
    return out;
}

PointCloud filter_cartesian_percentile(const CartesianVoxelVolume& voxels, double r) {
    std::vector<float> valid_values;
    valid_values.reserve(voxels.values.size());
    for (std::size_t i = 0; i < voxels.values.size(); ++i)
        if (voxels.valid[i]) valid_values.push_back(voxels.values[i]);
    if (valid_values.empty())
        throw std::domain_error("filter_cartesian_percentile: no valid voxels");

    const float threshold =
        percentile_threshold(std::span<const float>(valid_values), r);

    const CartesianGridSpec& g = voxels.grid;
    const std::size_t nx = g.nx(), ny = g.ny(), nz = g.nz();
    PointCloud cloud;
    std::size_t v = 0;
    for (std::size_t ix = 0; ix < nx; ++ix)
        for (std::size_t iy = 0; iy < ny; ++iy)
            for (std::size_t iz = 0; iz < nz; ++iz, ++v) {
                if (!voxels.valid[v] || !(voxels.values[v] >= threshold)) continue;
                cloud.points.push_back({float(g.x_center(ix)), float(g.y_center(iy)),
                                        float(g.z_center(iz)), voxels.values[v]});
            }
    return cloud;
}

} // namespace rdk
