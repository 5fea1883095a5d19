#include "rdk/cfar.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "rdk/geometry.hpp"
#include "rdk/percentile.hpp"

namespace rdk {

void CfarConfig::validate() const {
    if (!axis_azimuth && !axis_range && !axis_elevation)
        throw std::invalid_argument("CfarConfig: at least one axis must be active");
    if (axis_azimuth && train_azimuth < 1)
        throw std::invalid_argument("CfarConfig: train_azimuth must be >= 1 on an active axis");
    if (axis_range && train_range < 1)
        throw std::invalid_argument("CfarConfig: train_range must be >= 1 on an active axis");
    if (axis_elevation && train_elevation < 1)
        throw std::invalid_argument("CfarConfig: train_elevation must be >= 1 on an active axis");
    if (!(scale_alpha > 0.0))
        throw std::invalid_argument("CfarConfig: scale_alpha must be > 0");
}

namespace {

struct Extents {
    std::size_t win_a, win_r, win_e; // full half-extent per axis (0 on inactive axes)
    std::size_t grd_a, grd_r, grd_e;
};

Extents extents_of(const CfarConfig& c) {
    return {c.axis_azimuth ? c.guard_azimuth + c.train_azimuth : 0,
            c.axis_range ? c.guard_range + c.train_range : 0,
            c.axis_elevation ? c.guard_elevation + c.train_elevation : 0,
            c.axis_azimuth ? c.guard_azimuth : 0,
            c.axis_range ? c.guard_range : 0,
            c.axis_elevation ? c.guard_elevation : 0};
}

std::size_t box_cells(std::size_t ha, std::size_t hr, std::size_t he) {
    return (2 * ha + 1) * (2 * hr + 1) * (2 * he + 1);
}

// Inclusive 3D prefix sums; sat has an extra leading zero plane per axis.
struct IntegralVolume {
    std::size_t na, nr, ne;
    std::vector<double> sat;

    explicit IntegralVolume(const PowerVolume3D& v)
        : na(v.grid.n_azimuth), nr(v.grid.n_range), ne(v.grid.n_elevation),
          sat((na + 1) * (nr + 1) * (ne + 1), 0.0) {
        for (std::size_t a = 0; a < na; ++a)
            for (std::size_t r = 0; r < nr; ++r)
                for (std::size_t e = 0; e < ne; ++e)
                    s(a + 1, r + 1, e + 1) = v.at(a, r, e) + s(a, r + 1, e + 1) +
                                             s(a + 1, r, e + 1) + s(a + 1, r + 1, e) -
                                             s(a, r, e + 1) - s(a, r + 1, e) -
                                             s(a + 1, r, e) + s(a, r, e);
    }

    double& s(std::size_t a, std::size_t r, std::size_t e) {
        return sat[(a * (nr + 1) + r) * (ne + 1) + e];
    }
    double s(std::size_t a, std::size_t r, std::size_t e) const {
        return sat[(a * (nr + 1) + r) * (ne + 1) + e];
    }

    // Sum over the closed index box [a0,a1] x [r0,r1] x [e0,e1].
    double box(std::size_t a0, std::size_t a1, std::size_t r0, std::size_t r1,
               std::size_t e0, std::size_t e1) const {
        return s(a1 + 1, r1 + 1, e1 + 1) - s(a0, r1 + 1, e1 + 1) - s(a1 + 1, r0, e1 + 1) -
               s(a1 + 1, r1 + 1, e0) + s(a0, r0, e1 + 1) + s(a0, r1 + 1, e0) +
               s(a1 + 1, r0, e0) - s(a0, r0, e0);
    }
};

} // namespace

std::size_t CfarConfig::training_cell_count() const {
    const Extents x = extents_of(*this);
    return box_cells(x.win_a, x.win_r, x.win_e) - box_cells(x.grd_a, x.grd_r, x.grd_e);
}

double cfar_false_alarm_rate(double alpha, std::size_t n_training) {
    return std::pow(1.0 + alpha / double(n_training), -double(n_training));
}

double cfar_alpha_for_rate(double p_fa, std::size_t n_training) {
    if (!(p_fa > 0.0 && p_fa < 1.0))
        throw std::invalid_argument("cfar_alpha_for_rate: p_fa must lie in (0, 1)");
    const double n = double(n_training);
    return n * (std::pow(p_fa, -1.0 / n) - 1.0);
}

std::vector<CfarDetection> ca_cfar_detect(const PowerVolume3D& volume, const CfarConfig& cfg) {
    cfg.validate();
    const PolarGridSpec& g = volume.grid;
    const Extents x = extents_of(cfg);
    if (2 * x.win_a + 1 > g.n_azimuth || 2 * x.win_r + 1 > g.n_range ||
        2 * x.win_e + 1 > g.n_elevation)
        throw std::invalid_argument("ca_cfar: window does not fit inside the grid");

    const double n_train = double(cfg.training_cell_count());
    const IntegralVolume iv(volume);

    std::vector<CfarDetection> detections;
    for (std::size_t a = x.win_a; a + x.win_a < g.n_azimuth; ++a)
        for (std::size_t r = x.win_r; r + x.win_r < g.n_range; ++r)
            for (std::size_t e = x.win_e; e + x.win_e < g.n_elevation; ++e) {
                const double win = iv.box(a - x.win_a, a + x.win_a, r - x.win_r, r + x.win_r,
                                          e - x.win_e, e + x.win_e);
                const double grd = iv.box(a - x.grd_a, a + x.grd_a, r - x.grd_r, r + x.grd_r,
                                          e - x.grd_e, e + x.grd_e);
                const double mean = (win - grd) / n_train;
                const float pw = volume.at(a, r, e);
                if (double(pw) > cfg.scale_alpha * mean)
                    detections.push_back({a, r, e, pw});
            }
    return detections;
}

namespace {

PointCloud to_cloud(const std::vector<CfarDetection>& detections, const PolarGridSpec& g) {
    PointCloud cloud;
    cloud.points.reserve(detections.size());
    for (const CfarDetection& d : detections) {
        const PolarCoord pc = discrete_to_continuous(d.ia, d.ir, d.ie, g);
        const Vec3 p = polar_to_cartesian(pc.azimuth, pc.range, pc.elevation);
        cloud.points.push_back({float(p.x), float(p.y), float(p.z), d.power});
    }
    return cloud;
}

} // namespace

PointCloud ca_cfar(const PowerVolume3D& volume, const CfarConfig& cfg) {
    return to_cloud(ca_cfar_detect(volume, cfg), volume.grid);
}

void TlpConfig::validate() const {
    coarse.validate();
    if (!(second_stage_r >= 0.0 && second_stage_r <= 100.0))
        throw std::invalid_argument("TlpConfig: second_stage_r must lie in [0, 100]");
}

PointCloud two_level_preproc(const RadarTensor4D& tensor, const TlpConfig& cfg) {
    cfg.validate();
    const PowerVolume3D volume = power_map(tensor);
    const std::vector<CfarDetection> stage1 = ca_cfar_detect(volume, cfg.coarse);

    // Per-range-ring percentile over survivor powers (azimuth and
    // elevation pooled within a ring).
    std::map<std::size_t, std::vector<float>> ring_powers;
    for (const CfarDetection& d : stage1) ring_powers[d.ir].push_back(d.power);

    std::map<std::size_t, float> ring_threshold;
    for (auto& [ir, powers] : ring_powers)
        ring_threshold[ir] =
            percentile_threshold(std::span<const float>(powers), cfg.second_stage_r);

    std::vector<CfarDetection> kept;
    for (const CfarDetection& d : stage1)
        if (d.power >= ring_threshold.at(d.ir)) kept.push_back(d);
    return to_cloud(kept, volume.grid);
}

} // namespace rdk
