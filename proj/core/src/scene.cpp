#include "rdk/scene.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "rdk/rng.hpp"

namespace rdk {

namespace {

// Fractional bin index of a continuous coordinate; centers sit at integers.
double frac_index(double coord, double origin, double step) {
    return (coord - origin) / step - 0.5;
}

void check_inside(double f, std::size_t n, const char* axis) {
    if (!(f >= -0.5 && f <= double(n) - 0.5))
        throw std::invalid_argument(std::string("generate_4drt: scatterer outside grid on ") + axis);
}

// Accumulate a 1D Gaussian profile over the bins within 4 sigma of the
// center; spread 0 degenerates to weight 1 at the nearest bin.
void axis_profile(double center, double spread, std::size_t n,
                  std::vector<std::size_t>& idx, std::vector<double>& w) {
    idx.clear();
    w.clear();
    if (spread <= 0.0) {
        auto i = long(std::llround(center));
        if (i < 0) i = 0;
        if (i >= long(n)) i = long(n) - 1;
        idx.push_back(std::size_t(i));
        w.push_back(1.0);
        return;
    }
    const long lo = std::max<long>(0, long(std::floor(center - 4.0 * spread)));
    const long hi = std::min<long>(long(n) - 1, long(std::ceil(center + 4.0 * spread)));
    for (long i = lo; i <= hi; ++i) {
        const double d = (double(i) - center) / spread;
        idx.push_back(std::size_t(i));
        w.push_back(std::exp(-0.5 * d * d));
    }
}

} // namespace

RadarTensor4D generate_4drt(const SceneConfig& scene, const PolarGridSpec& grid) {
    grid.validate();
    if (scene.noise_mean < 0.0)
        throw std::invalid_argument("generate_4drt: noise_mean must be >= 0");
    RadarTensor4D tensor(grid);

    std::vector<std::size_t> ia, ir, ie, id;
    std::vector<double> wa, wr, we, wd;
    for (const Scatterer& s : scene.scatterers) {
        if (!(s.amplitude > 0.0))
            throw std::invalid_argument("generate_4drt: scatterer amplitude must be > 0");
        if (s.spread_azimuth < 0.0 || s.spread_range < 0.0 || s.spread_elevation < 0.0 ||
            s.spread_doppler < 0.0)
            throw std::invalid_argument("generate_4drt: spreads must be >= 0");
        const double fa = frac_index(s.azimuth, grid.azimuth_min, grid.azimuth_step());
        const double fr = frac_index(s.range, grid.range_start, grid.range_step);
        const double fe = frac_index(s.elevation, grid.elevation_min, grid.elevation_step());
        const double fd = grid.doppler_step > 0.0
                              ? s.doppler / grid.doppler_step + 0.5 * double(grid.n_doppler - 1)
                              : 0.5 * double(grid.n_doppler - 1);
        check_inside(fa, grid.n_azimuth, "azimuth");
        check_inside(fr, grid.n_range, "range");
        check_inside(fe, grid.n_elevation, "elevation");
        check_inside(fd, grid.n_doppler, "doppler");

        axis_profile(fa, s.spread_azimuth, grid.n_azimuth, ia, wa);
        axis_profile(fr, s.spread_range, grid.n_range, ir, wr);
        axis_profile(fe, s.spread_elevation, grid.n_elevation, ie, we);
        axis_profile(fd, s.spread_doppler, grid.n_doppler, id, wd);

        for (std::size_t a = 0; a < ia.size(); ++a)
            for (std::size_t r = 0; r < ir.size(); ++r)
                for (std::size_t e = 0; e < ie.size(); ++e) {
                    const double w3 = s.amplitude * wa[a] * wr[r] * we[e];
                    for (std::size_t d = 0; d < id.size(); ++d)
                        tensor.at(ia[a], ir[r], ie[e], id[d]) += float(w3 * wd[d]);
                }
    }

    if (scene.noise_mean > 0.0) {
        Rng rng(scene.seed);
        for (float& v : tensor.values) v += float(rng.exponential(scene.noise_mean));
    }
    return tensor;
}

namespace {

using nlohmann::json;

PolarGridSpec grid_from_json(const json& j) {
    PolarGridSpec g;
    g.n_azimuth = j.at("n_azimuth").get<std::size_t>();
    g.n_range = j.at("n_range").get<std::size_t>();
    g.n_elevation = j.at("n_elevation").get<std::size_t>();
    g.n_doppler = j.at("n_doppler").get<std::size_t>();
    g.azimuth_min = j.at("azimuth_min").get<double>();
    g.azimuth_max = j.at("azimuth_max").get<double>();
    g.elevation_min = j.at("elevation_min").get<double>();
    g.elevation_max = j.at("elevation_max").get<double>();
    g.range_start = j.at("range_start").get<double>();
    g.range_step = j.at("range_step").get<double>();
    g.doppler_step = j.value("doppler_step", 1.0);
    g.validate();
    return g;
}

json grid_to_json(const PolarGridSpec& g) {
    return json{{"n_azimuth", g.n_azimuth},       {"n_range", g.n_range},
                {"n_elevation", g.n_elevation},   {"n_doppler", g.n_doppler},
                {"azimuth_min", g.azimuth_min},   {"azimuth_max", g.azimuth_max},
                {"elevation_min", g.elevation_min}, {"elevation_max", g.elevation_max},
                {"range_start", g.range_start},   {"range_step", g.range_step},
                {"doppler_step", g.doppler_step}};
}

} // namespace

SceneFile load_scene_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scene file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error("scene file " + path + ": " + e.what());
    }
    SceneFile sf;
    sf.grid = grid_from_json(j.at("grid"));
    sf.scene.noise_mean = j.value("noise_mean", 0.0);
    sf.scene.seed = j.value("seed", std::uint64_t(0));
    if (j.contains("scatterers")) {
        for (const auto& js : j.at("scatterers")) {
            Scatterer s;
            s.range = js.at("range").get<double>();
            s.azimuth = js.at("azimuth").get<double>();
            s.elevation = js.at("elevation").get<double>();
            s.doppler = js.value("doppler", 0.0);
            s.amplitude = js.at("amplitude").get<double>();
            s.spread_azimuth = js.value("spread_azimuth", 0.0);
            s.spread_range = js.value("spread_range", 0.0);
            s.spread_elevation = js.value("spread_elevation", 0.0);
            s.spread_doppler = js.value("spread_doppler", 0.0);
            sf.scene.scatterers.push_back(s);
        }
    }
    return sf;
}

void save_scene_file(const std::string& path, const SceneFile& sf) {
    json j;
    j["grid"] = grid_to_json(sf.grid);
    j["noise_mean"] = sf.scene.noise_mean;
    j["seed"] = sf.scene.seed;
    j["scatterers"] = json::array();
    for (const Scatterer& s : sf.scene.scatterers) {
        j["scatterers"].push_back(json{{"range", s.range},
                                       {"azimuth", s.azimuth},
                                       {"elevation", s.elevation},
                                       {"doppler", s.doppler},
                                       {"amplitude", s.amplitude},
                                       {"spread_azimuth", s.spread_azimuth},
                                       {"spread_range", s.spread_range},
                                       {"spread_elevation", s.spread_elevation},
                                       {"spread_doppler", s.spread_doppler}});
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write scene file: " + path);
    out << j.dump(2) << '\n';
}

} // namespace rdk
