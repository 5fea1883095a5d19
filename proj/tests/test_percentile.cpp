#include <doctest.h>

#include <algorithm>
#include <array>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "rdk/percentile.hpp"
#include "rdk/rng.hpp"

using namespace rdk;

namespace {

PolarGridSpec grid(std::size_t na, std::size_t nr, std::size_t ne, std::size_t nd = 1) {
    PolarGridSpec g;
    g.n_azimuth = na;
    g.n_range = nr;
    g.n_elevation = ne;
    g.n_doppler = nd;
    g.azimuth_min = -1.0;
    g.azimuth_max = 1.0;
    g.elevation_min = -0.5;
    g.elevation_max = 0.5;
    g.range_step = 0.5;
    return g;
}

std::set<std::array<float, 3>> point_positions(const PointCloud& c) {
    std::set<std::array<float, 3>> s;
    for (const RadarPoint& p : c.points) s.insert({p.x, p.y, p.z});
    return s;
}

} // namespace

TEST_CASE("nearest-rank percentile hand cases") {
    const std::vector<float> v{1.0f, 2.0f, 3.0f, 4.0f};
    CHECK(percentile_threshold(std::span<const float>(v), 50.0) == 2.0f);
    CHECK(percentile_threshold(std::span<const float>(v), 0.0) == 1.0f);
    CHECK(percentile_threshold(std::span<const float>(v), 100.0) == 4.0f);
    CHECK(percentile_threshold(std::span<const float>(v), 25.0) == 1.0f);
    CHECK(percentile_threshold(std::span<const float>(v), 75.0) == 3.0f);
}

TEST_CASE("nearest_rank_index edge behavior") {
    CHECK(nearest_rank_index(0.0, 10) == 0);
    CHECK(nearest_rank_index(100.0, 10) == 9);
    CHECK(nearest_rank_index(90.0, 10) == 8); // ceil(0.9*10)-1, not off by one
    CHECK(nearest_rank_index(50.0, 4) == 1);
    CHECK_THROWS_AS(nearest_rank_index(50.0, 0), std::domain_error);
    CHECK_THROWS_AS(nearest_rank_index(-1.0, 4), std::domain_error);
    CHECK_THROWS_AS(nearest_rank_index(101.0, 4), std::domain_error);
}

TEST_CASE("percentile threshold matches full-sort oracle on random data") {
    Rng rng(21);
    for (int iter = 0; iter < 50; ++iter) {
        std::vector<float> v(1 + std::size_t(rng.uniform(0.0, 500.0)));
        for (float& x : v) x = float(rng.uniform(0.0, 100.0));
        const double r = rng.uniform(0.0, 100.0);
        CHECK(percentile_threshold(std::span<const float>(v), r) == oracle::percentile_sorted(v, r));
    }
}

TEST_CASE("filter keeps exactly the formula count on all-distinct values") {
    const PolarGridSpec g = grid(10, 10, 10);
    RadarTensor4D t(g);
    std::iota(t.values.begin(), t.values.end(), 1.0f); // 1..1000, all distinct
    const std::size_t n = t.values.size();

    for (double r : {10.0, 50.0, 90.0, 99.9}) {
        const PointCloud c = filter_polar_percentile(t, r);
        CHECK(c.size() == n - nearest_rank_index(r, n));
    }
}

TEST_CASE("filter r=0 keeps everything, constant volume keeps everything") {
    const PolarGridSpec g = grid(4, 5, 3);
    RadarTensor4D t(g);
    std::iota(t.values.begin(), t.values.end(), 0.0f);
    CHECK(filter_polar_percentile(t, 0.0).size() == g.volume_cells());

    std::fill(t.values.begin(), t.values.end(), 2.0f);
    for (double r : {0.0, 37.0, 100.0})
        CHECK(filter_polar_percentile(t, r).size() == g.volume_cells());
}

TEST_CASE("monotonicity: higher r selects a subset") {
    Rng rng(5);
    const PolarGridSpec g = grid(8, 12, 4, 2);
    RadarTensor4D t(g);
    for (float& x : t.values) x = float(rng.uniform(0.0, 10.0));

    const PointCloud lo = filter_polar_percentile(t, 40.0);
    const PointCloud hi = filter_polar_percentile(t, 85.0);
    const auto lo_set = point_positions(lo);
    CHECK(hi.size() <= lo.size());
    for (const RadarPoint& p : hi.points) CHECK(lo_set.count({p.x, p.y, p.z}) == 1);
}

TEST_CASE("selection is equivariant under positive scaling") {
    Rng rng(6);
    const PolarGridSpec g = grid(6, 9, 3);
    RadarTensor4D t(g);
    for (float& x : t.values) x = float(rng.uniform(0.0, 10.0));

    for (float c : {0.5f, 3.0f, 1000.0f}) {
        RadarTensor4D scaled = t;
        for (float& x : scaled.values) x *= c;
        const PointCloud a = filter_polar_percentile(t, 70.0);
        const PointCloud b = filter_polar_percentile(scaled, 70.0);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a.points[i].x == b.points[i].x);
            CHECK(a.points[i].y == b.points[i].y);
            CHECK(a.points[i].z == b.points[i].z);
        }
    }
}

TEST_CASE("kept cells agree with the sort oracle") {
    Rng rng(31);
    const PolarGridSpec g = grid(8, 16, 4, 3);
    RadarTensor4D t(g);
    for (float& x : t.values) x = float(rng.uniform(0.0, 50.0));
    const PowerVolume3D v = power_map(t);

    for (double r : {0.0, 33.0, 66.6, 95.0, 100.0}) {
        const std::vector<std::size_t> kept = oracle::percentile_kept_cells(v.values, r);
        CHECK(filter_polar_percentile(t, r).size() == kept.size());
    }
}
