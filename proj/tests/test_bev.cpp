#include <doctest.h>

#include <cmath>
#include <map>

#include "rdk/bev.hpp"
#include "rdk/rng.hpp"

using namespace rdk;

namespace {

BEVGridSpec small_grid() { return {0.0, 8.0, -4.0, 4.0, 1.0}; } // 8x8 cells

} // namespace

TEST_CASE("voxelize_bev trivial cases") {
    const BEVGridSpec g = small_grid();
    CHECK(voxelize_bev({}, g).values == std::vector<float>(3 * 8 * 8, 0.0f));

    PointCloud c;
    c.points.push_back({2.5f, 0.5f, 1.0f, 5.0f}); // center of cell (h=4, w=2)
    const BEVFeatureMap m = voxelize_bev(c, g);
    CHECK(m.at(0, 4, 2) == 5.0f);
    CHECK(m.at(1, 4, 2) == 1.0f);
    CHECK(m.at(2, 4, 2) == 1.0f);
}

TEST_CASE("voxelize_bev matches a naive binning oracle") {
    const BEVGridSpec g = small_grid();
    Rng rng(61);
    PointCloud c;
    for (int i = 0; i < 500; ++i)
        c.points.push_back({float(rng.uniform(-1.0, 9.0)), float(rng.uniform(-5.0, 5.0)),
                            float(rng.uniform(-2.0, 2.0)), float(rng.uniform(0.0, 10.0))});
    const BEVFeatureMap m = voxelize_bev(c, g);

    struct Cell {
        float max_power = 0.0f;
        double z_sum = 0.0;
        std::size_t count = 0;
    };
    std::map<std::pair<std::size_t, std::size_t>, Cell> cells;
    for (const RadarPoint& p : c.points) {
        if (p.x < g.x_min || p.y < g.y_min) continue;
        const std::size_t w = std::size_t((p.x - g.x_min) / g.cell_size);
        const std::size_t h = std::size_t((p.y - g.y_min) / g.cell_size);
        if (w >= 8 || h >= 8) continue;
        Cell& cell = cells[{h, w}];
        cell.max_power = std::max(cell.max_power, p.power);
        cell.z_sum += p.z;
        ++cell.count;
    }
    for (std::size_t h = 0; h < 8; ++h)
        for (std::size_t w = 0; w < 8; ++w) {
            const auto it = cells.find({h, w});
            if (it == cells.end()) {
                CHECK(m.at(1, h, w) == 0.0f);
                continue;
            }
            CHECK(m.at(0, h, w) == it->second.max_power);
            CHECK(m.at(1, h, w) == float(it->second.count));
            CHECK(m.at(2, h, w) ==
                  doctest::Approx(it->second.z_sum / double(it->second.count)).epsilon(1e-6));
        }
}

TEST_CASE("heatmap trivial cases") {
    const BEVGridSpec g = small_grid();
    const Heatmap empty = splat_gaussian_heatmap({}, g);
    for (float v : empty.values) CHECK(v == 0.0f);

    BoxLabel box;
    box.center_x = 4.5; // center of cell w=4
    box.center_y = 0.5; // center of cell h=4
    box.length = 4.0;
    box.width = 2.0;
    const Heatmap hm = splat_gaussian_heatmap({box}, g);
    CHECK(hm.at(4, 4) == 1.0f);
    for (float v : hm.values) {
        CHECK(v >= 0.0f);
        CHECK(v <= 1.0f);
    }
    // Peak is at the center cell.
    for (std::size_t h = 0; h < 8; ++h)
        for (std::size_t w = 0; w < 8; ++w)
            if (h != 4 || w != 4) CHECK(hm.at(h, w) < 1.0f);
    // Strictly decreasing along grid axes away from the center.
    CHECK(hm.at(4, 5) < hm.at(4, 4));
    CHECK(hm.at(4, 6) < hm.at(4, 5));
    CHECK(hm.at(5, 4) < hm.at(4, 4));
    CHECK(hm.at(6, 4) < hm.at(5, 4));
}

TEST_CASE("distant labels compose by element-wise max") {
    BEVGridSpec g{0.0, 32.0, -16.0, 16.0, 1.0};
    BoxLabel a;
    a.center_x = 6.5;
    a.center_y = -8.5;
    a.length = 3.0;
    a.width = 2.0;
    BoxLabel b;
    b.center_x = 26.5;
    b.center_y = 9.5;
    b.length = 5.0;
    b.width = 2.5;
    b.yaw = 0.7;

    const Heatmap ha = splat_gaussian_heatmap({a}, g);
    const Heatmap hb = splat_gaussian_heatmap({b}, g);
    const Heatmap hab = splat_gaussian_heatmap({a, b}, g);
    for (std::size_t i = 0; i < hab.values.size(); ++i)
        CHECK(hab.values[i] == std::max(ha.values[i], hb.values[i]));
}

TEST_CASE("masked_mse hand computations") {
    BEVFeatureMap t(1, 2, 2), s(1, 2, 2);
    t.values = {1.0f, 2.0f, 3.0f, 4.0f};
    s.values = {0.0f, 0.0f, 0.0f, 0.0f};
    Heatmap mask(2, 2);
    std::fill(mask.values.begin(), mask.values.end(), 1.0f);
    CHECK(masked_mse(t, s, mask) == doctest::Approx(7.5).epsilon(1e-12));

    CHECK(masked_mse(t, t, mask) == 0.0);
    std::fill(mask.values.begin(), mask.values.end(), 0.0f);
    CHECK(masked_mse(t, s, mask) == 0.0);
}

TEST_CASE("masked_mse properties over random inputs") {
    Rng rng(67);
    for (int iter = 0; iter < 100; ++iter) {
        BEVFeatureMap t(2, 4, 4), s(2, 4, 4);
        Heatmap mask(4, 4);
        for (float& v : t.values) v = float(rng.uniform(-5.0, 5.0));
        for (float& v : s.values) v = float(rng.uniform(-5.0, 5.0));
        for (float& v : mask.values) v = float(rng.uniform01());

        const double loss = masked_mse(t, s, mask);
        CHECK(loss >= 0.0);
        CHECK(masked_mse(s, t, mask) == doctest::Approx(loss).epsilon(1e-12));

        BEVFeatureMap t2 = t, s2 = s;
        for (float& v : t2.values) v *= 2.0f;
        for (float& v : s2.values) v *= 2.0f;
        CHECK(masked_mse(t2, s2, mask) == doctest::Approx(4.0 * loss).epsilon(1e-9));
    }
}

TEST_CASE("masked_mse shape mismatch is an error") {
    BEVFeatureMap t(1, 2, 2), s(1, 2, 3);
    Heatmap mask(2, 2);
    CHECK_THROWS_AS(masked_mse(t, s, mask), std::invalid_argument);
    BEVFeatureMap s2(1, 2, 2);
    Heatmap bad_mask(3, 2);
    CHECK_THROWS_AS(masked_mse(t, s2, bad_mask), std::invalid_argument);
}

TEST_CASE("total_loss weighting") {
    CHECK(total_loss(0.0, 0.0, {2.0, 5.0}) == 0.0);
    CHECK(total_loss(1.0, 1.0, {}) == 2.0); // defaults alpha = beta = 1
    CHECK(total_loss(2.0, 3.0, {0.5, 2.0}) == 7.0);
    CHECK_THROWS_AS(total_loss(std::nan(""), 0.0, {}), std::invalid_argument);
}
