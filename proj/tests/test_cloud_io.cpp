#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "rdk/cloud_io.hpp"
#include "rdk/rng.hpp"

using namespace rdk;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(std::string p) : path(std::move(p)) {}
    ~TempFile() { std::remove(path.c_str()); }
};

PointCloud random_cloud(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    PointCloud c;
    for (std::size_t i = 0; i < n; ++i)
        c.points.push_back({float(rng.uniform(-50.0, 50.0)), float(rng.uniform(-50.0, 50.0)),
                            float(rng.uniform(-5.0, 5.0)), float(rng.uniform(0.0, 100.0))});
    return c;
}

} // namespace

TEST_CASE("empty cloud writes an 8-byte file and reads back empty") {
    TempFile f("t_empty.rpc1");
    write_cloud(f.path, {});
    CHECK(std::filesystem::file_size(f.path) == 8);
    CHECK(read_cloud(f.path).empty());
}

TEST_CASE("byte accounting: 8 + 16N") {
    TempFile f("t_sized.rpc1");
    const PointCloud c = random_cloud(1000, 1);
    write_cloud(f.path, c);
    CHECK(std::filesystem::file_size(f.path) == 8 + 16 * 1000);

    const CloudStats s = size_stats(c, CartesianGridSpec{});
    CHECK(s.num_points == 1000);
    CHECK(s.bytes_on_disk == 16008);
}

TEST_CASE("binary round trip is bit exact") {
    TempFile f("t_roundtrip.rpc1");
    for (std::uint64_t seed : {2, 3, 4}) {
        const PointCloud c = random_cloud(257, seed);
        write_cloud(f.path, c);
        const PointCloud back = read_cloud(f.path);
        REQUIRE(back.size() == c.size());
        for (std::size_t i = 0; i < c.size(); ++i) CHECK(back.points[i] == c.points[i]);
    }
}

TEST_CASE("format errors carry a byte offset") {
    TempFile f("t_bad.rpc1");
    {
        std::ofstream out(f.path, std::ios::binary);
        out.write("JUNK\x05\x00\x00\x00", 8);
    }
    CHECK_THROWS_AS(read_cloud(f.path), FormatError);

    {
        std::ofstream out(f.path, std::ios::binary);
        const std::uint32_t count = 5;
        out.write("RPC1", 4);
        out.write(reinterpret_cast<const char*>(&count), 4);
        const float one_point[4] = {1, 2, 3, 4};
        out.write(reinterpret_cast<const char*>(one_point), 16); // 4 points short
    }
    try {
        read_cloud(f.path);
        FAIL("expected FormatError");
    } catch (const FormatError& e) {
        CHECK(e.offset() == 24); // where the data ran out
    }
}

TEST_CASE("csv round trip within 1e-6") {
    TempFile f("t_cloud.csv");
    const PointCloud c = random_cloud(100, 7);
    write_cloud_csv(f.path, c);
    const PointCloud back = read_cloud_csv(f.path);
    REQUIRE(back.size() == c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(back.points[i].x == doctest::Approx(c.points[i].x).epsilon(1e-6));
        CHECK(back.points[i].power == doctest::Approx(c.points[i].power).epsilon(1e-6));
    }
}

TEST_CASE("size_stats density over the RoI") {
    CartesianGridSpec roi; // default: 72 x 32 x 9.6 m
    CHECK(size_stats({}, roi).density == 0.0);
    const PointCloud c = random_cloud(100, 9);
    CHECK(size_stats(c, roi).density ==
          doctest::Approx(100.0 / (72.0 * 32.0 * 9.6)).epsilon(1e-12));
}

TEST_CASE("4DRT container round trip") {
    TempFile f("t_frame.4drt");
    PolarGridSpec g;
    g.n_azimuth = 5;
    g.n_range = 7;
    g.n_elevation = 3;
    g.n_doppler = 2;
    g.azimuth_min = -1.1;
    g.azimuth_max = 1.2;
    g.elevation_min = -0.4;
    g.elevation_max = 0.3;
    g.range_start = 0.25;
    g.range_step = 0.5;
    g.doppler_step = 0.8;

    RadarTensor4D t(g);
    Rng rng(13);
    for (float& v : t.values) v = float(rng.uniform(0.0, 10.0));
    write_tensor(f.path, t);
    const RadarTensor4D back = read_tensor(f.path);
    CHECK(back.grid.n_range == 7);
    CHECK(back.grid.range_start == 0.25);
    CHECK(back.values == t.values);
}

TEST_CASE("CVOX container round trip") {
    TempFile f("t_vox.cvox");
    CartesianVoxelVolume v;
    v.grid = CartesianGridSpec{0.0, 4.0, -2.0, 2.0, 0.0, 2.0, 1.0};
    v.values.assign(v.grid.voxel_count(), 0.0f);
    v.valid.assign(v.grid.voxel_count(), 0);
    Rng rng(15);
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        v.values[i] = float(rng.uniform(0.0, 5.0));
        v.valid[i] = rng.uniform01() < 0.5 ? 1 : 0;
    }
    write_voxels(f.path, v);
    const CartesianVoxelVolume back = read_voxels(f.path);
    CHECK(back.values == v.values);
    CHECK(back.valid == v.valid);
}
