#include "rdk/cloud_io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace rdk {

static_assert(std::endian::native == std::endian::little,
              "file formats assume a little-endian host");

FormatError::FormatError(const std::string& what, std::uint64_t offset)
    : std::runtime_error(what + " (byte offset " + std::to_string(offset) + ")"),
      offset_(offset) {}

namespace {

class Reader {
public:
    Reader(const std::string& path) : path_(path), in_(path, std::ios::binary) {
        if (!in_) throw std::runtime_error("cannot open file: " + path);
    }

    void raw(void* dst, std::size_t n) {
        in_.read(static_cast<char*>(dst), std::streamsize(n));
        if (std::size_t(in_.gcount()) != n)
            throw FormatError(path_ + ": truncated file", offset_ + std::size_t(in_.gcount()));
        offset_ += n;
    }

    template <typename T> T scalar() {
        T v;
        raw(&v, sizeof(T));
        return v;
    }

    void expect_magic(const char (&magic)[5]) {
        char got[4];
        raw(got, 4);
        if (std::memcmp(got, magic, 4) != 0)
            throw FormatError(path_ + ": bad magic, expected \"" + magic + "\"", 0);
    }

    void expect_eof() {
        char c;
        in_.read(&c, 1);
        if (!in_.eof())
            throw FormatError(path_ + ": trailing bytes after payload", offset_);
    }

    std::uint64_t offset() const { return offset_; }
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ifstream in_;
    std::uint64_t offset_ = 0;
};

class Writer {
public:
    Writer(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot write file: " + path);
    }

    void raw(const void* src, std::size_t n) {
        out_.write(static_cast<const char*>(src), std::streamsize(n));
    }
    template <typename T> void scalar(T v) { raw(&v, sizeof(T)); }

    void close_checked(const std::string& path) {
        out_.flush();
        if (!out_) throw std::runtime_error("write failed: " + path);
    }

private:
    std::ofstream out_;
};

constexpr std::uint16_t kFormatVersion = 1;

} // namespace

void write_cloud(const std::string& path, const PointCloud& cloud) {
    Writer w(path);
    w.raw("RPC1", 4);
    w.scalar<std::uint32_t>(std::uint32_t(cloud.points.size()));
    for (const RadarPoint& p : cloud.points) {
        w.scalar(p.x);
        w.scalar(p.y);
        w.scalar(p.z);
        w.scalar(p.power);
    }
    w.close_checked(path);
}

PointCloud read_cloud(const std::string& path) {
    Reader r(path);
    r.expect_magic("RPC1");
    const auto count = r.scalar<std::uint32_t>();
    PointCloud cloud;
    cloud.points.resize(count);
    if (count) r.raw(cloud.points.data(), std::size_t(count) * sizeof(RadarPoint));
    r.expect_eof();
    return cloud;
}

void write_cloud_csv(const std::string& path, const PointCloud& cloud) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "x,y,z,power\n";
    char line[160];
    for (const RadarPoint& p : cloud.points) {
        std::snprintf(line, sizeof(line), "%.9g,%.9g,%.9g,%.9g\n", p.x, p.y, p.z, p.power);
        out << line;
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

PointCloud read_cloud_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("x,y,z,power", 0) != 0)
        throw std::runtime_error(path + ": expected header x,y,z,power");
    PointCloud cloud;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        RadarPoint p;
        char c1, c2, c3;
        std::istringstream ss(line);
        if (!(ss >> p.x >> c1 >> p.y >> c2 >> p.z >> c3 >> p.power) || c1 != ',' ||
            c2 != ',' || c3 != ',')
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed row");
        cloud.points.push_back(p);
    }
    return cloud;
}

CloudStats size_stats(const PointCloud& cloud, const CartesianGridSpec& roi) {
    CloudStats s;
    s.num_points = cloud.points.size();
    s.bytes_on_disk = 8 + 16 * std::uint64_t(s.num_points);
    const double vol = roi.volume_m3();
    s.density = vol > 0.0 ? double(s.num_points) / vol : 0.0;
    return s;
}

void write_tensor(const std::string& path, const RadarTensor4D& tensor) {
    tensor.grid.validate();
    Writer w(path);
    w.raw("4DRT", 4);
    w.scalar(kFormatVersion);
    const PolarGridSpec& g = tensor.grid;
    w.scalar<std::uint32_t>(std::uint32_t(g.n_azimuth));
    w.scalar<std::uint32_t>(std::uint32_t(g.n_range));
    w.scalar<std::uint32_t>(std::uint32_t(g.n_elevation));
    w.scalar<std::uint32_t>(std::uint32_t(g.n_doppler));
    for (double v : {g.azimuth_min, g.azimuth_max, g.elevation_min, g.elevation_max,
                     g.range_start, g.range_step, g.doppler_step})
        w.scalar(v);
    w.raw(tensor.values.data(), tensor.values.size() * sizeof(float));
    w.close_checked(path);
}

RadarTensor4D read_tensor(const std::string& path) {
    Reader r(path);
    r.expect_magic("4DRT");
    const auto version = r.scalar<std::uint16_t>();
    if (version != kFormatVersion)
        throw FormatError(path + ": unsupported version " + std::to_string(version), 4);
    PolarGridSpec g;
    g.n_azimuth = r.scalar<std::uint32_t>();
    g.n_range = r.scalar<std::uint32_t>();
    g.n_elevation = r.scalar<std::uint32_t>();
    g.n_doppler = r.scalar<std::uint32_t>();
    g.azimuth_min = r.scalar<double>();
    g.azimuth_max = r.scalar<double>();
    g.elevation_min = r.scalar<double>();
    g.elevation_max = r.scalar<double>();
    g.range_start = r.scalar<double>();
    g.range_step = r.scalar<double>();
    g.doppler_step = r.scalar<double>();
    g.validate();
    RadarTensor4D tensor(g);
    r.raw(tensor.values.data(), tensor.values.size() * sizeof(float));
    r.expect_eof();
    return tensor;
}

void write_voxels(const std::string& path, const CartesianVoxelVolume& voxels) {
    voxels.grid.validate();
    Writer w(path);
    w.raw("CVOX", 4);
    w.scalar(kFormatVersion);
    const CartesianGridSpec& g = voxels.grid;
    w.scalar<std::uint32_t>(std::uint32_t(g.nx()));
    w.scalar<std::uint32_t>(std::uint32_t(g.ny()));
    w.scalar<std::uint32_t>(std::uint32_t(g.nz()));
    for (double v : {g.x_min, g.x_max, g.y_min, g.y_max, g.z_min, g.z_max, g.voxel_size})
        w.scalar(v);
    w.raw(voxels.values.data(), voxels.values.size() * sizeof(float));
    w.raw(voxels.valid.data(), voxels.valid.size());
    w.close_checked(path);
}

CartesianVoxelVolume read_voxels(const std::string& path) {
    Reader r(path);
    r.expect_magic("CVOX");
    const auto version = r.scalar<std::uint16_t>();
    if (version != kFormatVersion)
        throw FormatError(path + ": unsupported version " + std::to_string(version), 4);
    const auto nx = r.scalar<std::uint32_t>();
    const auto ny = r.scalar<std::uint32_t>();
    const auto nz = r.scalar<std::uint32_t>();
    CartesianVoxelVolume v;
    v.grid.x_min = r.scalar<double>();
    v.grid.x_max = r.scalar<double>();
    v.grid.y_min = r.scalar<double>();
    v.grid.y_max = r.scalar<double>();
    v.grid.z_min = r.scalar<double>();
    v.grid.z_max = r.scalar<double>();
    v.grid.voxel_size = r.scalar<double>();
    v.grid.validate();
    if (v.grid.nx() != nx || v.grid.ny() != ny || v.grid.nz() != nz)
        throw FormatError(path + ": axis counts disagree with grid bounds", 10);
    const std::size_t n = std::size_t(nx) * ny * nz;
    v.values.resize(n);
    v.valid.resize(n);
    r.raw(v.values.data(), n * sizeof(float));
    r.raw(v.valid.data(), n);
    r.expect_eof();
    return v;
}

} // namespace rdk
