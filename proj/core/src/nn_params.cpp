#include "rdk/nn/params.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace rdk::nn {

Conv2dParams make_conv2d(Rng& rng, std::size_t out_c, std::size_t in_c, std::size_t k,
                         std::size_t stride, std::size_t padding) {
    Conv2dParams p;
    p.out_channels = out_c;
    p.in_channels = in_c;
    p.kh = p.kw = k;
    p.stride = stride;
    p.padding = padding;
    const double bound = 1.0 / std::sqrt(double(in_c * k * k));
    p.weight.resize(out_c * in_c * k * k);
    p.bias.resize(out_c);
    for (float& w : p.weight) w = float(rng.uniform(-bound, bound));
    for (float& b : p.bias) b = float(rng.uniform(-bound, bound));
    return p;
}

NormParams make_norm(Rng& rng, std::size_t channels) {
    NormParams p;
    p.gamma.resize(channels);
    p.beta.resize(channels);
    p.mean.resize(channels);
    p.var.resize(channels);
    for (float& g : p.gamma) g = float(rng.uniform(0.5, 1.5));
    for (float& b : p.beta) b = float(rng.uniform(-0.1, 0.1));
    for (float& m : p.mean) m = float(rng.uniform(-0.1, 0.1));
    for (float& v : p.var) v = float(rng.uniform(0.5, 1.5));
    return p;
}

namespace {
constexpr std::uint16_t kVersion = 1;
}

void write_params(const std::string& path, const ParamStore& store) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out.write("NNPB", 4);
    const std::uint16_t version = kVersion;
    out.write(reinterpret_cast<const char*>(&version), 2);
    const auto count = std::uint32_t(store.size());
    out.write(reinterpret_cast<const char*>(&count), 4);
    for (const auto& [name, t] : store) {
        const auto name_len = std::uint16_t(name.size());
        out.write(reinterpret_cast<const char*>(&name_len), 2);
        out.write(name.data(), name_len);
        const auto ndims = std::uint32_t(t.shape.size());
        out.write(reinterpret_cast<const char*>(&ndims), 4);
        out.write(reinterpret_cast<const char*>(t.shape.data()), 4 * ndims);
        out.write(reinterpret_cast<const char*>(t.data.data()),
                  std::streamsize(t.data.size() * sizeof(float)));
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

ParamStore read_params(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    char magic[4];
    in.read(magic, 4);
    if (in.gcount() != 4 || std::memcmp(magic, "NNPB", 4) != 0)
        throw std::runtime_error(path + ": bad magic, expected \"NNPB\"");
    std::uint16_t version = 0;
    in.read(reinterpret_cast<char*>(&version), 2);
    if (version != kVersion)
        throw std::runtime_error(path + ": unsupported version " + std::to_string(version));
    std::uint32_t count = 0;
    in.read(reinterpret_cast<char*>(&count), 4);
    ParamStore store;
    for (std::uint32_t i = 0; i < count; ++i) {
        std::uint16_t name_len = 0;
        in.read(reinterpret_cast<char*>(&name_len), 2);
        std::string name(name_len, '\0');
        in.read(name.data(), name_len);
        std::uint32_t ndims = 0;
        in.read(reinterpret_cast<char*>(&ndims), 4);
        NamedTensor t;
        t.shape.resize(ndims);
        in.read(reinterpret_cast<char*>(t.shape.data()), 4 * ndims);
        std::size_t n = 1;
        for (std::uint32_t d : t.shape) n *= d;
        t.data.resize(n);
        in.read(reinterpret_cast<char*>(t.data.data()), std::streamsize(n * sizeof(float)));
        if (!in) throw std::runtime_error(path + ": truncated tensor \"" + name + "\"");
        store.emplace(std::move(name), std::move(t));
    }
    return store;
}

void pack_conv(ParamStore& store, const std::string& prefix, const Conv2dParams& p) {
    store[prefix + ".weight"] = {{std::uint32_t(p.out_channels), std::uint32_t(p.in_channels),
                                  std::uint32_t(p.kh), std::uint32_t(p.kw)},
                                 p.weight};
    store[prefix + ".bias"] = {{std::uint32_t(p.out_channels)}, p.bias};
    store[prefix + ".meta"] = {{2u}, {float(p.stride), float(p.padding)}};
}

Conv2dParams unpack_conv(const ParamStore& store, const std::string& prefix) {
    const NamedTensor& w = store.at(prefix + ".weight");
    const NamedTensor& b = store.at(prefix + ".bias");
    const NamedTensor& m = store.at(prefix + ".meta");
    if (w.shape.size() != 4)
        throw std::runtime_error("unpack_conv: " + prefix + ".weight must be rank 4");
    Conv2dParams p;
    p.out_channels = w.shape[0];
    p.in_channels = w.shape[1];
    p.kh = w.shape[2];
    p.kw = w.shape[3];
    p.stride = std::size_t(m.data.at(0));
    p.padding = std::size_t(m.data.at(1));
    p.weight = w.data;
    p.bias = b.data;
    p.validate();
    return p;
}

void pack_norm(ParamStore& store, const std::string& prefix, const NormParams& p) {
    store[prefix + ".gamma"] = {{std::uint32_t(p.gamma.size())}, p.gamma};
    store[prefix + ".beta"] = {{std::uint32_t(p.beta.size())}, p.beta};
    store[prefix + ".mean"] = {{std::uint32_t(p.mean.size())}, p.mean};
    store[prefix + ".var"] = {{std::uint32_t(p.var.size())}, p.var};
}

NormParams unpack_norm(const ParamStore& store, const std::string& prefix) {
    NormParams p;
    p.gamma = store.at(prefix + ".gamma").data;
    p.beta = store.at(prefix + ".beta").data;
    p.mean = store.at(prefix + ".mean").data;
    p.var = store.at(prefix + ".var").data;
    return p;
}

} // namespace rdk::nn
