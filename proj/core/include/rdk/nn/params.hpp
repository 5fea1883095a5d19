#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rdk/nn/ops.hpp"
#include "rdk/rng.hpp"

namespace rdk::nn {

/// Seeded layer factories. Weights are uniform in [-k, k] with
/// k = 1/sqrt(fan_in); normalization statistics are seeded near identity
/// (gamma ~ [0.5, 1.5], var ~ [0.5, 1.5], mean/beta ~ [-0.1, 0.1]).
Conv2dParams make_conv2d(Rng& rng, std::size_t out_c, std::size_t in_c, std::size_t k,
                         std::size_t stride = 1, std::size_t padding = 0);
NormParams make_norm(Rng& rng, std::size_t channels);

/// Named float tensors with shapes; the "NNPB" parameter container.
struct NamedTensor {
    std::vector<std::uint32_t> shape;
    std::vector<float> data;
};
using ParamStore = std::map<std::string, NamedTensor>;

void write_params(const std::string& path, const ParamStore& store);
ParamStore read_params(const std::string& path);

/// Flattens layer parameters into a store under a name prefix, and back.
void pack_conv(ParamStore& store, const std::string& prefix, const Conv2dParams& p);
Conv2dParams unpack_conv(const ParamStore& store, const std::string& prefix);
void pack_norm(ParamStore& store, const std::string& prefix, const NormParams& p);
NormParams unpack_norm(const ParamStore& store, const std::string& prefix);

} // namespace rdk::nn
