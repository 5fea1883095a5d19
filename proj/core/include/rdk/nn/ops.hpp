#pragma once

#include "rdk/nn/tensor.hpp"

namespace rdk::nn {

/// Weights for a 2D convolution; weight is (out, in, kh, kw) row-major.
struct Conv2dParams {
    std::size_t out_channels = 0, in_channels = 0, kh = 1, kw = 1;
    std::size_t stride = 1, padding = 0;
    std::vector<float> weight;
    std::vector<float> bias; // length out_channels

    float wt(std::size_t o, std::size_t i, std::size_t y, std::size_t x) const {
        return weight[((o * in_channels + i) * kh + y) * kw + x];
    }
    void validate() const;
};

/// Cross-correlation with zero padding.
TensorCHW conv2d(const TensorCHW& input, const Conv2dParams& p);

/// Transposed convolution; output spatial size = (in-1)*stride - 2*padding + k.
TensorCHW conv_transpose2d(const TensorCHW& input, const Conv2dParams& p);

/// Per-channel affine normalization statistics, inference mode.
struct NormParams {
    std::vector<float> gamma, beta, mean, var;
    double eps = 1e-5;
};

/// (x - mean[c]) / sqrt(var[c] + eps) * gamma[c] + beta[c], stored stats.
TensorCHW batch_norm_inference(const TensorCHW& input, const NormParams& p);

/// Normalizes across channels at each spatial position (mean/var over C),
/// then applies the per-channel affine. p.mean/p.var are unused.
TensorCHW layer_norm(const TensorCHW& input, const NormParams& p);

TensorCHW relu(const TensorCHW& input);
TensorCHW gelu(const TensorCHW& input); // exact erf form
TensorCHW sigmoid(const TensorCHW& input);

/// Spatial pooling to C x 1 x 1.
TensorCHW global_avg_pool(const TensorCHW& input);
TensorCHW global_max_pool(const TensorCHW& input);

/// Channel pooling to 1 x H x W.
TensorCHW channel_avg_pool(const TensorCHW& input);
TensorCHW channel_max_pool(const TensorCHW& input);

TensorCHW add(const TensorCHW& a, const TensorCHW& b);
/// Element-wise product with broadcasting from C x 1 x 1 or 1 x H x W gates.
TensorCHW scale_channels(const TensorCHW& input, const TensorCHW& gate_c11);
TensorCHW scale_spatial(const TensorCHW& input, const TensorCHW& gate_1hw);
TensorCHW concat_channels(const std::vector<TensorCHW>& parts);

} // namespace rdk::nn
