#pragma once

#include <array>
#include <cstdint>

#include "rdk/nn/ops.hpp"
#include "rdk/nn/params.hpp"

namespace rdk::nn {

/// Teacher-feature alignment: 1x1 conv C_in -> C_mid with BN + ReLU, a
/// ConvNeXt-style residual block of three 1x1 convs (C_mid -> C_exp ->
/// C_mid) with LayerNorm and GELU between, then a 1x1 conv + BN to C_out
/// with ReLU. Default widths 768 -> 256 (expand 768) -> 128.
struct AlignmentParams {
    Conv2dParams stem;
    NormParams stem_bn;
    Conv2dParams block_a, block_b, block_c; // 1x1 convs of the residual block
    NormParams block_ln;                    // after block_a
    Conv2dParams proj;
    NormParams proj_bn;
};

AlignmentParams make_alignment_params(Rng& rng, std::size_t in_c = 768, std::size_t mid_c = 256,
                                      std::size_t expand_c = 768, std::size_t out_c = 128);
TensorCHW alignment_block_forward(const TensorCHW& f, const AlignmentParams& p);

/// CBAM: channel gate (shared two-layer MLP over global avg/max pooled
/// vectors, reduction ratio 8) then spatial gate (7x7 conv over the
/// channel mean/max pair). Shape preserving.
struct CbamParams {
    std::size_t channels = 0;
    std::size_t reduction = 8;
    Conv2dParams mlp_reduce, mlp_expand; // 1x1 convs acting on C x 1 x 1
    Conv2dParams spatial;                // 7x7, 2 -> 1, padding 3
};

CbamParams make_cbam_params(Rng& rng, std::size_t channels, std::size_t reduction = 8);
TensorCHW cbam_forward(const TensorCHW& f, const CbamParams& p);

/// Multi-teacher fusion: per-teacher alignment (independent parameters),
/// channel concat, CBAM, final 1x1 conv to the fused width.
struct AggregateParams {
    std::array<AlignmentParams, 3> align;
    CbamParams cbam;
    Conv2dParams fuse;
};

AggregateParams make_aggregate_params(Rng& rng, std::size_t teacher_c = 768,
                                      std::size_t aligned_c = 128, std::size_t fused_c = 128);
TensorCHW aggregate(const std::array<TensorCHW, 3>& teachers, const AggregateParams& p);

/// Dual-pass encoder-decoder refinement. Each pass downsamples through
/// n_stages stride-2 stages with ConvNeXt-style residual blocks, then
/// restores H x W with transposed convolutions. The refined feature and
/// the original sparse input go through separate 1x1 fusion convolutions,
/// are summed, and a final conv stack emits the output width.
struct DensifyPassParams {
    std::vector<Conv2dParams> down;      // stride-2 3x3 convs
    std::vector<NormParams> down_bn;
    std::vector<Conv2dParams> res_a, res_b; // per-stage residual block (1x1 expand, 1x1 reduce)
    std::vector<Conv2dParams> up;        // stride-2 transposed convs
    std::vector<NormParams> up_bn;
};

struct DensifyParams {
    std::size_t in_channels = 768;
    std::size_t width = 192;
    std::size_t out_channels = 128;
    std::size_t n_stages = 2;
    Conv2dParams stem;
    NormParams stem_bn;
    DensifyPassParams pass1, pass2;
    Conv2dParams fuse_dense, fuse_sparse; // separate fusion layers
    Conv2dParams head_a, head_b;          // final conv stack
    NormParams head_bn;
};

DensifyParams make_densify_params(Rng& rng, std::size_t in_c = 768, std::size_t width = 192,
                                  std::size_t out_c = 128, std::size_t n_stages = 2);
TensorCHW densify_forward(const TensorCHW& f_sparse, const DensifyParams& p);

/// Zeroes every weight, bias, and normalization statistic.
void zero_params(AlignmentParams& p);
void zero_params(CbamParams& p);
void zero_params(AggregateParams& p);
void zero_params(DensifyParams& p);

ParamStore pack_aggregate(const AggregateParams& p);
AggregateParams unpack_aggregate(const ParamStore& store);
ParamStore pack_densify(const DensifyParams& p);
DensifyParams unpack_densify(const ParamStore& store);

} // namespace rdk::nn
