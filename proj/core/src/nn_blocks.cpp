#include "rdk/nn/blocks.hpp"

#include <stdexcept>

namespace rdk::nn {

AlignmentParams make_alignment_params(Rng& rng, std::size_t in_c, std::size_t mid_c,
                                      std::size_t expand_c, std::size_t out_c) {
    AlignmentParams p;
    p.stem = make_conv2d(rng, mid_c, in_c, 1);
    p.stem_bn = make_norm(rng, mid_c);
    p.block_a = make_conv2d(rng, expand_c, mid_c, 1);
    p.block_ln = make_norm(rng, expand_c);
    p.block_b = make_conv2d(rng, expand_c, expand_c, 1);
    p.block_c = make_conv2d(rng, mid_c, expand_c, 1);
    p.proj = make_conv2d(rng, out_c, mid_c, 1);
    p.proj_bn = make_norm(rng, out_c);
    return p;
}

TensorCHW alignment_block_forward(const TensorCHW& f, const AlignmentParams& p) {
    require_shape(f, p.stem.in_channels, "alignment_block_forward");
    TensorCHW x = relu(batch_norm_inference(conv2d(f, p.stem), p.stem_bn));

    TensorCHW y = conv2d(x, p.block_a);
    y = layer_norm(y, p.block_ln);
    y = conv2d(y, p.block_b);
    y = gelu(y);
    y = conv2d(y, p.block_c);
    x = add(x, y); // residual around the ConvNeXt-style block

    return relu(batch_norm_inference(conv2d(x, p.proj), p.proj_bn));
}

CbamParams make_cbam_params(Rng& rng, std::size_t channels, std::size_t reduction) {
    if (reduction < 1 || channels % reduction != 0)
        throw std::invalid_argument("make_cbam_params: channels must be divisible by reduction");
    CbamParams p;
    p.channels = channels;
    p.reduction = reduction;
    p.mlp_reduce = make_conv2d(rng, channels / reduction, channels, 1);
    p.mlp_expand = make_conv2d(rng, channels, channels / reduction, 1);
    p.spatial = make_conv2d(rng, 1, 2, 7, 1, 3);
    return p;
}

TensorCHW cbam_forward(const TensorCHW& f, const CbamParams& p) {
    if (p.reduction < 1 || p.channels % p.reduction != 0)
        throw std::invalid_argument("cbam_forward: channels must be divisible by reduction");
    require_shape(f, p.channels, "cbam_forward");

    // Channel gate: shared MLP over spatially pooled descriptors.
    const TensorCHW avg = conv2d(conv2d(global_avg_pool(f), p.mlp_reduce), p.mlp_expand);
    const TensorCHW mx = conv2d(conv2d(global_max_pool(f), p.mlp_reduce), p.mlp_expand);
    const TensorCHW channel_gate = sigmoid(add(avg, mx));
    TensorCHW x = scale_channels(f, channel_gate);

    // Spatial gate: 7x7 conv over channel mean/max planes.
    const TensorCHW pooled = concat_channels({channel_avg_pool(x), channel_max_pool(x)});
    const TensorCHW spatial_gate = sigmoid(conv2d(pooled, p.spatial));
    return scale_spatial(x, spatial_gate);
}

AggregateParams make_aggregate_params(Rng& rng, std::size_t teacher_c, std::size_t aligned_c,
                                      std::size_t fused_c) {
    AggregateParams p;
    for (auto& a : p.align)
        a = make_alignment_params(rng, teacher_c, teacher_c / 3, teacher_c, aligned_c);
    p.cbam = make_cbam_params(rng, 3 * aligned_c);
    p.fuse = make_conv2d(rng, fused_c, 3 * aligned_c, 1);
    return p;
}

TensorCHW aggregate(const std::array<TensorCHW, 3>& teachers, const AggregateParams& p) {
    for (const TensorCHW& t : teachers)
        if (t.h != teachers[0].h || t.w != teachers[0].w)
            throw std::invalid_argument("aggregate: teacher spatial dims differ");
    std::vector<TensorCHW> aligned;
    aligned.reserve(3);
    for (std::size_t i = 0; i < 3; ++i)
        aligned.push_back(alignment_block_forward(teachers[i], p.align[i]));
    return conv2d(cbam_forward(concat_channels(aligned), p.cbam), p.fuse);
}

namespace {

DensifyPassParams make_pass(Rng& rng, std::size_t width, std::size_t n_stages) {
    DensifyPassParams p;
    for (std::size_t s = 0; s < n_stages; ++s) {
        p.down.push_back(make_conv2d(rng, width, width, 3, 2, 1));
        p.down_bn.push_back(make_norm(rng, width));
        p.res_a.push_back(make_conv2d(rng, 2 * width, width, 1));
        p.res_b.push_back(make_conv2d(rng, width, 2 * width, 1));
        p.up.push_back(make_conv2d(rng, width, width, 2, 2, 0));
        p.up_bn.push_back(make_norm(rng, width));
    }
    return p;
}

TensorCHW run_pass(TensorCHW x, const DensifyPassParams& p) {
    for (std::size_t s = 0; s < p.down.size(); ++s) {
        x = relu(batch_norm_inference(conv2d(x, p.down[s]), p.down_bn[s]));
        TensorCHW y = conv2d(gelu(conv2d(x, p.res_a[s])), p.res_b[s]);
        x = add(x, y);
    }
    for (std::size_t s = 0; s < p.up.size(); ++s)
        x = relu(batch_norm_inference(conv_transpose2d(x, p.up[s]), p.up_bn[s]));
    return x;
}

} // namespace

DensifyParams make_densify_params(Rng& rng, std::size_t in_c, std::size_t width,
                                  std::size_t out_c, std::size_t n_stages) {
    DensifyParams p;
    p.in_channels = in_c;
    p.width = width;
    p.out_channels = out_c;
    p.n_stages = n_stages;
    p.stem = make_conv2d(rng, width, in_c, 1);
    p.stem_bn = make_norm(rng, width);
    p.pass1 = make_pass(rng, width, n_stages);
    p.pass2 = make_pass(rng, width, n_stages);
    p.fuse_dense = make_conv2d(rng, out_c, width, 1);
    p.fuse_sparse = make_conv2d(rng, out_c, in_c, 1);
    p.head_a = make_conv2d(rng, out_c, out_c, 3, 1, 1);
    p.head_bn = make_norm(rng, out_c);
    p.head_b = make_conv2d(rng, out_c, out_c, 1);
    return p;
}

TensorCHW densify_forward(const TensorCHW& f_sparse, const DensifyParams& p) {
    require_shape(f_sparse, p.in_channels, "densify_forward");
    const std::size_t factor = std::size_t(1) << p.n_stages;
    if (f_sparse.h % factor != 0 || f_sparse.w % factor != 0)
        throw std::invalid_argument(
            "densify_forward: spatial dims must be divisible by the downsampling factor " +
            std::to_string(factor));

    TensorCHW x = relu(batch_norm_inference(conv2d(f_sparse, p.stem), p.stem_bn));
    x = run_pass(std::move(x), p.pass1);
    x = run_pass(std::move(x), p.pass2);

    // Residual fusion with the original sparse input, separate fusion
    // layers on each path.
    TensorCHW fused = add(conv2d(x, p.fuse_dense), conv2d(f_sparse, p.fuse_sparse));
    fused = relu(batch_norm_inference(conv2d(fused, p.head_a), p.head_bn));
    return conv2d(fused, p.head_b);
}

namespace {

void zero(Conv2dParams& p) {
    std::fill(p.weight.begin(), p.weight.end(), 0.0f);
    std::fill(p.bias.begin(), p.bias.end(), 0.0f);
}
void zero(NormParams& p) {
    std::fill(p.gamma.begin(), p.gamma.end(), 0.0f);
    std::fill(p.beta.begin(), p.beta.end(), 0.0f);
    std::fill(p.mean.begin(), p.mean.end(), 0.0f);
    std::fill(p.var.begin(), p.var.end(), 0.0f);
}

} // namespace

void zero_params(AlignmentParams& p) {
    zero(p.stem);
    zero(p.stem_bn);
    zero(p.block_a);
    zero(p.block_b);
    zero(p.block_c);
    zero(p.block_ln);
    zero(p.proj);
    zero(p.proj_bn);
}

void zero_params(CbamParams& p) {
    zero(p.mlp_reduce);
    zero(p.mlp_expand);
    zero(p.spatial);
}

void zero_params(AggregateParams& p) {
    for (auto& a : p.align) zero_params(a);
    zero_params(p.cbam);
    zero(p.fuse);
}

void zero_params(DensifyParams& p) {
    zero(p.stem);
    zero(p.stem_bn);
    for (auto* pass : {&p.pass1, &p.pass2}) {
        for (auto& c : pass->down) zero(c);
        for (auto& n : pass->down_bn) zero(n);
        for (auto& c : pass->res_a) zero(c);
        for (auto& c : pass->res_b) zero(c);
        for (auto& c : pass->up) zero(c);
        for (auto& n : pass->up_bn) zero(n);
    }
    zero(p.fuse_dense);
    zero(p.fuse_sparse);
    zero(p.head_a);
    zero(p.head_bn);
    zero(p.head_b);
}

namespace {

void pack_alignment(ParamStore& s, const std::string& pre, const AlignmentParams& p) {
    pack_conv(s, pre + ".stem", p.stem);
    pack_norm(s, pre + ".stem_bn", p.stem_bn);
    pack_conv(s, pre + ".block_a", p.block_a);
    pack_norm(s, pre + ".block_ln", p.block_ln);
    pack_conv(s, pre + ".block_b", p.block_b);
    pack_conv(s, pre + ".block_c", p.block_c);
    pack_conv(s, pre + ".proj", p.proj);
    pack_norm(s, pre + ".proj_bn", p.proj_bn);
}

AlignmentParams unpack_alignment(const ParamStore& s, const std::string& pre) {
    AlignmentParams p;
    p.stem = unpack_conv(s, pre + ".stem");
    p.stem_bn = unpack_norm(s, pre + ".stem_bn");
    p.block_a = unpack_conv(s, pre + ".block_a");
    p.block_ln = unpack_norm(s, pre + ".block_ln");
    p.block_b = unpack_conv(s, pre + ".block_b");
    p.block_c = unpack_conv(s, pre + ".block_c");
    p.proj = unpack_conv(s, pre + ".proj");
    p.proj_bn = unpack_norm(s, pre + ".proj_bn");
    return p;
}

void pack_pass(ParamStore& s, const std::string& pre, const DensifyPassParams& p) {
    for (std::size_t i = 0; i < p.down.size(); ++i) {
        const std::string st = pre + ".stage" + std::to_string(i);
        pack_conv(s, st + ".down", p.down[i]);
        pack_norm(s, st + ".down_bn", p.down_bn[i]);
        pack_conv(s, st + ".res_a", p.res_a[i]);
        pack_conv(s, st + ".res_b", p.res_b[i]);
        pack_conv(s, st + ".up", p.up[i]);
        pack_norm(s, st + ".up_bn", p.up_bn[i]);
    }
}

DensifyPassParams unpack_pass(const ParamStore& s, const std::string& pre, std::size_t n) {
    DensifyPassParams p;
    for (std::size_t i = 0; i < n; ++i) {
        const std::string st = pre + ".stage" + std::to_string(i);
        p.down.push_back(unpack_conv(s, st + ".down"));
        p.down_bn.push_back(unpack_norm(s, st + ".down_bn"));
        p.res_a.push_back(unpack_conv(s, st + ".res_a"));
        p.res_b.push_back(unpack_conv(s, st + ".res_b"));
        p.up.push_back(unpack_conv(s, st + ".up"));
        p.up_bn.push_back(unpack_norm(s, st + ".up_bn"));
    }
    return p;
}

} // namespace

ParamStore pack_aggregate(const AggregateParams& p) {
    ParamStore s;
    for (std::size_t i = 0; i < 3; ++i)
        pack_alignment(s, "align" + std::to_string(i), p.align[i]);
    pack_conv(s, "cbam.mlp_reduce", p.cbam.mlp_reduce);
    pack_conv(s, "cbam.mlp_expand", p.cbam.mlp_expand);
    pack_conv(s, "cbam.spatial", p.cbam.spatial);
    pack_conv(s, "fuse", p.fuse);
    return s;
}

AggregateParams unpack_aggregate(const ParamStore& s) {
    AggregateParams p;
    for (std::size_t i = 0; i < 3; ++i)
        p.align[i] = unpack_alignment(s, "align" + std::to_string(i));
    p.cbam.mlp_reduce = unpack_conv(s, "cbam.mlp_reduce");
    p.cbam.mlp_expand = unpack_conv(s, "cbam.mlp_expand");
    p.cbam.spatial = unpack_conv(s, "cbam.spatial");
    p.cbam.channels = p.cbam.mlp_reduce.in_channels;
    p.cbam.reduction = p.cbam.channels / p.cbam.mlp_reduce.out_channels;
    p.fuse = unpack_conv(s, "fuse");
    return p;
}

ParamStore pack_densify(const DensifyParams& p) {
    ParamStore s;
    s["meta"] = NamedTensor{{4u},
                            {float(p.in_channels), float(p.width), float(p.out_channels),
                             float(p.n_stages)}};
    pack_conv(s, "stem", p.stem);
    pack_norm(s, "stem_bn", p.stem_bn);
    pack_pass(s, "pass1", p.pass1);
    pack_pass(s, "pass2", p.pass2);
    pack_conv(s, "fuse_dense", p.fuse_dense);
    pack_conv(s, "fuse_sparse", p.fuse_sparse);
    pack_conv(s, "head_a", p.head_a);
    pack_norm(s, "head_bn", p.head_bn);
    pack_conv(s, "head_b", p.head_b);
    return s;
}

DensifyParams unpack_densify(const ParamStore& s) {
    DensifyParams p;
    const auto& meta = s.at("meta").data;
    p.in_channels = std::size_t(meta.at(0));
    p.width = std::size_t(meta.at(1));
    p.out_channels = std::size_t(meta.at(2));
    p.n_stages = std::size_t(meta.at(3));
    p.stem = unpack_conv(s, "stem");
    p.stem_bn = unpack_norm(s, "stem_bn");
    p.pass1 = unpack_pass(s, "pass1", p.n_stages);
    p.pass2 = unpack_pass(s, "pass2", p.n_stages);
    p.fuse_dense = unpack_conv(s, "fuse_dense");
    p.fuse_sparse = unpack_conv(s, "fuse_sparse");
    p.head_a = unpack_conv(s, "head_a");
    p.head_bn = unpack_norm(s, "head_bn");
    p.head_b = unpack_conv(s, "head_b");
    return p;
}

} // namespace rdk::nn
