#include "rdk/nn/ops.hpp"

#include <algorithm>
#include <cmath>

#include "rdk/parallel.hpp"

namespace rdk::nn {

void Conv2dParams::validate() const {
    if (out_channels < 1 || in_channels < 1 || kh < 1 || kw < 1 || stride < 1)
        throw std::invalid_argument("Conv2dParams: degenerate shape");
    if (weight.size() != out_channels * in_channels * kh * kw)
        throw std::invalid_argument("Conv2dParams: weight size mismatch");
    if (bias.size() != out_channels)
        throw std::invalid_argument("Conv2dParams: bias size mismatch");
}

TensorCHW conv2d(const TensorCHW& input, const Conv2dParams& p) {
    p.validate();
    if (input.c != p.in_channels)
        throw std::invalid_argument("conv2d: input channel mismatch");
    if (input.h + 2 * p.padding < p.kh || input.w + 2 * p.padding < p.kw)
        throw std::invalid_argument("conv2d: kernel larger than padded input");

    const std::size_t oh = (input.h + 2 * p.padding - p.kh) / p.stride + 1;
    const std::size_t ow = (input.w + 2 * p.padding - p.kw) / p.stride + 1;
    TensorCHW out(p.out_channels, oh, ow);

    parallel_for(p.out_channels * oh, [&](std::size_t begin, std::size_t end) {
        for (std::size_t job = begin; job < end; ++job) {
            const std::size_t o = job / oh;
            const std::size_t y = job % oh;
            for (std::size_t x = 0; x < ow; ++x) {
                double acc = p.bias[o];
                for (std::size_t i = 0; i < p.in_channels; ++i)
                    for (std::size_t ky = 0; ky < p.kh; ++ky) {
                        const long iy = long(y * p.stride + ky) - long(p.padding);
                        if (iy < 0 || iy >= long(input.h)) continue;
                        for (std::size_t kx = 0; kx < p.kw; ++kx) {
                            const long ix = long(x * p.stride + kx) - long(p.padding);
                            if (ix < 0 || ix >= long(input.w)) continue;
                            acc += double(input.at(i, std::size_t(iy), std::size_t(ix))) *
                                   double(p.wt(o, i, ky, kx));
                        }
                    }
                out.at(o, y, x) = float(acc);
            }
        }
    });
    return out;
}

TensorCHW conv_transpose2d(const TensorCHW& input, const Conv2dParams& p) {
    p.validate();
    if (input.c != p.in_channels)
        throw std::invalid_argument("conv_transpose2d: input channel mismatch");
    const long oh_l = long(input.h - 1) * long(p.stride) - 2 * long(p.padding) + long(p.kh);
    const long ow_l = long(input.w - 1) * long(p.stride) - 2 * long(p.padding) + long(p.kw);
    if (oh_l < 1 || ow_l < 1)
        throw std::invalid_argument("conv_transpose2d: non-positive output size");
    const std::size_t oh = std::size_t(oh_l), ow = std::size_t(ow_l);
    TensorCHW out(p.out_channels, oh, ow);

    // Gather form: out[o,y,x] = bias + sum over (i,ky,kx) with
    // y + pad - ky = stride * iy for an integral in-bounds iy.
    parallel_for(p.out_channels * oh, [&](std::size_t begin, std::size_t end) {
        for (std::size_t job = begin; job < end; ++job) {
            const std::size_t o = job / oh;
            const std::size_t y = job % oh;
            for (std::size_t x = 0; x < ow; ++x) {
                double acc = p.bias[o];
                for (std::size_t ky = 0; ky < p.kh; ++ky) {
                    const long ny = long(y) + long(p.padding) - long(ky);
                    if (ny < 0 || ny % long(p.stride) != 0) continue;
                    const long iy = ny / long(p.stride);
                    if (iy >= long(input.h)) continue;
                    for (std::size_t kx = 0; kx < p.kw; ++kx) {
                        const long nx = long(x) + long(p.padding) - long(kx);
                        if (nx < 0 || nx % long(p.stride) != 0) continue;
                        const long ix = nx / long(p.stride);
                        if (ix >= long(input.w)) continue;
                        for (std::size_t i = 0; i < p.in_channels; ++i)
                            acc += double(input.at(i, std::size_t(iy), std::size_t(ix))) *
                                   double(p.wt(o, i, ky, kx));
                    }
                }
                out.at(o, y, x) = float(acc);
            }
        }
    });
    return out;
}

TensorCHW batch_norm_inference(const TensorCHW& input, const NormParams& p) {
    if (p.gamma.size() != input.c || p.beta.size() != input.c || p.mean.size() != input.c ||
        p.var.size() != input.c)
        throw std::invalid_argument("batch_norm_inference: statistics size mismatch");
    TensorCHW out(input.c, input.h, input.w);
    const std::size_t plane = input.h * input.w;
    for (std::size_t c = 0; c < input.c; ++c) {
        const double inv = 1.0 / std::sqrt(double(p.var[c]) + p.eps);
        for (std::size_t i = 0; i < plane; ++i)
            out.v[c * plane + i] = float((double(input.v[c * plane + i]) - p.mean[c]) * inv *
                                             p.gamma[c] +
                                         p.beta[c]);
    }
    return out;
}

TensorCHW layer_norm(const TensorCHW& input, const NormParams& p) {
    if (p.gamma.size() != input.c || p.beta.size() != input.c)
        throw std::invalid_argument("layer_norm: affine size mismatch");
    TensorCHW out(input.c, input.h, input.w);
    const std::size_t plane = input.h * input.w;
    for (std::size_t i = 0; i < plane; ++i) {
        double mean = 0.0;
        for (std::size_t c = 0; c < input.c; ++c) mean += input.v[c * plane + i];
        mean /= double(input.c);
        double var = 0.0;
        for (std::size_t c = 0; c < input.c; ++c) {
            const double d = input.v[c * plane + i] - mean;
            var += d * d;
        }
        var /= double(input.c);
        const double inv = 1.0 / std::sqrt(var + p.eps);
        for (std::size_t c = 0; c < input.c; ++c)
            out.v[c * plane + i] =
                float((input.v[c * plane + i] - mean) * inv * p.gamma[c] + p.beta[c]);
    }
    return out;
}

TensorCHW relu(const TensorCHW& input) {
    TensorCHW out = input;
    for (float& x : out.v) x = x > 0.0f ? x : 0.0f;
    return out;
}

TensorCHW gelu(const TensorCHW& input) {
    TensorCHW out = input;
    for (float& x : out.v)
        x = float(0.5 * double(x) * (1.0 + std::erf(double(x) / std::sqrt(2.0))));
    return out;
}

TensorCHW sigmoid(const TensorCHW& input) {
    TensorCHW out = input;
    for (float& x : out.v) x = float(1.0 / (1.0 + std::exp(-double(x))));
    return out;
}

TensorCHW global_avg_pool(const TensorCHW& input) {
    TensorCHW out(input.c, 1, 1);
    const std::size_t plane = input.h * input.w;
    for (std::size_t c = 0; c < input.c; ++c) {
        double acc = 0.0;
        for (std::size_t i = 0; i < plane; ++i) acc += input.v[c * plane + i];
        out.v[c] = float(acc / double(plane));
    }
    return out;
}

TensorCHW global_max_pool(const TensorCHW& input) {
    TensorCHW out(input.c, 1, 1);
    const std::size_t plane = input.h * input.w;
    for (std::size_t c = 0; c < input.c; ++c) {
        float m = input.v[c * plane];
        for (std::size_t i = 1; i < plane; ++i) m = std::max(m, input.v[c * plane + i]);
        out.v[c] = m;
    }
    return out;
}

TensorCHW channel_avg_pool(const TensorCHW& input) {
    TensorCHW out(1, input.h, input.w);
    const std::size_t plane = input.h * input.w;
    for (std::size_t i = 0; i < plane; ++i) {
        double acc = 0.0;
        for (std::size_t c = 0; c < input.c; ++c) acc += input.v[c * plane + i];
        out.v[i] = float(acc / double(input.c));
    }
    return out;
}

TensorCHW channel_max_pool(const TensorCHW& input) {
    TensorCHW out(1, input.h, input.w);
    const std::size_t plane = input.h * input.w;
    for (std::size_t i = 0; i < plane; ++i) {
        float m = input.v[i];
        for (std::size_t c = 1; c < input.c; ++c) m = std::max(m, input.v[c * plane + i]);
        out.v[i] = m;
    }
    return out;
}

TensorCHW add(const TensorCHW& a, const TensorCHW& b) {
    if (!a.same_shape(b)) throw std::invalid_argument("add: shape mismatch");
    TensorCHW out = a;
    for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] += b.v[i];
    return out;
}

TensorCHW scale_channels(const TensorCHW& input, const TensorCHW& gate_c11) {
    if (gate_c11.c != input.c || gate_c11.h != 1 || gate_c11.w != 1)
        throw std::invalid_argument("scale_channels: gate must be C x 1 x 1");
    TensorCHW out = input;
    const std::size_t plane = input.h * input.w;
    for (std::size_t c = 0; c < input.c; ++c)
        for (std::size_t i = 0; i < plane; ++i) out.v[c * plane + i] *= gate_c11.v[c];
    return out;
}

TensorCHW scale_spatial(const TensorCHW& input, const TensorCHW& gate_1hw) {
    if (gate_1hw.c != 1 || gate_1hw.h != input.h || gate_1hw.w != input.w)
        throw std::invalid_argument("scale_spatial: gate must be 1 x H x W");
    TensorCHW out = input;
    const std::size_t plane = input.h * input.w;
    for (std::size_t c = 0; c < input.c; ++c)
        for (std::size_t i = 0; i < plane; ++i) out.v[c * plane + i] *= gate_1hw.v[i];
    return out;
}

TensorCHW concat_channels(const std::vector<TensorCHW>& parts) {
    if (parts.empty()) throw std::invalid_argument("concat_channels: no inputs");
    std::size_t total = 0;
    for (const TensorCHW& t : parts) {
        if (t.h != parts[0].h || t.w != parts[0].w)
            throw std::invalid_argument("concat_channels: spatial dims differ");
        total += t.c;
    }
    TensorCHW out(total, parts[0].h, parts[0].w);
    std::size_t offset = 0;
    for (const TensorCHW& t : parts) {
        std::copy(t.v.begin(), t.v.end(), out.v.begin() + long(offset));
        offset += t.v.size();
    }
    return out;
}

} // namespace rdk::nn
