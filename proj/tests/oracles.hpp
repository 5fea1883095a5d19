// Brute-force reference implementations, kept independent of the
// library's optimized paths.
#pragma once

#include <algorithm>
#include <vector>

#include "rdk/cfar.hpp"
#include "rdk/nn/ops.hpp"
#include "rdk/percentile.hpp"
#include "rdk/tensor.hpp"

namespace oracle {

// Full-sort nearest-rank percentile.
inline float percentile_sorted(std::vector<float> values, double r) {
    std::sort(values.begin(), values.end());
    return values[rdk::nearest_rank_index(r, values.size())];
}

// Volume cell indices whose power meets the percentile threshold.
inline std::vector<std::size_t> percentile_kept_cells(const std::vector<float>& values,
                                                      double r) {
    const float thr = percentile_sorted(values, r);
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] >= thr) kept.push_back(i);
    return kept;
}

// Per-cell CA-CFAR with explicit training-cell loops.
inline std::vector<rdk::CfarDetection> cfar_naive(const rdk::PowerVolume3D& v,
                                                  const rdk::CfarConfig& cfg) {
    const auto& g = v.grid;
    const long wa = cfg.axis_azimuth ? long(cfg.guard_azimuth + cfg.train_azimuth) : 0;
    const long wr = cfg.axis_range ? long(cfg.guard_range + cfg.train_range) : 0;
    const long we = cfg.axis_elevation ? long(cfg.guard_elevation + cfg.train_elevation) : 0;
    const long ga = cfg.axis_azimuth ? long(cfg.guard_azimuth) : 0;
    const long gr = cfg.axis_range ? long(cfg.guard_range) : 0;
    const long ge = cfg.axis_elevation ? long(cfg.guard_elevation) : 0;

    std::vector<rdk::CfarDetection> out;
    for (long a = 0; a < long(g.n_azimuth); ++a)
        for (long r = 0; r < long(g.n_range); ++r)
            for (long e = 0; e < long(g.n_elevation); ++e) {
                if (a - wa < 0 || a + wa >= long(g.n_azimuth) || r - wr < 0 ||
                    r + wr >= long(g.n_range) || e - we < 0 || e + we >= long(g.n_elevation))
                    continue;
                double sum = 0.0;
                std::size_t count = 0;
                for (long da = -wa; da <= wa; ++da)
                    for (long dr = -wr; dr <= wr; ++dr)
                        for (long de = -we; de <= we; ++de) {
                            if (std::abs(da) <= ga && std::abs(dr) <= gr && std::abs(de) <= ge)
                                continue; // guard box, cell under test included
                            sum += v.at(std::size_t(a + da), std::size_t(r + dr),
                                        std::size_t(e + de));
                            ++count;
                        }
                const float pw = v.at(std::size_t(a), std::size_t(r), std::size_t(e));
                if (double(pw) > cfg.scale_alpha * (sum / double(count)))
                    out.push_back({std::size_t(a), std::size_t(r), std::size_t(e), pw});
            }
    return out;
}

inline bool same_detections(const std::vector<rdk::CfarDetection>& a,
                            const std::vector<rdk::CfarDetection>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].ia != b[i].ia || a[i].ir != b[i].ir || a[i].ie != b[i].ie) return false;
    return true;
}

// Five-nested-loop convolution reference.
inline rdk::nn::TensorCHW conv2d_naive(const rdk::nn::TensorCHW& in,
                                       const rdk::nn::Conv2dParams& p) {
    const std::size_t oh = (in.h + 2 * p.padding - p.kh) / p.stride + 1;
    const std::size_t ow = (in.w + 2 * p.padding - p.kw) / p.stride + 1;
    rdk::nn::TensorCHW out(p.out_channels, oh, ow);
    for (std::size_t o = 0; o < p.out_channels; ++o)
        for (std::size_t y = 0; y < oh; ++y)
            for (std::size_t x = 0; x < ow; ++x) {
                double acc = p.bias[o];
                for (std::size_t i = 0; i < p.in_channels; ++i)
                    for (std::size_t ky = 0; ky < p.kh; ++ky)
                        for (std::size_t kx = 0; kx < p.kw; ++kx) {
                            const long iy = long(y * p.stride + ky) - long(p.padding);
                            const long ix = long(x * p.stride + kx) - long(p.padding);
                            if (iy < 0 || ix < 0 || iy >= long(in.h) || ix >= long(in.w))
                                continue;
                            acc += double(in.at(i, std::size_t(iy), std::size_t(ix))) *
                                   double(p.wt(o, i, ky, kx));
                        }
                out.at(o, y, x) = float(acc);
            }
    return out;
}

// Scatter-form transposed convolution reference.
inline rdk::nn::TensorCHW conv_transpose2d_naive(const rdk::nn::TensorCHW& in,
                                                 const rdk::nn::Conv2dParams& p) {
    const std::size_t oh = (in.h - 1) * p.stride + p.kh - 2 * p.padding;
    const std::size_t ow = (in.w - 1) * p.stride + p.kw - 2 * p.padding;
    rdk::nn::TensorCHW out(p.out_channels, oh, ow);
    std::vector<double> acc(out.v.size(), 0.0);
    for (std::size_t o = 0; o < p.out_channels; ++o)
        for (std::size_t i = 0; i < p.in_channels; ++i)
            for (std::size_t y = 0; y < in.h; ++y)
                for (std::size_t x = 0; x < in.w; ++x)
                    for (std::size_t ky = 0; ky < p.kh; ++ky)
                        for (std::size_t kx = 0; kx < p.kw; ++kx) {
                            const long oy = long(y * p.stride + ky) - long(p.padding);
                            const long ox = long(x * p.stride + kx) - long(p.padding);
                            if (oy < 0 || ox < 0 || oy >= long(oh) || ox >= long(ow)) continue;
                            acc[(o * oh + std::size_t(oy)) * ow + std::size_t(ox)] +=
                                double(in.at(i, y, x)) * double(p.wt(o, i, ky, kx));
                        }
    for (std::size_t o = 0; o < p.out_channels; ++o)
        for (std::size_t j = 0; j < oh * ow; ++j)
            out.v[o * oh * ow + j] = float(acc[o * oh * ow + j] + p.bias[o]);
    return out;
}

} // namespace oracle
