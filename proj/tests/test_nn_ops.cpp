#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rdk/nn/ops.hpp"
#include "rdk/nn/params.hpp"
#include "rdk/rng.hpp"

using namespace rdk;
using namespace rdk::nn;

namespace {

TensorCHW random_tensor(Rng& rng, std::size_t c, std::size_t h, std::size_t w) {
    TensorCHW t(c, h, w);
    for (float& v : t.v) v = float(rng.uniform(-2.0, 2.0));
    return t;
}

void check_close(const TensorCHW& a, const TensorCHW& b, double tol = 1e-5) {
    REQUIRE(a.same_shape(b));
    for (std::size_t i = 0; i < a.v.size(); ++i) {
        const double scale = std::max({1.0, std::abs(double(a.v[i])), std::abs(double(b.v[i]))});
        CHECK(std::abs(double(a.v[i]) - double(b.v[i])) <= tol * scale);
    }
}

} // namespace

TEST_CASE("conv2d identity 1x1 kernel") {
    Rng rng(71);
    const TensorCHW in = random_tensor(rng, 3, 5, 6);
    Conv2dParams p;
    p.out_channels = p.in_channels = 3;
    p.kh = p.kw = 1;
    p.weight.assign(9, 0.0f);
    p.bias.assign(3, 0.0f);
    for (std::size_t c = 0; c < 3; ++c) p.weight[c * 3 + c] = 1.0f;
    check_close(conv2d(in, p), in, 1e-7);
}

TEST_CASE("all-ones 3x3 kernel on a constant input") {
    TensorCHW in(1, 6, 6);
    std::fill(in.v.begin(), in.v.end(), 2.0f);
    Conv2dParams p;
    p.out_channels = p.in_channels = 1;
    p.kh = p.kw = 3;
    p.padding = 1;
    p.weight.assign(9, 1.0f);
    p.bias.assign(1, 0.0f);
    const TensorCHW out = conv2d(in, p);
    REQUIRE(out.h == 6);
    for (std::size_t y = 1; y < 5; ++y)
        for (std::size_t x = 1; x < 5; ++x)
            CHECK(out.at(0, y, x) == doctest::Approx(18.0f)); // 9c at interior cells
}

TEST_CASE("conv2d matches the loop oracle") {
    Rng rng(73);
    for (int iter = 0; iter < 10; ++iter) {
        const std::size_t stride = 1 + iter % 2;
        const std::size_t pad = iter % 3;
        const TensorCHW in = random_tensor(rng, 4, 8, 8);
        const Conv2dParams p = make_conv2d(rng, 5, 4, 3, stride, pad);
        check_close(conv2d(in, p), oracle::conv2d_naive(in, p));
    }
}

TEST_CASE("conv_transpose2d matches the loop oracle") {
    Rng rng(79);
    for (int iter = 0; iter < 10; ++iter) {
        const std::size_t stride = 1 + iter % 2;
        const TensorCHW in = random_tensor(rng, 3, 6, 7);
        const Conv2dParams p = make_conv2d(rng, 4, 3, 2 + iter % 2, stride, iter % 2);
        check_close(conv_transpose2d(in, p), oracle::conv_transpose2d_naive(in, p));
    }
}

TEST_CASE("conv_transpose2d stride-2 k=2 doubles the spatial size") {
    Rng rng(83);
    const TensorCHW in = random_tensor(rng, 2, 5, 9);
    const Conv2dParams p = make_conv2d(rng, 2, 2, 2, 2, 0);
    const TensorCHW out = conv_transpose2d(in, p);
    CHECK(out.h == 10);
    CHECK(out.w == 18);
}

TEST_CASE("activations") {
    TensorCHW in(1, 1, 3);
    in.v = {-1.0f, 0.0f, 2.0f};
    const TensorCHW r = relu(in);
    CHECK(r.v[0] == 0.0f);
    CHECK(r.v[2] == 2.0f);

    const TensorCHW s = sigmoid(in);
    CHECK(s.v[1] == doctest::Approx(0.5).epsilon(1e-12));

    const TensorCHW g = gelu(in);
    CHECK(g.v[1] == 0.0f);
    CHECK(g.v[2] == doctest::Approx(2.0 * 0.5 * (1.0 + std::erf(2.0 / std::sqrt(2.0)))));
}

TEST_CASE("layer_norm of a constant channel vector is beta") {
    TensorCHW in(4, 2, 2);
    std::fill(in.v.begin(), in.v.end(), 3.0f); // zero variance across channels
    NormParams p;
    p.gamma.assign(4, 1.0f);
    p.beta.assign(4, 0.0f);
    const TensorCHW out = layer_norm(in, p);
    for (float v : out.v) CHECK(std::abs(v) < 1e-4); // epsilon-stabilized zero
}

TEST_CASE("layer_norm matches a per-position oracle") {
    Rng rng(89);
    const TensorCHW in = random_tensor(rng, 6, 4, 4);
    NormParams p = make_norm(rng, 6);
    const TensorCHW out = layer_norm(in, p);
    for (std::size_t y = 0; y < 4; ++y)
        for (std::size_t x = 0; x < 4; ++x) {
            double mean = 0.0;
            for (std::size_t c = 0; c < 6; ++c) mean += in.at(c, y, x);
            mean /= 6.0;
            double var = 0.0;
            for (std::size_t c = 0; c < 6; ++c) {
                const double d = in.at(c, y, x) - mean;
                var += d * d;
            }
            var /= 6.0;
            for (std::size_t c = 0; c < 6; ++c) {
                const double expect =
                    (in.at(c, y, x) - mean) / std::sqrt(var + p.eps) * p.gamma[c] + p.beta[c];
                CHECK(out.at(c, y, x) == doctest::Approx(expect).epsilon(1e-5));
            }
        }
}

TEST_CASE("batch_norm_inference uses stored statistics") {
    Rng rng(97);
    const TensorCHW in = random_tensor(rng, 3, 4, 5);
    NormParams p = make_norm(rng, 3);
    const TensorCHW out = batch_norm_inference(in, p);
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t y = 0; y < 4; ++y)
            for (std::size_t x = 0; x < 5; ++x) {
                const double expect = (double(in.at(c, y, x)) - p.mean[c]) /
                                          std::sqrt(double(p.var[c]) + p.eps) * p.gamma[c] +
                                      p.beta[c];
                CHECK(out.at(c, y, x) == doctest::Approx(expect).epsilon(1e-5));
            }
}

TEST_CASE("pooling matches brute force") {
    Rng rng(101);
    const TensorCHW in = random_tensor(rng, 5, 6, 7);
    const TensorCHW ga = global_avg_pool(in);
    const TensorCHW gm = global_max_pool(in);
    const TensorCHW ca = channel_avg_pool(in);
    const TensorCHW cm = channel_max_pool(in);
    CHECK(ga.c == 5);
    CHECK(ca.h == 6);

    for (std::size_t c = 0; c < 5; ++c) {
        double sum = 0.0;
        float mx = in.at(c, 0, 0);
        for (std::size_t y = 0; y < 6; ++y)
            for (std::size_t x = 0; x < 7; ++x) {
                sum += in.at(c, y, x);
                mx = std::max(mx, in.at(c, y, x));
            }
        CHECK(ga.v[c] == doctest::Approx(sum / 42.0).epsilon(1e-6));
        CHECK(gm.v[c] == mx);
    }
    for (std::size_t y = 0; y < 6; ++y)
        for (std::size_t x = 0; x < 7; ++x) {
            double sum = 0.0;
            float mx = in.at(0, y, x);
            for (std::size_t c = 0; c < 5; ++c) {
                sum += in.at(c, y, x);
                mx = std::max(mx, in.at(c, y, x));
            }
            CHECK(ca.at(0, y, x) == doctest::Approx(sum / 5.0).epsilon(1e-6));
            CHECK(cm.at(0, y, x) == mx);
        }
}

TEST_CASE("shape mismatches are rejected") {
    Rng rng(103);
    const TensorCHW in = random_tensor(rng, 3, 4, 4);
    const Conv2dParams p = make_conv2d(rng, 2, 5, 3, 1, 1); // expects 5 input channels
    CHECK_THROWS_AS(conv2d(in, p), std::invalid_argument);
    CHECK_THROWS_AS(conv_transpose2d(in, p), std::invalid_argument);

    NormParams n = make_norm(rng, 2);
    CHECK_THROWS_AS(batch_norm_inference(in, n), std::invalid_argument);
    CHECK_THROWS_AS(layer_norm(in, n), std::invalid_argument);

    const TensorCHW other = random_tensor(rng, 3, 4, 5);
    CHECK_THROWS_AS(add(in, other), std::invalid_argument);
}
