#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace rdk::nn {

/// Dense C x H x W float tensor, row-major (c, h, w).
struct TensorCHW {
    std::size_t c = 0, h = 0, w = 0;
    std::vector<float> v;

    TensorCHW() = default;
    TensorCHW(std::size_t c_, std::size_t h_, std::size_t w_)
        : c(c_), h(h_), w(w_), v(c_ * h_ * w_, 0.0f) {}

    float& at(std::size_t ci, std::size_t hi, std::size_t wi) {
        return v[(ci * h + hi) * w + wi];
    }
    float at(std::size_t ci, std::size_t hi, std::size_t wi) const {
        return v[(ci * h + hi) * w + wi];
    }

    std::size_t size() const { return v.size(); }

    bool same_shape(const TensorCHW& o) const { return c == o.c && h == o.h && w == o.w; }
};

inline void require_shape(const TensorCHW& t, std::size_t c, const char* what) {
    if (t.c != c)
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(c) +
                                    " channels, got " + std::to_string(t.c));
}

} // namespace rdk::nn
