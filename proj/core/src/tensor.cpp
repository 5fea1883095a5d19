#include "rdk/tensor.hpp"

namespace rdk {

PowerVolume3D power_map(const RadarTensor4D& tensor) {
    const PolarGridSpec& g = tensor.grid;
    PowerVolume3D out(g);
    const std::size_t nd = g.n_doppler;
    const double inv = 1.0 / double(nd);
    const std::size_t cells = g.volume_cells();
    for (std::size_t c = 0; c < cells; ++c) {
        const float* slice = tensor.values.data() + c * nd;
        double acc = 0.0;
        for (std::size_t d = 0; d < nd; ++d) acc += slice[d];
        out.values[c] = float(acc * inv);
    }
    return out;
}

} // namespace rdk
