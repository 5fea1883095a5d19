#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rdk/grid.hpp"

namespace rdk {

/// Dense 4D power tensor over (azimuth, range, elevation, Doppler),
/// row-major in that axis order. Values are linear power, finite and >= 0.
struct RadarTensor4D {
    PolarGridSpec grid;
    std::vector<float> values;

    RadarTensor4D() = default;
    explicit RadarTensor4D(const PolarGridSpec& g)
        : grid(g), values(g.tensor_cells(), 0.0f) {
        grid.validate();
    }

    float& at(std::size_t ia, std::size_t ir, std::size_t ie, std::size_t id) {
        return values[grid.tensor_index(ia, ir, ie, id)];
    }
    float at(std::size_t ia, std::size_t ir, std::size_t ie, std::size_t id) const {
        return values[grid.tensor_index(ia, ir, ie, id)];
    }

    void validate() const {
        grid.validate();
        if (values.size() != grid.tensor_cells())
            throw std::invalid_argument("RadarTensor4D: value count does not match grid");
        for (float v : values)
            if (!std::isfinite(v) || v < 0.0f)
                throw std::invalid_argument("RadarTensor4D: values must be finite and >= 0");
    }
};

/// Doppler-collapsed 3D power volume over (azimuth, range, elevation).
struct PowerVolume3D {
    PolarGridSpec grid; // n_doppler retained from the source tensor, unused here
    std::vector<float> values;

    PowerVolume3D() = default;
    explicit PowerVolume3D(const PolarGridSpec& g)
        : grid(g), values(g.volume_cells(), 0.0f) {
        grid.validate();
    }

    float& at(std::size_t ia, std::size_t ir, std::size_t ie) {
        return values[grid.volume_index(ia, ir, ie)];
    }
    float at(std::size_t ia, std::size_t ir, std::size_t ie) const {
        return values[grid.volume_index(ia, ir, ie)];
    }
};

/// Collapse the Doppler axis by arithmetic mean, in the linear power domain.
PowerVolume3D power_map(const RadarTensor4D& tensor);

} // namespace rdk
