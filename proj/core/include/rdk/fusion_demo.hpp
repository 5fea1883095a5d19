#pragma once

#include <array>
#include <cstdint>

#include "rdk/bev.hpp"
#include "rdk/nn/blocks.hpp"

namespace rdk {

/// End-to-end aggregation + densification demo at desk scale: BEV
/// summaries of three teacher clouds and one student cloud are lifted to
/// the backbone width by a seeded 1x1 expansion conv, fused teacher-side,
/// densified student-side, and compared with the label-masked MSE.
struct FusionDemoConfig {
    std::size_t hw = 32;            // square BEV resolution (H = W)
    std::size_t backbone_channels = 768;
    std::size_t fused_channels = 128;
    std::uint64_t seed = 0;
};

struct FusionDemoResult {
    double loss = 0.0;              // masked MSE between fused teacher and student
    nn::TensorCHW teacher_fused;    // fused_channels x hw x hw
    nn::TensorCHW student_densified;
};

/// Square BEV grid spanning the RoI x-extent with hw cells per side,
/// centered on the RoI in y.
BEVGridSpec make_demo_grid(const CartesianGridSpec& roi, std::size_t hw);

FusionDemoResult run_fusion_demo(const std::array<PointCloud, 3>& teachers,
                                 const PointCloud& student,
                                 const std::vector<BoxLabel>& labels,
                                 const CartesianGridSpec& roi, const FusionDemoConfig& cfg);

} // namespace rdk
