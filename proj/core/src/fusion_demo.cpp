#include "rdk/fusion_demo.hpp"

namespace rdk {

using nn::TensorCHW;

BEVGridSpec make_demo_grid(const CartesianGridSpec& roi, std::size_t hw) {
    if (hw < 1) throw std::invalid_argument("make_demo_grid: hw must be >= 1");
    const double cell = (roi.x_max - roi.x_min) / double(hw);
    const double y_center = 0.5 * (roi.y_min + roi.y_max);
    const double half = 0.5 * double(hw) * cell;
    return {roi.x_min, roi.x_max, y_center - half, y_center + half, cell};
}

namespace {

TensorCHW bev_to_tensor(const BEVFeatureMap& map) {
    TensorCHW t(map.channels, map.height, map.width);
    t.v = map.values;
    return t;
}

BEVFeatureMap tensor_to_bev(const TensorCHW& t, const BEVGridSpec& grid) {
    BEVFeatureMap map(t.c, t.h, t.w);
    map.values = t.v;
    map.grid = grid;
    return map;
}

} // namespace

FusionDemoResult run_fusion_demo(const std::array<PointCloud, 3>& teachers,
                                 const PointCloud& student,
                                 const std::vector<BoxLabel>& labels,
                                 const CartesianGridSpec& roi, const FusionDemoConfig& cfg) {
    const BEVGridSpec grid = make_demo_grid(roi, cfg.hw);

    Rng rng(cfg.seed);
    const nn::Conv2dParams lift = nn::make_conv2d(rng, cfg.backbone_channels, 3, 1);
    const nn::AggregateParams agg =
        nn::make_aggregate_params(rng, cfg.backbone_channels, cfg.fused_channels,
                                  cfg.fused_channels);
    const nn::DensifyParams dens =
        nn::make_densify_params(rng, cfg.backbone_channels, 192, cfg.fused_channels);

    std::array<TensorCHW, 3> lifted;
    for (std::size_t i = 0; i < 3; ++i)
        lifted[i] = nn::conv2d(bev_to_tensor(voxelize_bev(teachers[i], grid)), lift);
    const TensorCHW student_lifted =
        nn::conv2d(bev_to_tensor(voxelize_bev(student, grid)), lift);

    FusionDemoResult result;
    result.teacher_fused = nn::aggregate(lifted, agg);
    result.student_densified = nn::densify_forward(student_lifted, dens);

    const Heatmap mask = splat_gaussian_heatmap(labels, grid);
    result.loss = masked_mse(tensor_to_bev(result.teacher_fused, grid),
                             tensor_to_bev(result.student_densified, grid), mask);
    return result;
}

} // namespace rdk
