// Command-line front end for the radar tensor pipelines.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rdk/bev.hpp"
#include "rdk/cartesian.hpp"
#include "rdk/cfar.hpp"
#include "rdk/cloud_io.hpp"
#include "rdk/fusion_demo.hpp"
#include "rdk/parallel.hpp"
#include "rdk/percentile.hpp"
#include "rdk/scene.hpp"

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Write via temp + rename so readers never observe a partial file.
template <typename WriteFn>
void atomic_write(const std::string& path, WriteFn&& fn) {
    const std::string tmp = path + ".tmp";
    fn(tmp);
    fs::rename(tmp, path);
}

struct RoiFlags {
    rdk::CartesianGridSpec roi;

    void attach(CLI::App* cmd) {
        cmd->add_option("--x-min", roi.x_min, "RoI x lower bound [m]");
        cmd->add_option("--x-max", roi.x_max, "RoI x upper bound [m]");
        cmd->add_option("--y-min", roi.y_min, "RoI y lower bound [m]");
        cmd->add_option("--y-max", roi.y_max, "RoI y upper bound [m]");
        cmd->add_option("--z-min", roi.z_min, "RoI z lower bound [m]");
        cmd->add_option("--z-max", roi.z_max, "RoI z upper bound [m]");
        cmd->add_option("--voxel", roi.voxel_size, "voxel edge length [m]");
    }
};

rdk::CfarConfig cfar_from_flags(const std::vector<std::size_t>& train,
                                const std::vector<std::size_t>& guard,
                                const std::string& axes, double alpha, double p_fa) {
    rdk::CfarConfig cfg;
    cfg.axis_azimuth = axes.find('a') != std::string::npos;
    cfg.axis_range = axes.find('r') != std::string::npos;
    cfg.axis_elevation = axes.find('e') != std::string::npos;
    if (train.size() == 3) {
        cfg.train_azimuth = train[0];
        cfg.train_range = train[1];
        cfg.train_elevation = train[2];
    }
    if (guard.size() == 3) {
        cfg.guard_azimuth = guard[0];
        cfg.guard_range = guard[1];
        cfg.guard_elevation = guard[2];
    }
    if (p_fa > 0.0)
        cfg.scale_alpha = rdk::cfar_alpha_for_rate(p_fa, cfg.training_cell_count());
    else
        cfg.scale_alpha = alpha;
    return cfg;
}

int cmd_gen_scene(const std::string& config_path, const std::string& out_path) {
    const rdk::SceneFile sf = rdk::load_scene_file(config_path);
    const rdk::RadarTensor4D tensor = rdk::generate_4drt(sf.scene, sf.grid);
    atomic_write(out_path, [&](const std::string& p) { rdk::write_tensor(p, tensor); });
    std::cout << "wrote " << out_path << " (" << tensor.grid.tensor_cells() << " cells)\n";
    return 0;
}

int cmd_preproc(const std::string& in_path, const std::string& out_path,
                const std::string& mode, double r, double voxel, const rdk::CfarConfig& cfar,
                double r2, const std::string& voxel_out) {
    const rdk::RadarTensor4D tensor = rdk::read_tensor(in_path);
    rdk::PointCloud cloud;
    if (mode == "polar-percentile") {
        cloud = rdk::filter_polar_percentile(tensor, r);
    } else if (mode == "cartesian") {
        rdk::CartesianGridSpec grid;
        grid.voxel_size = voxel;
        const rdk::CartesianVoxelVolume voxels =
            rdk::resample_to_cartesian(rdk::power_map(tensor), grid);
        if (!voxel_out.empty())
            atomic_write(voxel_out, [&](const std::string& p) { rdk::write_voxels(p, voxels); });
        cloud = rdk::filter_cartesian_percentile(voxels, r);
    } else if (mode == "cfar") {
        cloud = rdk::ca_cfar(rdk::power_map(tensor), cfar);
    } else if (mode == "tlp") {
        rdk::TlpConfig tlp;
        tlp.coarse = cfar;
        tlp.second_stage_r = r2;
        cloud = rdk::two_level_preproc(tensor, tlp);
    } else {
        std::cerr << "error: unknown --mode \"" << mode << "\"\n";
        return 2;
    }
    cloud.frame_id = fs::path(in_path).stem().string();
    atomic_write(out_path, [&](const std::string& p) { rdk::write_cloud(p, cloud); });
    std::cout << "wrote " << out_path << " (" << cloud.size() << " points)\n";
    return 0;
}

int cmd_stats(const std::string& in_path, const rdk::CartesianGridSpec& roi) {
    const rdk::PointCloud cloud = rdk::read_cloud(in_path);
    const rdk::CloudStats s = rdk::size_stats(cloud, roi);
    std::printf("points:        %zu\n", s.num_points);
    std::printf("bytes_on_disk: %llu\n", (unsigned long long)s.bytes_on_disk);
    std::printf("mb_per_frame:  %.6f\n", double(s.bytes_on_disk) / (1024.0 * 1024.0));
    std::printf("density:       %.6f points/m^3\n", s.density);
    return 0;
}

int cmd_compare(const std::string& in_path, const std::vector<double>& rs, bool with_cfar,
                const rdk::CfarConfig& cfar, const rdk::CartesianGridSpec& roi) {
    const rdk::RadarTensor4D tensor = rdk::read_tensor(in_path);
    struct Row {
        std::string label;
        rdk::CloudStats stats;
    };
    std::vector<Row> rows;
    for (double r : rs) {
        const rdk::PointCloud cloud = rdk::filter_polar_percentile(tensor, r);
        char label[64];
        std::snprintf(label, sizeof(label), "polar-percentile r=%g", r);
        rows.push_back({label, rdk::size_stats(cloud, roi)});
    }
    if (with_cfar) {
        const rdk::PointCloud cloud = rdk::ca_cfar(rdk::power_map(tensor), cfar);
        rows.push_back({"ca-cfar", rdk::size_stats(cloud, roi)});
    }
    if (rows.empty()) {
        std::cerr << "error: nothing to compare, pass --r at least once\n";
        return 2;
    }
    // Ratios are relative to the sparsest result.
    std::size_t base = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].stats.num_points < rows[base].stats.num_points) base = i;
    std::printf("%-26s %12s %14s %10s %12s\n", "mode", "points", "bytes", "MB", "byte-ratio");
    for (const Row& row : rows) {
        const double ratio =
            double(row.stats.bytes_on_disk) / double(rows[base].stats.bytes_on_disk);
        std::printf("%-26s %12zu %14llu %10.4f %11.2fx\n", row.label.c_str(),
                    row.stats.num_points, (unsigned long long)row.stats.bytes_on_disk,
                    double(row.stats.bytes_on_disk) / (1024.0 * 1024.0), ratio);
    }
    return 0;
}

int cmd_heatmap(const std::string& labels_path, const std::string& out_path,
                const rdk::CartesianGridSpec& roi) {
    const std::vector<rdk::BoxLabel> labels = rdk::read_labels_csv(labels_path);
    const rdk::BEVGridSpec grid = rdk::BEVGridSpec::from_roi(roi);
    const rdk::Heatmap hm = rdk::splat_gaussian_heatmap(labels, grid);
    atomic_write(out_path, [&](const std::string& p) { rdk::write_heatmap_pgm(p, hm); });
    const std::string csv_path = fs::path(out_path).replace_extension(".csv").string();
    atomic_write(csv_path, [&](const std::string& p) { rdk::write_heatmap_csv(p, hm); });
    std::cout << "wrote " << out_path << " and " << csv_path << " (" << hm.width << "x"
              << hm.height << ")\n";
    return 0;
}

int cmd_distill_demo(const std::string& teacher_path, const std::string& student_path,
                     const std::string& labels_path, const rdk::CartesianGridSpec& roi) {
    const rdk::PointCloud teacher = rdk::read_cloud(teacher_path);
    const rdk::PointCloud student = rdk::read_cloud(student_path);
    const std::vector<rdk::BoxLabel> labels = rdk::read_labels_csv(labels_path);
    const rdk::BEVGridSpec grid = rdk::BEVGridSpec::from_roi(roi);
    const rdk::BEVFeatureMap ft = rdk::voxelize_bev(teacher, grid);
    const rdk::BEVFeatureMap fs_ = rdk::voxelize_bev(student, grid);
    const rdk::Heatmap mask = rdk::splat_gaussian_heatmap(labels, grid);
    const double distill = rdk::masked_mse(ft, fs_, mask);
    std::printf("masked_mse: %.17g\n", distill);
    return 0;
}

int cmd_fusion_demo(const std::vector<std::string>& teacher_paths,
                    const std::string& student_path, const std::string& labels_path,
                    const rdk::CartesianGridSpec& roi, std::size_t hw, std::uint64_t seed,
                    const std::string& params_out) {
    if (teacher_paths.size() != 3) {
        std::cerr << "error: --teacher must be given exactly 3 times\n";
        return 2;
    }
    std::array<rdk::PointCloud, 3> teachers;
    for (std::size_t i = 0; i < 3; ++i) teachers[i] = rdk::read_cloud(teacher_paths[i]);
    const rdk::PointCloud student = rdk::read_cloud(student_path);
    const std::vector<rdk::BoxLabel> labels =
        labels_path.empty() ? std::vector<rdk::BoxLabel>{} : rdk::read_labels_csv(labels_path);

    rdk::FusionDemoConfig cfg;
    cfg.hw = hw;
    cfg.seed = seed;
    const auto t0 = Clock::now();
    const rdk::FusionDemoResult result = rdk::run_fusion_demo(teachers, student, labels, roi, cfg);
    std::printf("masked_mse: %.17g\n", result.loss);
    std::printf("elapsed_s:  %.3f\n", seconds_since(t0));

    if (!params_out.empty()) {
        rdk::Rng rng(seed);
        (void)rdk::nn::make_conv2d(rng, cfg.backbone_channels, 3, 1);
        const auto agg = rdk::nn::make_aggregate_params(rng, cfg.backbone_channels,
                                                        cfg.fused_channels, cfg.fused_channels);
        atomic_write(params_out, [&](const std::string& p) {
            rdk::nn::write_params(p, rdk::nn::pack_aggregate(agg));
        });
        std::cout << "wrote " << params_out << "\n";
    }
    return 0;
}

int cmd_bench(const std::string& in_path, double r, const rdk::CfarConfig& cfar, double voxel) {
    const auto t_read0 = Clock::now();
    const rdk::RadarTensor4D tensor = rdk::read_tensor(in_path);
    std::printf("%-22s %8.3f s\n", "read_tensor", seconds_since(t_read0));

    auto t0 = Clock::now();
    const rdk::PowerVolume3D volume = rdk::power_map(tensor);
    std::printf("%-22s %8.3f s\n", "power_map", seconds_since(t0));

    t0 = Clock::now();
    const rdk::PointCloud polar = rdk::filter_polar_percentile(tensor, r);
    std::printf("%-22s %8.3f s  (%zu points)\n", "polar_percentile", seconds_since(t0),
                polar.size());

    t0 = Clock::now();
    rdk::CartesianGridSpec grid;
    grid.voxel_size = voxel;
    const rdk::CartesianVoxelVolume voxels = rdk::resample_to_cartesian(volume, grid);
    const rdk::PointCloud cart = rdk::filter_cartesian_percentile(voxels, r);
    std::printf("%-22s %8.3f s  (%zu points)\n", "cartesian_percentile", seconds_since(t0),
                cart.size());

    t0 = Clock::now();
    const rdk::PointCloud cfar_cloud = rdk::ca_cfar(volume, cfar);
    std::printf("%-22s %8.3f s  (%zu points)\n", "ca_cfar", seconds_since(t0),
                cfar_cloud.size());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"4D radar tensor pre-processing and distillation toolkit"};
    app.require_subcommand(1);

    std::size_t threads = 0;
    app.add_option("--threads", threads,
                   "worker threads (default: RADKIT_THREADS or hardware concurrency)");

    // gen-scene
    std::string scene_config, scene_out = "frame.4drt";
    auto* gen = app.add_subcommand("gen-scene", "synthesize a 4DRT file from a scene config");
    gen->add_option("--config", scene_config, "scene JSON file")->required();
    gen->add_option("--out", scene_out, "output 4DRT path");

    // preproc
    std::string pp_in, pp_out = "cloud.rpc1", pp_mode = "polar-percentile", pp_voxel_out;
    double pp_r = 99.9, pp_voxel = 0.4, pp_alpha = 2.0, pp_pfa = 0.0, pp_r2 = 50.0;
    std::vector<std::size_t> pp_train, pp_guard;
    std::string pp_axes = "ar";
    auto* pp = app.add_subcommand("preproc", "4DRT -> point cloud");
    pp->add_option("--input", pp_in, "input 4DRT file")->required();
    pp->add_option("--out", pp_out, "output RPC1 path");
    pp->add_option("--mode", pp_mode, "polar-percentile | cartesian | cfar | tlp");
    pp->add_option("--r", pp_r, "percentile in [0,100]");
    pp->add_option("--voxel", pp_voxel, "voxel size for cartesian mode [m]");
    pp->add_option("--voxel-out", pp_voxel_out, "also dump the CVOX voxel volume here");
    pp->add_option("--alpha", pp_alpha, "CFAR threshold multiplier");
    pp->add_option("--p-fa", pp_pfa, "derive alpha from this false-alarm rate instead");
    pp->add_option("--train", pp_train, "training cells per side: azimuth range elevation")
        ->expected(3);
    pp->add_option("--guard", pp_guard, "guard cells per side: azimuth range elevation")
        ->expected(3);
    pp->add_option("--axes", pp_axes, "CFAR window axes, subset of \"are\"");
    pp->add_option("--r2", pp_r2, "TLP second-stage percentile");

    // stats
    std::string st_in;
    RoiFlags st_roi;
    auto* st = app.add_subcommand("stats", "point-cloud size accounting");
    st->add_option("--input", st_in, "input RPC1 file")->required();
    st_roi.attach(st);

    // compare
    std::string cp_in;
    std::vector<double> cp_rs;
    bool cp_cfar = false;
    RoiFlags cp_roi;
    auto* cp = app.add_subcommand("compare", "run several modes on one tensor, print a table");
    cp->add_option("--input", cp_in, "input 4DRT file")->required();
    cp->add_option("--r", cp_rs, "percentile (repeatable)");
    cp->add_flag("--cfar", cp_cfar, "include a CA-CFAR row");
    cp_roi.attach(cp);

    // heatmap
    std::string hm_labels, hm_out = "heatmap.pgm";
    RoiFlags hm_roi;
    auto* hm = app.add_subcommand("heatmap", "labels CSV -> Gaussian heatmap (PGM + CSV)");
    hm->add_option("--labels", hm_labels, "labels CSV")->required();
    hm->add_option("--out", hm_out, "output PGM path");
    hm_roi.attach(hm);

    // distill-demo
    std::string dd_teacher, dd_student, dd_labels;
    RoiFlags dd_roi;
    auto* dd = app.add_subcommand("distill-demo", "masked MSE between two BEV-voxelized clouds");
    dd->add_option("--teacher", dd_teacher, "teacher RPC1 cloud")->required();
    dd->add_option("--student", dd_student, "student RPC1 cloud")->required();
    dd->add_option("--labels", dd_labels, "labels CSV")->required();
    dd_roi.attach(dd);

    // fusion-demo
    std::vector<std::string> fd_teachers;
    std::string fd_student, fd_labels, fd_params;
    std::size_t fd_hw = 32;
    std::uint64_t fd_seed = 0;
    RoiFlags fd_roi;
    auto* fd = app.add_subcommand("fusion-demo", "aggregate 3 teachers + densify the student");
    fd->add_option("--teacher", fd_teachers, "teacher RPC1 cloud (exactly 3 times)");
    fd->add_option("--student", fd_student, "student RPC1 cloud")->required();
    fd->add_option("--labels", fd_labels, "labels CSV (optional)");
    fd->add_option("--hw", fd_hw, "square BEV resolution");
    fd->add_option("--seed", fd_seed, "parameter seed");
    fd->add_option("--params-out", fd_params, "dump aggregation parameters (NNPB)");
    fd_roi.attach(fd);

    // bench
    std::string bn_in;
    double bn_r = 99.9, bn_voxel = 0.4;
    auto* bn = app.add_subcommand("bench", "wall time per pipeline stage");
    bn->add_option("--input", bn_in, "input 4DRT file")->required();
    bn->add_option("--r", bn_r, "percentile for the filter stages");
    bn->add_option("--voxel", bn_voxel, "voxel size [m]");

    CLI11_PARSE(app, argc, argv);
    if (threads > 0) rdk::set_thread_count(threads);

    try {
        if (gen->parsed()) return cmd_gen_scene(scene_config, scene_out);
        if (pp->parsed())
            return cmd_preproc(pp_in, pp_out, pp_mode, pp_r, pp_voxel,
                               cfar_from_flags(pp_train, pp_guard, pp_axes, pp_alpha, pp_pfa),
                               pp_r2, pp_voxel_out);
        if (st->parsed()) return cmd_stats(st_in, st_roi.roi);
        if (cp->parsed())
            return cmd_compare(cp_in, cp_rs, cp_cfar,
                               cfar_from_flags({}, {}, "ar", 2.0, 0.0), cp_roi.roi);
        if (hm->parsed()) return cmd_heatmap(hm_labels, hm_out, hm_roi.roi);
        if (dd->parsed()) return cmd_distill_demo(dd_teacher, dd_student, dd_labels, dd_roi.roi);
        if (fd->parsed())
            return cmd_fusion_demo(fd_teachers, fd_student, fd_labels, fd_roi.roi, fd_hw,
                                   fd_seed, fd_params);
        if (bn->parsed())
            return cmd_bench(bn_in, bn_r, cfar_from_flags({}, {}, "ar", 2.0, 0.0), bn_voxel);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
