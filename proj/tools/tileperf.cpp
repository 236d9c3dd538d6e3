// tileperf: tiled bilinear resizing plus the device-model tooling around it.
// Subcommands wire the library together; no behavior lives only here.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tileperf/bench.hpp"
#include "tileperf/cli_parse.hpp"
#include "tileperf/cost_model.hpp"
#include "tileperf/device_model.hpp"
#include "tileperf/errors.hpp"
#include "tileperf/pnm_io.hpp"
#include "tileperf/tiling.hpp"

namespace {

using namespace tileperf;

// ---------------------------------------------------------------------------
// report printing
// ---------------------------------------------------------------------------

void print_breakdown(const CostBreakdown& c) {
    std::printf("threads_per_block  %d\n", c.threads_per_block);
    std::printf("warps_per_block    %d\n", c.warps_per_block);
    std::printf("segments_per_warp  %d\n", c.segments_per_warp);
    std::printf("resident_blocks    %d\n", c.resident_blocks);
    std::printf("total_blocks       %lld\n", static_cast<long long>(c.total_blocks));
    std::printf("rounds             %lld\n", static_cast<long long>(c.rounds));
    std::printf("compute_cycles     %.10g\n", c.compute_cycles);
    std::printf("memory_cycles      %.10g\n", c.memory_cycles);
    std::printf("hiding_factor      %.6g\n", c.hiding_factor);
    std::printf("predicted_time     %.10g\n", c.predicted_time);
}

void print_report(const BenchReport& r) {
    std::printf("device: %s\n", r.device.c_str());
    std::printf("mode:   %s\n", to_string(r.mode));
    if (!r.note.empty()) std::printf("note:   %s\n", r.note.c_str());

    double current_scale = -1.0;
    for (const BenchRow& row : r.rows) {
        if (row.scale != current_scale) {
            current_scale = row.scale;
            std::printf("\nscale %g (%dx%d):\n", row.scale, row.out_width, row.out_height);
            std::printf("  %-8s %14s %14s\n", "tile", "predicted", "grand_mean_s");
        }
        if (row.timing.measured())
            std::printf("  %-8s %14.10g %14.6e\n", to_string(row.tile).c_str(),
                        row.cost.predicted_time, row.timing.grand_mean);
        else
            std::printf("  %-8s %14.10g %14s\n", to_string(row.tile).c_str(),
                        row.cost.predicted_time, "-");
    }
    if (!r.rejects.empty()) {
        std::printf("\nrejected candidates:\n");
        for (const BenchReject& rej : r.rejects)
            std::printf("  scale %g  %s: %s\n", rej.scale, to_string(rej.tile).c_str(),
                        rej.reason.c_str());
    }
    if (!r.best_modeled.empty()) {
        std::printf("\n");
        for (const ScaleBest& b : r.best_modeled)
            std::printf("best modeled   scale %g -> %s\n", b.scale, to_string(b.tile).c_str());
    }
    for (const ScaleBest& b : r.best_measured)
        std::printf("best measured  scale %g -> %s\n", b.scale, to_string(b.tile).c_str());
    for (const ScaleAgreement& a : r.top1_agreement)
        std::printf("top-1 agree    scale %g -> %s\n", a.scale, a.agree ? "yes" : "no");
}

void write_report_file(const BenchReport& report, const std::string& path) {
    const bool csv = path.ends_with(".csv");
    if (!csv && !path.ends_with(".json"))
        throw UsageError("report path must end in .csv or .json: '" + path + "'");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("can not open report file '" + path + "'");
    if (csv)
        write_report_csv(report, out);
    else
        write_report_json(report, out);
    if (!out) throw IoFailure("failed writing report file '" + path + "'");
}

AutotuneMode parse_mode(const std::string& text) {
    if (text == "model") return AutotuneMode::Model;
    if (text == "measure") return AutotuneMode::Measure;
    if (text == "both") return AutotuneMode::Both;
    throw UsageError("mode must be model, measure or both, got '" + text + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tiling laboratory: tile-parallel bilinear resizing, device occupancy "
                 "and cost prediction, and a measurement harness for ranking tile shapes"};
    app.require_subcommand(1);

    // resize -----------------------------------------------------------------
    struct {
        std::string input, output, tile;
        double scale = 0.0;
        unsigned workers = 0;
    } rz;
    CLI::App* resize = app.add_subcommand("resize", "resize an image with a tiled kernel");
    resize->add_option("--input", rz.input, "source image (PGM P5 or PPM P6)")->required();
    resize->add_option("--scale", rz.scale, "scale factor, > 0")->required();
    resize->add_option("--tile", rz.tile, "tile dimensions WxH, e.g. 32x4")->required();
    resize->add_option("--workers", rz.workers, "worker threads (default: hardware threads)");
    resize->add_option("--output", rz.output, "destination image path")->required();
    resize->callback([&] {
        const ImageBuffer src = read_image(rz.input);
        const ImageBuffer dst = resize_tiled(src, rz.scale, parse_tile(rz.tile), rz.workers);
        write_image(dst, rz.output);
        std::printf("%dx%d -> %dx%d, wrote %s\n", src.width, src.height, dst.width, dst.height,
                    rz.output.c_str());
    });

    // occupancy --------------------------------------------------------------
    struct {
        std::string device, tile;
        int regs = 10;
    } oc;
    CLI::App* occ = app.add_subcommand("occupancy", "blocks resident per SM for a tile shape");
    occ->add_option("--device", oc.device, "device profile JSON")->required();
    occ->add_option("--tile", oc.tile, "tile dimensions WxH")->required();
    occ->add_option("--regs-per-thread", oc.regs, "registers per thread (default 10)");
    occ->callback([&] {
        const DeviceProfile dev = load_profile(oc.device);
        const TileDims tile = parse_tile(oc.tile);
        const OccupancyReport rep =
            occupancy(dev, {.regs_per_thread = oc.regs, .threads_per_block = tile.bw * tile.bh});
        std::printf("device             %s\n", dev.name.c_str());
        std::printf("threads_per_block  %d\n", tile.bw * tile.bh);
        std::printf("resident_blocks    %d\n", rep.resident_blocks);
        std::printf("active_warps       %d\n", rep.active_warps);
        std::printf("active_threads     %d\n", rep.active_threads);
        std::printf("occupancy          %.4f\n", rep.occupancy_ratio);
        std::printf("limiting_factor    %s\n", to_string(rep.limiting_factor));
    });

    // predict ----------------------------------------------------------------
    struct {
        std::string device, tile, params;
        int out_w = 0, out_h = 0;
    } pr;
    CLI::App* predict_cmd = app.add_subcommand("predict", "analytic time prediction for a tile");
    predict_cmd->add_option("--device", pr.device, "device profile JSON")->required();
    predict_cmd->add_option("--tile", pr.tile, "tile dimensions WxH")->required();
    predict_cmd->add_option("--out-width", pr.out_w, "output width in pixels")->required();
    predict_cmd->add_option("--out-height", pr.out_h, "output height in pixels")->required();
    predict_cmd->add_option("--params", pr.params, "cost parameter JSON (defaults apply)");
    predict_cmd->callback([&] {
        const DeviceProfile dev = load_profile(pr.device);
        const CostParams params = pr.params.empty() ? CostParams{} : load_cost_params(pr.params);
        const CostBreakdown c = predict(dev, parse_tile(pr.tile), pr.out_w, pr.out_h, params);
        std::printf("device             %s\n", dev.name.c_str());
        std::printf("tile               %s\n", pr.tile.c_str());
        std::printf("output             %dx%d\n", pr.out_w, pr.out_h);
        print_breakdown(c);
    });

    // autotune ---------------------------------------------------------------
    struct {
        std::string device, input, scale, candidates, mode, report;
    } at;
    CLI::App* autotune_cmd =
        app.add_subcommand("autotune", "rank candidate tiles by model and/or measurement");
    autotune_cmd->add_option("--device", at.device, "device profile JSON")->required();
    autotune_cmd->add_option("--input", at.input, "source image")->required();
    autotune_cmd->add_option("--scale", at.scale, "scale factor(s), comma separated")->required();
    autotune_cmd->add_option("--candidates", at.candidates,
                             "tile list WxH,WxH (default: built-in sweep)");
    autotune_cmd->add_option("--mode", at.mode, "model | measure | both")->required();
    autotune_cmd->add_option("--report", at.report, "write full report to .csv or .json");
    autotune_cmd->callback([&] {
        const DeviceProfile dev = load_profile(at.device);
        const ImageBuffer src = read_image(at.input);
        const std::vector<double> scales = parse_scale_list(at.scale);
        const std::vector<TileDims> cands =
            at.candidates.empty() ? default_candidates() : parse_tile_list(at.candidates);
        const BenchReport rep =
            autotune(dev, src, scales, cands, CostParams{}, parse_mode(at.mode));
        print_report(rep);
        if (!at.report.empty()) write_report_file(rep, at.report);
    });

    // bench ------------------------------------------------------------------
    struct {
        std::string device, input, scales, tiles, report;
        int groups = 10, runs = 100;
    } be;
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "timed sweep over explicit tiles, model columns included");
    bench_cmd->add_option("--device", be.device, "device profile JSON")->required();
    bench_cmd->add_option("--input", be.input, "source image")->required();
    bench_cmd->add_option("--scales", be.scales, "scale factors, comma separated")->required();
    bench_cmd->add_option("--tiles", be.tiles, "tile list WxH,WxH")->required();
    bench_cmd->add_option("--groups", be.groups, "timing groups (default 10)");
    bench_cmd->add_option("--runs-per-group", be.runs, "runs per group (default 100)");
    bench_cmd->add_option("--report", be.report, "write full report to .csv or .json");
    bench_cmd->callback([&] {
        if (be.groups < 1 || be.runs < 1)
            throw UsageError("--groups and --runs-per-group must be at least 1");
        const DeviceProfile dev = load_profile(be.device);
        const ImageBuffer src = read_image(be.input);
        const MeasurementPlan plan{.groups = be.groups, .runs_per_group = be.runs};
        const BenchReport rep =
            autotune(dev, src, parse_scale_list(be.scales), parse_tile_list(be.tiles),
                     CostParams{}, AutotuneMode::Both, plan);
        print_report(rep);
        if (!be.report.empty()) write_report_file(rep, be.report);
    });

    // sensitivity ------------------------------------------------------------
    struct {
        double loss = 0.0;
        std::string sms;
    } se;
    CLI::App* sens =
        app.add_subcommand("sensitivity", "total efficiency loss per per-SM loss, by SM count");
    sens->add_option("--loss", se.loss, "efficiency loss on a single SM, in [0, 1]")->required();
    sens->add_option("--sms", se.sms, "SM counts, comma separated")->required();
    sens->callback([&] {
        for (int n : parse_int_list(se.sms)) std::cout << sensitivity(se.loss, n) << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) return app.exit(e);
        std::cerr << "error: " << e.what() << "\n\n";
        const auto subs = app.get_subcommands();
        std::cerr << (subs.empty() ? app.help() : subs.front()->help());
        return static_cast<int>(ErrorCode::Usage);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n\n";
        const auto subs = app.get_subcommands();
        std::cerr << (subs.empty() ? app.help() : subs.front()->help());
        return e.exit_code();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
