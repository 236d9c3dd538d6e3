#include "tileperf/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace tileperf {

namespace {

using Clock = std::chrono::steady_clock;
static_assert(Clock::is_steady, "monotonic clock required by the measurement protocol");

constexpr const char* kMeasurementNote =
    "host-CPU timings of the tiled executor; modeled times are abstract cycle "
    "units where only ratios and orderings are meaningful";

std::string format_scale(double scale) {
    std::ostringstream s;
    s << scale;
    return s.str();
}

}  // namespace

const char* to_string(AutotuneMode m) {
    switch (m) {
        case AutotuneMode::Model: return "model";
        case AutotuneMode::Measure: return "measure";
        case AutotuneMode::Both: return "both";
    }
    return "?";
}

MeasurementRun measure(const ImageBuffer& src, double scale, TileDims tile,
                       const MeasurementPlan& plan) {
    if (tile.bw < 1 || tile.bh < 1)
        throw InvalidTile("tile dimensions must be >= 1, got " + to_string(tile));
    if (plan.groups < 1 || plan.runs_per_group < 1 || plan.warmup_runs < 0)
        throw OutOfRange("measurement plan needs groups >= 1, runs_per_group >= 1");

    for (int i = 0; i < plan.warmup_runs; ++i)
        (void)resize_tiled(src, scale, tile, plan.workers);

    MeasurementRun result;
    std::vector<double> runs;
    runs.reserve(static_cast<std::size_t>(plan.groups) * plan.runs_per_group);

    for (int g = 0; g < plan.groups; ++g) {
        double group_sum = 0.0;
        for (int r = 0; r < plan.runs_per_group; ++r) {
            const auto t0 = Clock::now();
            ImageBuffer out = resize_tiled(src, scale, tile, plan.workers);
            const auto t1 = Clock::now();
            const double sec = std::chrono::duration<double>(t1 - t0).count();
            runs.push_back(sec);
            group_sum += sec;
            if (g == plan.groups - 1 && r == plan.runs_per_group - 1)
                result.final_output = std::move(out);
        }
        result.stats.group_means.push_back(group_sum / plan.runs_per_group);
    }

    result.stats.runs_per_group = plan.runs_per_group;
    double total = 0.0;
    for (double sec : runs) total += sec;
    result.stats.grand_mean = total / static_cast<double>(runs.size());
    const auto [lo, hi] = std::minmax_element(runs.begin(), runs.end());
    result.stats.min_run = *lo;
    result.stats.max_run = *hi;
    result.stats.offset_max = result.stats.max_run - result.stats.grand_mean;
    result.stats.offset_min = result.stats.grand_mean - result.stats.min_run;
    return result;
}

std::vector<TileDims> default_candidates() {
    return {{8, 8},  {16, 8}, {8, 16}, {32, 4},  {4, 32},
            {16, 16}, {32, 8}, {8, 32}, {32, 16}, {16, 32}};
}

BenchReport autotune(const DeviceProfile& dev, int src_width, int src_height,
                     const ImageBuffer* src, std::span<const double> scales,
                     std::span<const TileDims> candidates, const CostParams& params,
                     AutotuneMode mode, const MeasurementPlan& plan) {
    if (candidates.empty()) throw NoValidCandidate("empty candidate list");
    if (scales.empty()) throw OutOfRange("at least one scale is required");
    if (src_width < 1 || src_height < 1) throw OutOfRange("source extent must be >= 1x1");
    const bool measures = mode != AutotuneMode::Model;
    if (measures && src == nullptr)
        throw MissingImage("measure/both modes require a source image");

    BenchReport report;
    report.device = dev.name;
    report.note = kMeasurementNote;
    report.mode = mode;

    for (double scale : scales) {
        if (!(scale > 0.0))
            throw NonPositiveScale("scale must be positive, got " + std::to_string(scale));
        const int out_w = static_cast<int>(std::floor(src_width * scale));
        const int out_h = static_cast<int>(std::floor(src_height * scale));
        if (out_w < 1 || out_h < 1)
            throw EmptyOutput("scale " + format_scale(scale) + " collapses the output");

        const Ranking ranking = rank_tilings(dev, candidates, out_w, out_h, params);
        for (const RejectedTile& rej : ranking.rejects)
            report.rejects.push_back({scale, rej.tile, rej.reason});

        // Scalar reference, computed once per scale, verifies every retained
        // measured output.
        ImageBuffer reference;
        if (measures) reference = resize_scalar(*src, scale);

        const TileDims* best_measured_tile = nullptr;
        double best_measured_mean = 0.0;

        for (const RankedTile& entry : ranking.entries) {
            BenchRow row;
            row.tile = entry.tile;
            row.scale = scale;
            row.out_width = out_w;
            row.out_height = out_h;
            row.cost = entry.cost;
            if (measures) {
                MeasurementRun run = measure(*src, scale, entry.tile, plan);
                if (run.final_output != reference)
                    throw std::logic_error("tiled output diverged from the scalar oracle for " +
                                           to_string(entry.tile));
                row.timing = std::move(run.stats);
                if (best_measured_tile == nullptr || row.timing.grand_mean < best_measured_mean) {
                    best_measured_tile = &entry.tile;
                    best_measured_mean = row.timing.grand_mean;
                }
            }
            report.rows.push_back(std::move(row));
        }

        const TileDims best_model = ranking.entries.front().tile;
        if (mode != AutotuneMode::Measure) report.best_modeled.push_back({scale, best_model});
        if (measures) report.best_measured.push_back({scale, *best_measured_tile});
        if (mode == AutotuneMode::Both)
            report.top1_agreement.push_back({scale, *best_measured_tile == best_model});
    }
    return report;
}

BenchReport autotune(const DeviceProfile& dev, const ImageBuffer& src,
                     std::span<const double> scales, std::span<const TileDims> candidates,
                     const CostParams& params, AutotuneMode mode, const MeasurementPlan& plan) {
    return autotune(dev, src.width, src.height, &src, scales, candidates, params, mode, plan);
}

void write_report_csv(const BenchReport& report, std::ostream& out) {
    out << "# " << report.note << "\n";
    out << "device,tile,scale,out_width,out_height,groups,runs_per_group,grand_mean_s,"
           "min_run_s,max_run_s,offset_min_s,offset_max_s,group_means_s,"
           "threads_per_block,warps_per_block,segments_per_warp,resident_blocks,"
           "total_blocks,rounds,compute_cycles,memory_cycles,hiding_factor,predicted_time\n";
    const auto prev = out.precision(17);
    for (const BenchRow& r : report.rows) {
        out << report.device << ',' << to_string(r.tile) << ',' << r.scale << ','
            << r.out_width << ',' << r.out_height << ',';
        if (r.timing.measured()) {
            out << r.timing.group_means.size() << ',' << r.timing.runs_per_group << ',';
            out << r.timing.grand_mean << ',' << r.timing.min_run << ',' << r.timing.max_run
                << ',' << r.timing.offset_min << ',' << r.timing.offset_max << ',';
            for (std::size_t i = 0; i < r.timing.group_means.size(); ++i) {
                if (i) out << ';';
                out << r.timing.group_means[i];
            }
            out << ',';
        } else {
            out << ",,,,,,,,";
        }
        out << r.cost.threads_per_block << ',' << r.cost.warps_per_block << ','
            << r.cost.segments_per_warp << ',' << r.cost.resident_blocks << ','
            << r.cost.total_blocks << ',' << r.cost.rounds << ',' << r.cost.compute_cycles
            << ',' << r.cost.memory_cycles << ',' << r.cost.hiding_factor << ','
            << r.cost.predicted_time << "\n";
    }
    out.precision(prev);
}

namespace {

nlohmann::json timing_json(const TimingStats& t) {
    if (!t.measured()) return nullptr;
    return {{"group_means_s", t.group_means},
            {"runs_per_group", t.runs_per_group},
            {"grand_mean_s", t.grand_mean},
            {"min_run_s", t.min_run},
            {"max_run_s", t.max_run},
            {"offset_min_s", t.offset_min},
            {"offset_max_s", t.offset_max}};
}

nlohmann::json cost_json(const CostBreakdown& c) {
    return {{"threads_per_block", c.threads_per_block},
            {"warps_per_block", c.warps_per_block},
            {"segments_per_warp", c.segments_per_warp},
            {"resident_blocks", c.resident_blocks},
            {"total_blocks", c.total_blocks},
            {"rounds", c.rounds},
            {"compute_cycles", c.compute_cycles},
            {"memory_cycles", c.memory_cycles},
            {"hiding_factor", c.hiding_factor},
            {"predicted_time", c.predicted_time}};
}

}  // namespace

void write_report_json(const BenchReport& report, std::ostream& out) {
    nlohmann::json doc;
    doc["device"] = report.device;
    doc["note"] = report.note;
    doc["mode"] = to_string(report.mode);
    doc["rows"] = nlohmann::json::array();
    for (const BenchRow& r : report.rows)
        doc["rows"].push_back({{"tile", to_string(r.tile)},
                               {"scale", r.scale},
                               {"out_width", r.out_width},
                               {"out_height", r.out_height},
                               {"timing", timing_json(r.timing)},
                               {"cost", cost_json(r.cost)}});
    const auto bests = [](const std::vector<ScaleBest>& v) {
        nlohmann::json arr = nlohmann::json::array();
        for (const ScaleBest& b : v)
            arr.push_back({{"scale", b.scale}, {"tile", to_string(b.tile)}});
        return arr;
    };
    doc["best_modeled"] = bests(report.best_modeled);
    doc["best_measured"] = bests(report.best_measured);
    doc["top1_agreement"] = nlohmann::json::array();
    for (const ScaleAgreement& a : report.top1_agreement)
        doc["top1_agreement"].push_back({{"scale", a.scale}, {"agree", a.agree}});
    doc["rejects"] = nlohmann::json::array();
    for (const BenchReject& rej : report.rejects)
        doc["rejects"].push_back(
            {{"scale", rej.scale}, {"tile", to_string(rej.tile)}, {"reason", rej.reason}});
    out << doc.dump(2) << "\n";
}

}  // namespace tileperf
