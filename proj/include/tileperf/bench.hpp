#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tileperf/cost_model.hpp"
#include "tileperf/device_model.hpp"
#include "tileperf/interp_core.hpp"
#include "tileperf/tiling.hpp"

namespace tileperf {

// ---------------------------------------------------------------------------
// Measurement protocol: warmup runs, then groups x runs_per_group timed
// executions (defaults: 10 groups of 100, i.e. averages of 1000 runs).
// ---------------------------------------------------------------------------
struct MeasurementPlan {
    int groups = 10;
    int runs_per_group = 100;
    int warmup_runs = 3;
    unsigned workers = 0;  // 0 selects default_workers()
};

struct TimingStats {
    std::vector<double> group_means;  // seconds, one per group
    int runs_per_group = 0;
    double grand_mean = 0.0;
    double min_run = 0.0;
    double max_run = 0.0;
    double offset_max = 0.0;  // max_run - grand_mean
    double offset_min = 0.0;  // grand_mean - min_run

    bool measured() const { return !group_means.empty(); }
};

struct MeasurementRun {
    TimingStats stats;
    ImageBuffer final_output;  // retained for verification against the scalar oracle
};

// Time resize_tiled over the plan. Only the tiled execution is inside the
// timed region; image I/O and statistics are outside.
MeasurementRun measure(const ImageBuffer& src, double scale, TileDims tile,
                       const MeasurementPlan& plan = {});

enum class AutotuneMode { Model, Measure, Both };

struct BenchRow {
    TileDims tile;
    double scale = 0.0;
    int out_width = 0;
    int out_height = 0;
    TimingStats timing;  // empty unless the mode measures
    CostBreakdown cost;
};

struct ScaleBest {
    double scale;
    TileDims tile;
};

struct ScaleAgreement {
    double scale;
    bool agree;
};

struct BenchReject {
    double scale;
    TileDims tile;
    std::string reason;
};

struct BenchReport {
    std::string device;
    std::string note;  // measurement caveat, repeated in every serialization
    AutotuneMode mode = AutotuneMode::Model;
    std::vector<BenchRow> rows;         // per scale, in modeled rank order
    std::vector<ScaleBest> best_modeled;
    std::vector<ScaleBest> best_measured;
    std::vector<ScaleAgreement> top1_agreement;  // only when both rankings exist
    std::vector<BenchReject> rejects;
};

// The sweep evaluated when no explicit candidate list is given.
std::vector<TileDims> default_candidates();

// ---------------------------------------------------------------------------
// Evaluate every (scale, candidate) pair on one device. Output sizes derive
// from the source extent; the pixel data itself is only needed when the mode
// measures (Model mode can run from the extent alone). In measuring modes
// every retained output is checked against the scalar oracle.
// ---------------------------------------------------------------------------
BenchReport autotune(const DeviceProfile& dev, int src_width, int src_height,
                     const ImageBuffer* src, std::span<const double> scales,
                     std::span<const TileDims> candidates, const CostParams& params,
                     AutotuneMode mode, const MeasurementPlan& plan = {});

BenchReport autotune(const DeviceProfile& dev, const ImageBuffer& src,
                     std::span<const double> scales, std::span<const TileDims> candidates,
                     const CostParams& params, AutotuneMode mode,
                     const MeasurementPlan& plan = {});

// Fixed column order, documented by the header row; a '#' note line precedes
// it. Unmeasured timing cells are left empty.
void write_report_csv(const BenchReport& report, std::ostream& out);
void write_report_json(const BenchReport& report, std::ostream& out);

const char* to_string(AutotuneMode m);

}  // namespace tileperf
