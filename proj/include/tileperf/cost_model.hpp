#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "tileperf/device_model.hpp"
#include "tileperf/tiling.hpp"

namespace tileperf {

// ---------------------------------------------------------------------------
// Constants of the analytic cost model. Units are abstract cycles; only
// ratios and orderings of predicted times are meaningful. Constants are data
// so calibration never touches code.
// ---------------------------------------------------------------------------
struct CostParams {
    double c_issue = 1.0;    // cycles per warp-instruction issue
    double c_access = 1.0;   // cycles of per-thread access bookkeeping
    double c_trans = 32.0;   // cycles per memory transaction (one row segment)
    int regs_per_thread = 10;
    double w_hide = 24.0;    // active warps needed to fully hide memory latency
    double c_block = 0.0;    // optional per-resident-block scheduling overhead
};

CostParams load_cost_params(const std::filesystem::path& path);
CostParams parse_cost_params(const std::string& json_text);

// Full decomposition of one prediction, reproducible from its inputs.
struct CostBreakdown {
    int threads_per_block = 0;      // T = bw * bh
    int warps_per_block = 0;        // ceil(T / warp_size)
    int segments_per_warp = 0;      // ceil(warp_size / min(bw, warp_size))
    int resident_blocks = 0;        // occupancy residency R
    std::int64_t total_blocks = 0;  // grid_x * grid_y
    std::int64_t rounds = 0;        // ceil(total_blocks / (num_sm * R))
    double compute_cycles = 0.0;
    double memory_cycles = 0.0;
    double hiding_factor = 0.0;     // min(1, R * wpb / w_hide)
    double predicted_time = 0.0;    // rounds * (compute_cycles + memory_cycles)
};

// ---------------------------------------------------------------------------
// Predict relative execution time of a (device, tile, output size) triple.
//
// Per round, each SM issues R resident blocks. Compute cost is the warp
// instruction issues spread over the SM's cores; memory cost charges one
// transaction per row segment a warp touches plus per-thread bookkeeping,
// inflated when too few warps are active to hide latency:
//
//   compute = ceil(R * wpb * warp_size / cores_per_sm) * c_issue + R * c_block
//   h       = min(1, R * wpb / w_hide)
//   memory  = R * (wpb * seg * c_trans + T * c_access) / h
//   time    = rounds * (compute + memory)
//
// Narrow tiles (bw < warp_size) split each warp into seg row segments, so
// row-crossing cost falls as bw grows. Throws InvalidTile when the tile
// violates the device's block limits, ZeroResidency from occupancy.
// ---------------------------------------------------------------------------
CostBreakdown predict(const DeviceProfile& dev, TileDims tile, int out_width, int out_height,
                      const CostParams& p = {});

struct RankedTile {
    TileDims tile;
    CostBreakdown cost;
};

struct RejectedTile {
    TileDims tile;
    std::string reason;
};

struct Ranking {
    std::vector<RankedTile> entries;   // ascending predicted_time
    std::vector<RejectedTile> rejects; // invalid candidates, never dropped
};

// Rank candidates by predicted time, ascending. Ties break by bw descending
// then bh ascending so the order is total and deterministic.
// Throws NoValidCandidate when nothing survives validation.
Ranking rank_tilings(const DeviceProfile& dev, std::span<const TileDims> candidates,
                     int out_width, int out_height, const CostParams& p = {});

// max/min predicted time over the valid candidates: how jagged the device's
// response to tile choice is. Requires at least two valid candidates.
double spread(const DeviceProfile& dev, std::span<const TileDims> candidates, int out_width,
              int out_height, const CostParams& p = {});

}  // namespace tileperf
