#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "tileperf/errors.hpp"

namespace tileperf {

struct Dim3 {
    int x = 0;
    int y = 0;
    int z = 0;
};

struct Dim2 {
    int x = 0;
    int y = 0;
};

// ---------------------------------------------------------------------------
// Per-SM capability limits of one device. Loaded from a flat JSON document;
// cores_per_sm is derived (total_sp / num_sm), never read from the file.
// ---------------------------------------------------------------------------
struct DeviceProfile {
    std::string name;
    int regs_per_sm = 0;
    int max_warps_per_sm = 0;
    int max_threads_per_sm = 0;
    int total_sp = 0;
    int num_sm = 0;
    int cores_per_sm = 0;  // total_sp / num_sm
    int warp_size = 0;
    int max_threads_per_block = 0;
    Dim3 max_block_dim;
    Dim2 max_grid_dim;
    int max_blocks_per_sm = 0;
    std::int64_t global_memory_bytes = 0;
};

// Per-kernel resource demand; together with a profile this fixes residency.
struct KernelResources {
    int regs_per_thread = 10;
    int threads_per_block = 1;
};

enum class LimitingFactor {
    BlockSizeInvalid,
    ThreadsPerSM,
    WarpsPerSM,
    RegistersPerSM,
    BlocksPerSM,
};

const char* to_string(LimitingFactor f);

struct OccupancyReport {
    int resident_blocks = 0;
    int active_warps = 0;
    int active_threads = 0;
    double occupancy_ratio = 0.0;  // active_warps / max_warps_per_sm
    LimitingFactor limiting_factor = LimitingFactor::BlockSizeInvalid;
};

// Block does not fit the device at all (threads_per_block over the hard cap).
struct BlockTooLarge final : Error {
    explicit BlockTooLarge(const std::string& msg)
        : Error(ErrorCode::BlockTooLarge, msg) {}
    LimitingFactor factor = LimitingFactor::BlockSizeInvalid;
};

// Block fits a launch but zero copies fit on an SM (e.g. register-starved).
struct ZeroResidency final : Error {
    ZeroResidency(const std::string& msg, LimitingFactor f)
        : Error(ErrorCode::ZeroResidency, msg), factor(f) {}
    LimitingFactor factor;
};

// ---------------------------------------------------------------------------
// Parse and validate a device profile document.
//
// Required keys: name, regs_per_sm, max_warps_per_sm, max_threads_per_sm,
// total_sp, num_sm, warp_size, max_threads_per_block, max_block_dim [x,y,z],
// max_grid_dim [x,y], max_blocks_per_sm, global_memory_bytes.
// ---------------------------------------------------------------------------
DeviceProfile load_profile(const std::filesystem::path& path);
DeviceProfile parse_profile(const std::string& json_text);

// ---------------------------------------------------------------------------
// Blocks resident per SM under the simultaneous limits:
//
//   resident = min( max_blocks_per_sm,
//                   floor(max_threads_per_sm / T),
//                   floor(max_warps_per_sm / ceil(T / warp_size)),
//                   floor(regs_per_sm / (regs_per_thread * T)) )
//
// limiting_factor names the first limit (in the order above) that attains
// the minimum, so reports are deterministic under ties.
// Throws BlockTooLarge when T exceeds max_threads_per_block and
// ZeroResidency when the minimum is zero.
// ---------------------------------------------------------------------------
OccupancyReport occupancy(const DeviceProfile& dev, const KernelResources& k);

// Fraction of total efficiency lost when one SM's worth of work loses
// loss_per_sm: the loss divided across num_sm parallel SMs. More SMs means
// less dependence on any single block-shape choice.
double sensitivity(double loss_per_sm, int num_sm);

}  // namespace tileperf
