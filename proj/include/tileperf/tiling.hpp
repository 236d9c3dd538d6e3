#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tileperf/device_model.hpp"
#include "tileperf/interp_core.hpp"

namespace tileperf {

// Block dimensions: bw threads along x, bh along y. One thread per pixel.
struct TileDims {
    int bw = 1;
    int bh = 1;

    bool operator==(const TileDims&) const = default;
};

std::string to_string(TileDims t);  // "32x4"

// Grid decomposition of one output image for a given tile shape.
struct LaunchConfig {
    TileDims tile;
    int grid_x = 0;  // ceil(out_width / bw)
    int grid_y = 0;  // ceil(out_height / bh)
    int out_width = 0;
    int out_height = 0;
};

LaunchConfig grid_for_image(TileDims tile, int out_width, int out_height);

struct PixelCoord {
    int x = 0;
    int y = 0;

    bool operator==(const PixelCoord&) const = default;
};

// p = block_id * block_dim + thread_id, per axis.
// Throws ThreadIdOutOfBlock when (t_x, t_y) is outside the tile.
PixelCoord map_thread_to_pixel(int b_x, int b_y, int t_x, int t_y, TileDims tile);

enum class LaunchViolationKind {
    BlockDimXExceeded,
    BlockDimYExceeded,
    BlockThreadsExceeded,
    GridDimXExceeded,
    GridDimYExceeded,
};

const char* to_string(LaunchViolationKind k);

struct LaunchViolation {
    LaunchViolationKind kind;
    std::int64_t actual;
    std::int64_t limit;

    std::string describe() const;
};

struct ValidationResult {
    std::vector<LaunchViolation> violations;

    bool ok() const { return violations.empty(); }
};

// Check every device limit and return all violations rather than the first.
ValidationResult validate_launch(const DeviceProfile& dev, const LaunchConfig& cfg);

// Thread slots allocated by the grid that map outside the output image
// (edge blocks on non-divisible dimensions).
std::int64_t count_inactive_threads(const LaunchConfig& cfg);

// Visit the in-bounds pixels of one block in row-major slot order
// (t_y outer, t_x inner). fn(p_x, p_y) is called once per active slot.
template <typename Fn>
void visit_block(const LaunchConfig& cfg, int b_x, int b_y, Fn&& fn) {
    const int base_x = b_x * cfg.tile.bw;
    const int base_y = b_y * cfg.tile.bh;
    for (int t_y = 0; t_y < cfg.tile.bh; ++t_y) {
        const int p_y = base_y + t_y;
        if (p_y >= cfg.out_height) break;
        for (int t_x = 0; t_x < cfg.tile.bw; ++t_x) {
            const int p_x = base_x + t_x;
            if (p_x >= cfg.out_width) break;
            fn(p_x, p_y);
        }
    }
}

// Number of worker threads matching the host's hardware parallelism.
unsigned default_workers();

// Tiled resize. Blocks are handed to workers through a shared queue; each
// block writes a disjoint output region, and every pixel goes through the
// same per-pixel kernel as resize_scalar, so the output is bit-identical to
// the scalar reference for any tile shape and worker count.
// workers == 0 selects default_workers().
ImageBuffer resize_tiled(const ImageBuffer& src, double scale, TileDims tile,
                         unsigned workers = 0);

}  // namespace tileperf
