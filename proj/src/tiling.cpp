#include "tileperf/tiling.hpp"

#include <atomic>
#include <thread>

namespace tileperf {

std::string to_string(TileDims t) {
    return std::to_string(t.bw) + "x" + std::to_string(t.bh);
}

const char* to_string(LaunchViolationKind k) {
    switch (k) {
        case LaunchViolationKind::BlockDimXExceeded: return "BlockDimXExceeded";
        case LaunchViolationKind::BlockDimYExceeded: return "BlockDimYExceeded";
        case LaunchViolationKind::BlockThreadsExceeded: return "BlockThreadsExceeded";
        case LaunchViolationKind::GridDimXExceeded: return "GridDimXExceeded";
        case LaunchViolationKind::GridDimYExceeded: return "GridDimYExceeded";
    }
    return "?";
}

std::string LaunchViolation::describe() const {
    const std::string a = std::to_string(actual);
    const std::string l = std::to_string(limit);
    switch (kind) {
        case LaunchViolationKind::BlockDimXExceeded:
            return "block x dimension " + a + " can not be over " + l;
        case LaunchViolationKind::BlockDimYExceeded:
            return "block y dimension " + a + " can not be over " + l;
        case LaunchViolationKind::BlockThreadsExceeded:
            return "threads in a block (" + a + ") can not be over " + l;
        case LaunchViolationKind::GridDimXExceeded:
            return "grid x dimension " + a + " is over the maximum size of " + l;
        case LaunchViolationKind::GridDimYExceeded:
            return "grid y dimension " + a + " is over the maximum size of " + l;
    }
    return std::string(to_string(kind)) + " (" + a + " > " + l + ")";
}

LaunchConfig grid_for_image(TileDims tile, int out_width, int out_height) {
    if (tile.bw < 1 || tile.bh < 1)
        throw InvalidTile("tile dimensions must be >= 1, got " + to_string(tile));
    if (out_width < 1 || out_height < 1)
        throw EmptyOutput("output dimensions must be >= 1");
    LaunchConfig cfg;
    cfg.tile = tile;
    cfg.out_width = out_width;
    cfg.out_height = out_height;
    cfg.grid_x = (out_width + tile.bw - 1) / tile.bw;
    cfg.grid_y = (out_height + tile.bh - 1) / tile.bh;
    return cfg;
}

PixelCoord map_thread_to_pixel(int b_x, int b_y, int t_x, int t_y, TileDims tile) {
    if (t_x < 0 || t_x >= tile.bw || t_y < 0 || t_y >= tile.bh)
        throw ThreadIdOutOfBlock("thread id (" + std::to_string(t_x) + ", " +
                                 std::to_string(t_y) + ") outside tile " + to_string(tile));
    return {b_x * tile.bw + t_x, b_y * tile.bh + t_y};
}

ValidationResult validate_launch(const DeviceProfile& dev, const LaunchConfig& cfg) {
    ValidationResult r;
    const auto check = [&r](LaunchViolationKind kind, std::int64_t actual, std::int64_t limit) {
        if (actual > limit) r.violations.push_back({kind, actual, limit});
    };
    check(LaunchViolationKind::BlockDimXExceeded, cfg.tile.bw, dev.max_block_dim.x);
    check(LaunchViolationKind::BlockDimYExceeded, cfg.tile.bh, dev.max_block_dim.y);
    check(LaunchViolationKind::BlockThreadsExceeded,
          static_cast<std::int64_t>(cfg.tile.bw) * cfg.tile.bh, dev.max_threads_per_block);
    check(LaunchViolationKind::GridDimXExceeded, cfg.grid_x, dev.max_grid_dim.x);
    check(LaunchViolationKind::GridDimYExceeded, cfg.grid_y, dev.max_grid_dim.y);
    return r;
}

std::int64_t count_inactive_threads(const LaunchConfig& cfg) {
    const std::int64_t slots = static_cast<std::int64_t>(cfg.grid_x) * cfg.grid_y *
                               cfg.tile.bw * cfg.tile.bh;
    return slots - static_cast<std::int64_t>(cfg.out_width) * cfg.out_height;
}

unsigned default_workers() {
    const unsigned n = std::thread::hardware_concurrency();
    return n > 0 ? n : 1;
}

ImageBuffer resize_tiled(const ImageBuffer& src, double scale, TileDims tile, unsigned workers) {
    if (tile.bw < 1 || tile.bh < 1)
        throw InvalidTile("tile dimensions must be >= 1, got " + to_string(tile));
    const auto [out_w, out_h] = scaled_dims(src, scale);
    const LaunchConfig cfg = grid_for_image(tile, out_w, out_h);

    ImageBuffer dst(out_w, out_h, src.channels);

    const std::int64_t total_blocks = static_cast<std::int64_t>(cfg.grid_x) * cfg.grid_y;
    if (workers == 0) workers = default_workers();
    const unsigned n_workers =
        static_cast<unsigned>(std::min<std::int64_t>(workers, total_blocks));

    // Shared queue of block indices; blocks write disjoint regions of dst,
    // so workers need no synchronization beyond the claim counter.
    std::atomic<std::int64_t> next_block{0};
    const auto drain = [&] {
        for (;;) {
            const std::int64_t b = next_block.fetch_add(1, std::memory_order_relaxed);
            if (b >= total_blocks) break;
            const int b_x = static_cast<int>(b % cfg.grid_x);
            const int b_y = static_cast<int>(b / cfg.grid_x);
            visit_block(cfg, b_x, b_y,
                        [&](int p_x, int p_y) { render_pixel(src, scale, p_x, p_y, dst); });
        }
    };

    if (n_workers <= 1) {
        drain();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(drain);
        for (auto& t : pool) t.join();
    }
    return dst;
}

}  // namespace tileperf
