#include "tileperf/cost_model.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tileperf {

namespace {

using nlohmann::json;

void read_number(const json& doc, const char* key, double& out) {
    if (!doc.contains(key)) return;
    const json& v = doc.at(key);
    if (!v.is_number())
        throw NonPositiveValue("cost param '" + std::string(key) + "' must be a number");
    out = v.get<double>();
}

}  // namespace

CostParams parse_cost_params(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw MissingField(std::string("cost params document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw MissingField("cost params document must be a JSON object");

    CostParams p;
    read_number(doc, "c_issue", p.c_issue);
    read_number(doc, "c_access", p.c_access);
    read_number(doc, "c_trans", p.c_trans);
    read_number(doc, "w_hide", p.w_hide);
    read_number(doc, "c_block", p.c_block);
    if (doc.contains("regs_per_thread")) {
        const json& v = doc.at("regs_per_thread");
        if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
            throw NonPositiveValue("cost param 'regs_per_thread' must be a positive integer");
        p.regs_per_thread = v.get<int>();
    }
    if (p.c_issue <= 0 || p.c_access <= 0 || p.c_trans <= 0 || p.w_hide <= 0)
        throw NonPositiveValue("cost params c_issue/c_access/c_trans/w_hide must be positive");
    if (p.c_block < 0) throw NonPositiveValue("cost param 'c_block' must be >= 0");
    return p;
}

CostParams load_cost_params(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open cost params document: " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_cost_params(text.str());
}

CostBreakdown predict(const DeviceProfile& dev, TileDims tile, int out_width, int out_height,
                      const CostParams& p) {
    if (tile.bw < 1 || tile.bh < 1 || tile.bw > dev.max_block_dim.x ||
        tile.bh > dev.max_block_dim.y ||
        static_cast<std::int64_t>(tile.bw) * tile.bh > dev.max_threads_per_block)
        throw InvalidTile("tile " + to_string(tile) + " violates " + dev.name +
                          " block limits");

    CostBreakdown b;
    b.threads_per_block = tile.bw * tile.bh;
    b.warps_per_block = (b.threads_per_block + dev.warp_size - 1) / dev.warp_size;
    const int span = std::min(tile.bw, dev.warp_size);
    b.segments_per_warp = (dev.warp_size + span - 1) / span;

    const OccupancyReport occ =
        occupancy(dev, {.regs_per_thread = p.regs_per_thread,
                        .threads_per_block = b.threads_per_block});
    b.resident_blocks = occ.resident_blocks;

    const LaunchConfig cfg = grid_for_image(tile, out_width, out_height);
    b.total_blocks = static_cast<std::int64_t>(cfg.grid_x) * cfg.grid_y;
    const std::int64_t capacity = static_cast<std::int64_t>(dev.num_sm) * b.resident_blocks;
    b.rounds = (b.total_blocks + capacity - 1) / capacity;

    const std::int64_t issues =
        static_cast<std::int64_t>(b.resident_blocks) * b.warps_per_block * dev.warp_size;
    const std::int64_t issue_cycles = (issues + dev.cores_per_sm - 1) / dev.cores_per_sm;
    b.compute_cycles = static_cast<double>(issue_cycles) * p.c_issue +
                       b.resident_blocks * p.c_block;

    b.hiding_factor =
        std::min(1.0, b.resident_blocks * b.warps_per_block / p.w_hide);
    b.memory_cycles = b.resident_blocks *
                      (b.warps_per_block * b.segments_per_warp * p.c_trans +
                       b.threads_per_block * p.c_access) /
                      b.hiding_factor;

    b.predicted_time = static_cast<double>(b.rounds) * (b.compute_cycles + b.memory_cycles);
    return b;
}

Ranking rank_tilings(const DeviceProfile& dev, std::span<const TileDims> candidates,
                     int out_width, int out_height, const CostParams& p) {
    if (candidates.empty()) throw NoValidCandidate("empty candidate list");

    Ranking r;
    for (const TileDims& tile : candidates) {
        if (tile.bw < 1 || tile.bh < 1) {
            r.rejects.push_back({tile, "tile dimensions must be >= 1"});
            continue;
        }
        const ValidationResult v = validate_launch(dev, grid_for_image(tile, out_width, out_height));
        if (!v.ok()) {
            std::string reason;
            for (const LaunchViolation& viol : v.violations) {
                if (!reason.empty()) reason += "; ";
                reason += viol.describe();
            }
            r.rejects.push_back({tile, reason});
            continue;
        }
        try {
            r.entries.push_back({tile, predict(dev, tile, out_width, out_height, p)});
        } catch (const ZeroResidency& e) {
            r.rejects.push_back({tile, e.what()});
        }
    }
    if (r.entries.empty())
        throw NoValidCandidate("no candidate passed validation for device " + dev.name);

    std::stable_sort(r.entries.begin(), r.entries.end(),
                     [](const RankedTile& a, const RankedTile& b) {
                         if (a.cost.predicted_time != b.cost.predicted_time)
                             return a.cost.predicted_time < b.cost.predicted_time;
                         if (a.tile.bw != b.tile.bw) return a.tile.bw > b.tile.bw;
                         return a.tile.bh < b.tile.bh;
                     });
    return r;
}

double spread(const DeviceProfile& dev, std::span<const TileDims> candidates, int out_width,
              int out_height, const CostParams& p) {
    const Ranking r = rank_tilings(dev, candidates, out_width, out_height, p);
    if (r.entries.size() < 2)
        throw NoValidCandidate("spread needs at least two valid candidates");
    return r.entries.back().cost.predicted_time / r.entries.front().cost.predicted_time;
}

}  // namespace tileperf
