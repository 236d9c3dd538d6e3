#include "tileperf/device_model.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tileperf {

const char* to_string(LimitingFactor f) {
    switch (f) {
        case LimitingFactor::BlockSizeInvalid: return "BlockSizeInvalid";
        case LimitingFactor::ThreadsPerSM: return "ThreadsPerSM";
        case LimitingFactor::WarpsPerSM: return "WarpsPerSM";
        case LimitingFactor::RegistersPerSM: return "RegistersPerSM";
        case LimitingFactor::BlocksPerSM: return "BlocksPerSM";
    }
    return "?";
}

namespace {

using nlohmann::json;

std::int64_t require_positive(const json& doc, const char* key) {
    if (!doc.contains(key))
        throw MissingField("profile document is missing field '" + std::string(key) + "'");
    const json& v = doc.at(key);
    if (!v.is_number_integer())
        throw MissingField("profile field '" + std::string(key) +
                           "' is not an integer");
    auto n = v.get<std::int64_t>();
    if (n <= 0)
        throw NonPositiveValue("profile field '" + std::string(key) + "' must be positive, got " +
                               std::to_string(n));
    return n;
}

std::vector<int> require_positive_array(const json& doc, const char* key, std::size_t arity) {
    if (!doc.contains(key))
        throw MissingField("profile document is missing field '" + std::string(key) + "'");
    const json& v = doc.at(key);
    if (!v.is_array() || v.size() != arity)
        throw MissingField("profile field '" + std::string(key) + "' must be an array of " +
                           std::to_string(arity) + " integers");
    std::vector<int> out;
    for (const json& e : v) {
        if (!e.is_number_integer() || e.get<std::int64_t>() <= 0)
            throw NonPositiveValue("profile field '" + std::string(key) +
                                   "' entries must be positive integers");
        out.push_back(e.get<int>());
    }
    return out;
}

}  // namespace

DeviceProfile parse_profile(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw MissingField(std::string("profile document is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw MissingField("profile document must be a JSON object");
    if (!doc.contains("name") || !doc.at("name").is_string())
        throw MissingField("profile document is missing field 'name'");

    DeviceProfile p;
    p.name = doc.at("name").get<std::string>();
    p.regs_per_sm = static_cast<int>(require_positive(doc, "regs_per_sm"));
    p.max_warps_per_sm = static_cast<int>(require_positive(doc, "max_warps_per_sm"));
    p.max_threads_per_sm = static_cast<int>(require_positive(doc, "max_threads_per_sm"));
    p.total_sp = static_cast<int>(require_positive(doc, "total_sp"));
    p.num_sm = static_cast<int>(require_positive(doc, "num_sm"));
    p.warp_size = static_cast<int>(require_positive(doc, "warp_size"));
    p.max_threads_per_block = static_cast<int>(require_positive(doc, "max_threads_per_block"));
    auto bd = require_positive_array(doc, "max_block_dim", 3);
    p.max_block_dim = {bd[0], bd[1], bd[2]};
    auto gd = require_positive_array(doc, "max_grid_dim", 2);
    p.max_grid_dim = {gd[0], gd[1]};
    p.max_blocks_per_sm = static_cast<int>(require_positive(doc, "max_blocks_per_sm"));
    p.global_memory_bytes = require_positive(doc, "global_memory_bytes");

    if (p.total_sp % p.num_sm != 0)
        throw InconsistentTotals("total_sp (" + std::to_string(p.total_sp) +
                                 ") is not divisible by num_sm (" + std::to_string(p.num_sm) +
                                 ")");
    p.cores_per_sm = p.total_sp / p.num_sm;
    return p;
}

DeviceProfile load_profile(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open profile document: " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_profile(text.str());
}

OccupancyReport occupancy(const DeviceProfile& dev, const KernelResources& k) {
    const int T = k.threads_per_block;
    if (T < 1) throw NonPositiveValue("threads_per_block must be >= 1");
    if (k.regs_per_thread < 1) throw NonPositiveValue("regs_per_thread must be >= 1");
    if (T > dev.max_threads_per_block) {
        BlockTooLarge e("block of " + std::to_string(T) + " threads exceeds " + dev.name +
                        " limit of " + std::to_string(dev.max_threads_per_block));
        throw e;
    }

    const int warps_per_block = (T + dev.warp_size - 1) / dev.warp_size;

    // Candidate limits evaluated in the documented tie-break order.
    const std::array<std::pair<LimitingFactor, int>, 4> limits{{
        {LimitingFactor::BlocksPerSM, dev.max_blocks_per_sm},
        {LimitingFactor::ThreadsPerSM, dev.max_threads_per_sm / T},
        {LimitingFactor::WarpsPerSM, dev.max_warps_per_sm / warps_per_block},
        {LimitingFactor::RegistersPerSM, dev.regs_per_sm / (k.regs_per_thread * T)},
    }};

    OccupancyReport r;
    r.resident_blocks = limits[0].second;
    r.limiting_factor = limits[0].first;
    for (const auto& [factor, bound] : limits) {
        if (bound < r.resident_blocks) {
            r.resident_blocks = bound;
            r.limiting_factor = factor;
        }
    }

    if (r.resident_blocks == 0)
        throw ZeroResidency("no block of " + std::to_string(T) + " threads fits on an SM of " +
                                dev.name + " (binding limit: " +
                                to_string(r.limiting_factor) + ")",
                            r.limiting_factor);

    r.active_warps = r.resident_blocks * warps_per_block;
    r.active_threads = r.resident_blocks * T;
    r.occupancy_ratio = static_cast<double>(r.active_warps) / dev.max_warps_per_sm;
    return r;
}

double sensitivity(double loss_per_sm, int num_sm) {
    if (loss_per_sm < 0.0 || loss_per_sm > 1.0)
        throw OutOfRange("loss_per_sm must lie in [0, 1], got " + std::to_string(loss_per_sm));
    if (num_sm < 1) throw OutOfRange("num_sm must be >= 1, got " + std::to_string(num_sm));
    return loss_per_sm / num_sm;
}

}  // namespace tileperf
