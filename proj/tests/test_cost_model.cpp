#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "model_oracle.hpp"
#include "tileperf/cost_model.hpp"

using namespace tileperf;

namespace {

DeviceProfile gtx260() {
    return load_profile(std::string(TILEPERF_DATA_DIR) + "/gtx260.json");
}
DeviceProfile gf8800gts() {
    return load_profile(std::string(TILEPERF_DATA_DIR) + "/gf8800gts.json");
}

const std::vector<TileDims> kSweep = {{8, 8},   {16, 8}, {8, 16}, {32, 4},  {4, 32},
                                      {16, 16}, {32, 8}, {8, 32}, {32, 16}, {16, 32}};

}  // namespace

TEST_CASE("cost params parse with defaults and validation") {
    const CostParams d = parse_cost_params("{}");
    CHECK(d.c_issue == 1.0);
    CHECK(d.c_access == 1.0);
    CHECK(d.c_trans == 32.0);
    CHECK(d.regs_per_thread == 10);
    CHECK(d.w_hide == 24.0);
    CHECK(d.c_block == 0.0);

    const CostParams p =
        parse_cost_params(R"({"c_trans": 64, "w_hide": 48, "regs_per_thread": 16})");
    CHECK(p.c_trans == 64.0);
    CHECK(p.w_hide == 48.0);
    CHECK(p.regs_per_thread == 16);
    CHECK(p.c_issue == 1.0);

    CHECK_THROWS_AS(parse_cost_params(R"({"c_trans": 0})"), NonPositiveValue);
    CHECK_THROWS_AS(parse_cost_params(R"({"c_block": -1})"), NonPositiveValue);
    CHECK_THROWS_AS(parse_cost_params(R"({"regs_per_thread": 2.5})"), NonPositiveValue);
    CHECK_THROWS_AS(parse_cost_params("nope"), MissingField);

    const CostParams f =
        load_cost_params(std::string(TILEPERF_DATA_DIR) + "/cost_params_default.json");
    CHECK(f.c_trans == 32.0);
    CHECK(f.w_hide == 24.0);
}

TEST_CASE("a wide tile on the GTX 260 at 4800x4800") {
    const CostBreakdown b = predict(gtx260(), {32, 4}, 4800, 4800);
    CHECK(b.threads_per_block == 128);
    CHECK(b.warps_per_block == 4);
    CHECK(b.segments_per_warp == 1);
    CHECK(b.resident_blocks == 8);
    CHECK(b.total_blocks == 180000);
    CHECK(b.rounds == 938);
    CHECK(b.compute_cycles == 128.0);
    CHECK(b.hiding_factor == 1.0);
    CHECK(b.memory_cycles == 2048.0);
    CHECK(b.predicted_time == 2041088.0);
}

TEST_CASE("frozen predictions across tiles and devices at 4800x4800") {
    const DeviceProfile gtx = gtx260();
    const DeviceProfile gts = gf8800gts();

    const CostBreakdown tall = predict(gtx, {4, 32}, 4800, 4800);
    CHECK(tall.segments_per_warp == 8);
    CHECK(tall.memory_cycles == 9216.0);
    CHECK(tall.predicted_time == 8764672.0);

    const CostBreakdown gts_wide = predict(gts, {32, 4}, 4800, 4800);
    CHECK(gts_wide.rounds == 2500);
    CHECK(gts_wide.compute_cycles == 96.0);
    CHECK(gts_wide.memory_cycles == 1536.0);
    CHECK(gts_wide.predicted_time == 4080000.0);

    const CostBreakdown gts_big = predict(gts, {32, 16}, 4800, 4800);
    CHECK(gts_big.resident_blocks == 1);
    CHECK(gts_big.hiding_factor == 16.0 / 24.0);
    CHECK(gts_big.rounds == 3750);
    CHECK(gts_big.compute_cycles == 64.0);
    CHECK(gts_big.memory_cycles == 1536.0);
    CHECK(gts_big.predicted_time == 6000000.0);

    CHECK(predict(gtx, {8, 4}, 4800, 4800).predicted_time == 14520000.0);
    CHECK(predict(gtx, {4, 8}, 4800, 4800).predicted_time == 26040000.0);
    CHECK(predict(gts, {8, 4}, 4800, 4800).predicted_time == 29040000.0);
    CHECK(predict(gts, {4, 8}, 4800, 4800).predicted_time == 52080000.0);

    const CostBreakdown unit = predict(gtx, {1, 1}, 4800, 4800);
    CHECK(unit.segments_per_warp == 32);
    CHECK(unit.predicted_time == 2955840000.0);
}

TEST_CASE("predictions agree with the plain-arithmetic route") {
    const DeviceProfile gtx = gtx260();
    const DeviceProfile gts = gf8800gts();
    for (const DeviceProfile* dev : {&gtx, &gts})
        for (const int size : {4800, 6400, 8000})
            for (const TileDims tile : kSweep) {
                const CostBreakdown b = predict(*dev, tile, size, size);
                CHECK(b.predicted_time ==
                      oracle::predicted_time(*dev, tile.bw, tile.bh, size, size));
            }
}

TEST_CASE("breakdown invariants hold for random valid tiles") {
    const DeviceProfile gtx = gtx260();
    const DeviceProfile gts = gf8800gts();
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> dim(1, 64);
    std::uniform_int_distribution<int> size(16, 3000);

    int checked = 0;
    while (checked < 200) {
        const TileDims tile{dim(rng), dim(rng)};
        if (tile.bw * tile.bh > 512) continue;
        const int w = size(rng), h = size(rng);
        for (const DeviceProfile* dev : {&gtx, &gts}) {
            const CostBreakdown b = predict(*dev, tile, w, h);
            CHECK(b.predicted_time > 0.0);
            CHECK(b.predicted_time ==
                  static_cast<double>(b.rounds) * (b.compute_cycles + b.memory_cycles));
            CHECK(b.hiding_factor > 0.0);
            CHECK(b.hiding_factor <= 1.0);
            CHECK(b.rounds >= 1);
            CHECK(b.predicted_time == oracle::predicted_time(*dev, tile.bw, tile.bh, w, h));
        }
        ++checked;
    }
}

TEST_CASE("more SMs never slow the prediction down") {
    DeviceProfile dev = gtx260();
    std::mt19937 rng(8);
    std::uniform_int_distribution<int> dim(1, 32);
    int checked = 0;
    while (checked < 50) {
        const TileDims tile{dim(rng), dim(rng)};
        if (tile.bw * tile.bh > dev.max_threads_per_block) continue;
        ++checked;
        DeviceProfile more = dev;
        more.num_sm = dev.num_sm * 2;
        more.total_sp = dev.total_sp * 2;  // keep cores_per_sm fixed
        const double base = predict(dev, tile, 1600, 1600).predicted_time;
        const double scaled = predict(more, tile, 1600, 1600).predicted_time;
        CHECK(scaled <= base);
    }
}

TEST_CASE("wider tiles beat taller tiles of the same area") {
    const DeviceProfile gtx = gtx260();
    const DeviceProfile gts = gf8800gts();
    for (const DeviceProfile* dev : {&gtx, &gts})
        for (const int size : {4800, 6400, 8000})
            CHECK(predict(*dev, {8, 4}, size, size).predicted_time <
                  predict(*dev, {4, 8}, size, size).predicted_time);
}

TEST_CASE("invalid tiles and zero residency are reported") {
    const DeviceProfile gtx = gtx260();
    CHECK_THROWS_AS(predict(gtx, {32, 17}, 4800, 4800), InvalidTile);
    CHECK_THROWS_AS(predict(gtx, {513, 1}, 4800, 4800), InvalidTile);
    CHECK_THROWS_AS(predict(gtx, {0, 4}, 4800, 4800), InvalidTile);
    CHECK_THROWS_AS(predict(gtx, {16, 32}, 4800, 4800, {.regs_per_thread = 33}),
                    ZeroResidency);
}

TEST_CASE("candidates rank ascending with a deterministic tie order") {
    const DeviceProfile gtx = gtx260();
    const DeviceProfile gts = gf8800gts();

    const TileDims pair_a[] = {{4, 32}, {32, 4}};
    CHECK(rank_tilings(gtx, pair_a, 4800, 4800).entries.front().tile == TileDims{32, 4});

    const TileDims pair_b[] = {{32, 16}, {32, 4}};
    CHECK(rank_tilings(gts, pair_b, 4800, 4800).entries.front().tile == TileDims{32, 4});

    const TileDims single[] = {{16, 16}};
    CHECK(rank_tilings(gtx, single, 800, 800).entries.front().tile == TileDims{16, 16});

    // all three tie at 2041088 on the GTX 260; order falls back to bw desc, bh asc
    const TileDims ties[] = {{32, 16}, {16, 32}, {32, 8}, {32, 4}};
    const Ranking r = rank_tilings(gtx, ties, 4800, 4800);
    REQUIRE(r.entries.size() == 4);
    CHECK(r.entries[0].tile == TileDims{32, 4});
    CHECK(r.entries[1].tile == TileDims{32, 8});
    CHECK(r.entries[2].tile == TileDims{32, 16});
    CHECK(r.entries[3].tile == TileDims{16, 32});
    for (std::size_t i = 1; i < r.entries.size(); ++i)
        CHECK(r.entries[i - 1].cost.predicted_time <= r.entries[i].cost.predicted_time);
}

TEST_CASE("invalid candidates are reported, not dropped") {
    const DeviceProfile gtx = gtx260();
    const TileDims mixed[] = {{32, 17}, {8, 8}, {0, 4}};
    const Ranking r = rank_tilings(gtx, mixed, 800, 800);
    CHECK(r.entries.size() == 1);
    REQUIRE(r.rejects.size() == 2);
    CHECK(r.rejects[0].tile == TileDims{32, 17});
    CHECK(r.rejects[0].reason.find("can not be over 512") != std::string::npos);
    CHECK(r.rejects[1].tile == TileDims{0, 4});

    const TileDims none[] = {{32, 17}, {513, 1}};
    CHECK_THROWS_AS(rank_tilings(gtx, none, 800, 800), NoValidCandidate);
    CHECK_THROWS_AS(rank_tilings(gtx, {}, 800, 800), NoValidCandidate);
}

TEST_CASE("spread measures the jaggedness of the tile response") {
    const DeviceProfile gtx = gtx260();
    const DeviceProfile gts = gf8800gts();

    const TileDims same[] = {{32, 4}, {32, 4}};
    CHECK(spread(gtx, same, 4800, 4800) == 1.0);

    const TileDims family[] = {{32, 4}, {32, 8}, {32, 16}};
    CHECK(spread(gtx, family, 4800, 4800) == 1.0);
    CHECK(spread(gts, family, 4800, 4800) == 6000000.0 / 4080000.0);
    CHECK(spread(gts, family, 4800, 4800) > spread(gtx, family, 4800, 4800));

    const TileDims seg_pair[] = {{32, 4}, {4, 32}};
    CHECK(spread(gtx, seg_pair, 4800, 4800) > 1.0);
    CHECK(spread(gts, seg_pair, 4800, 4800) > 1.0);

    const TileDims lonely[] = {{32, 4}, {32, 17}};
    CHECK_THROWS_AS(spread(gtx, lonely, 4800, 4800), NoValidCandidate);
}
