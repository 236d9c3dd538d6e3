#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tileperf/cli_parse.hpp"

using namespace tileperf;

TEST_CASE("tiles parse as WxH") {
    CHECK(parse_tile("32x4") == TileDims{32, 4});
    CHECK(parse_tile("1x1") == TileDims{1, 1});
    CHECK(parse_tile("512x512") == TileDims{512, 512});
}

TEST_CASE("malformed tiles are rejected") {
    CHECK_THROWS_AS(parse_tile(""), UsageError);
    CHECK_THROWS_AS(parse_tile("32"), UsageError);
    CHECK_THROWS_AS(parse_tile("x4"), UsageError);
    CHECK_THROWS_AS(parse_tile("32x"), UsageError);
    CHECK_THROWS_AS(parse_tile("0x4"), UsageError);
    CHECK_THROWS_AS(parse_tile("32x0"), UsageError);
    CHECK_THROWS_AS(parse_tile("-4x8"), UsageError);
    CHECK_THROWS_AS(parse_tile("axb"), UsageError);
    CHECK_THROWS_AS(parse_tile("32X4"), UsageError);
    CHECK_THROWS_AS(parse_tile("8x4x2"), UsageError);
    CHECK_THROWS_AS(parse_tile("8 x 4"), UsageError);
    CHECK_THROWS_AS(parse_tile("3.5x4"), UsageError);
}

TEST_CASE("tile lists split on commas") {
    const auto tiles = parse_tile_list("32x4,16x8,8x8");
    REQUIRE(tiles.size() == 3);
    CHECK(tiles[0] == TileDims{32, 4});
    CHECK(tiles[1] == TileDims{16, 8});
    CHECK(tiles[2] == TileDims{8, 8});
    CHECK(parse_tile_list("1x1").size() == 1);

    CHECK_THROWS_AS(parse_tile_list(""), UsageError);
    CHECK_THROWS_AS(parse_tile_list("32x4,,8x8"), UsageError);
    CHECK_THROWS_AS(parse_tile_list("32x4,"), UsageError);
    CHECK_THROWS_AS(parse_tile_list("32x4,0x8"), UsageError);
}

TEST_CASE("scale lists accept decimals") {
    const auto scales = parse_scale_list("2,4,6");
    REQUIRE(scales.size() == 3);
    CHECK(scales[0] == 2.0);
    CHECK(scales[2] == 6.0);
    const auto dec = parse_scale_list("2.5,0.5");
    CHECK(dec[0] == 2.5);
    CHECK(dec[1] == 0.5);

    CHECK_THROWS_AS(parse_scale_list("0"), UsageError);
    CHECK_THROWS_AS(parse_scale_list("-1"), UsageError);
    CHECK_THROWS_AS(parse_scale_list("abc"), UsageError);
    CHECK_THROWS_AS(parse_scale_list("2,"), UsageError);
    CHECK_THROWS_AS(parse_scale_list("2;4"), UsageError);
}

TEST_CASE("integer lists require positive entries") {
    const auto sms = parse_int_list("2,20");
    REQUIRE(sms.size() == 2);
    CHECK(sms[0] == 2);
    CHECK(sms[1] == 20);

    CHECK_THROWS_AS(parse_int_list("0"), UsageError);
    CHECK_THROWS_AS(parse_int_list("-2"), UsageError);
    CHECK_THROWS_AS(parse_int_list("2.5"), UsageError);
    CHECK_THROWS_AS(parse_int_list("two"), UsageError);
    CHECK_THROWS_AS(parse_int_list(""), UsageError);
}
