#pragma once

#include <string_view>
#include <vector>

#include "tileperf/tiling.hpp"

namespace tileperf {

// Flag grammars shared by the CLI subcommands. All throw UsageError on
// malformed input.

// "WxH" with positive decimal integers, e.g. "32x4".
TileDims parse_tile(std::string_view text);

// Comma-separated, no empty items: "32x4,16x8".
std::vector<TileDims> parse_tile_list(std::string_view text);

// "2,4,6" or "2.5,4".
std::vector<double> parse_scale_list(std::string_view text);

// "2,20" — positive integers.
std::vector<int> parse_int_list(std::string_view text);

}  // namespace tileperf
