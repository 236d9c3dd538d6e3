#include "tileperf/cli_parse.hpp"

#include <charconv>
#include <string>

namespace tileperf {

namespace {

int parse_positive_int(std::string_view text, std::string_view what) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.begin(), text.end(), value);
    if (ec != std::errc{} || ptr != text.end() || value < 1)
        throw UsageError("expected a positive integer for " + std::string(what) + ", got '" +
                         std::string(text) + "'");
    return value;
}

std::vector<std::string_view> split_list(std::string_view text) {
    std::vector<std::string_view> items;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        items.push_back(text.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    for (std::string_view item : items)
        if (item.empty()) throw UsageError("empty item in list '" + std::string(text) + "'");
    return items;
}

}  // namespace

TileDims parse_tile(std::string_view text) {
    const std::size_t x = text.find('x');
    if (x == std::string_view::npos || x == 0 || x == text.size() - 1)
        throw UsageError("expected tile as WxH (e.g. 32x4), got '" + std::string(text) + "'");
    return {parse_positive_int(text.substr(0, x), "tile width"),
            parse_positive_int(text.substr(x + 1), "tile height")};
}

std::vector<TileDims> parse_tile_list(std::string_view text) {
    std::vector<TileDims> tiles;
    for (std::string_view item : split_list(text)) tiles.push_back(parse_tile(item));
    return tiles;
}

std::vector<double> parse_scale_list(std::string_view text) {
    std::vector<double> scales;
    for (std::string_view item : split_list(text)) {
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(item.begin(), item.end(), value);
        if (ec != std::errc{} || ptr != item.end() || !(value > 0.0))
            throw UsageError("expected a positive scale, got '" + std::string(item) + "'");
        scales.push_back(value);
    }
    return scales;
}

std::vector<int> parse_int_list(std::string_view text) {
    std::vector<int> values;
    for (std::string_view item : split_list(text))
        values.push_back(parse_positive_int(item, "list item"));
    return values;
}

}  // namespace tileperf
