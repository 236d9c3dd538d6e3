#include "tileperf/interp_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tileperf {

SourceCoord map_final_to_source(double x_f, double y_f, double scale) {
    if (!(scale > 0.0)) throw NonPositiveScale("scale must be positive, got " + std::to_string(scale));
    return {x_f / scale, y_f / scale};
}

SourceCoord clamp_to_source(SourceCoord p, int src_width, int src_height) {
    p.x_p = std::clamp(p.x_p, 0.0, static_cast<double>(src_width - 1));
    p.y_p = std::clamp(p.y_p, 0.0, static_cast<double>(src_height - 1));
    return p;
}

NeighborSet neighbors_and_offsets(const SourceCoord& p, int src_width, int src_height) {
    NeighborSet n;
    n.x1 = static_cast<int>(std::floor(p.x_p));
    n.y1 = static_cast<int>(std::floor(p.y_p));
    n.x2 = std::min(n.x1 + 1, src_width - 1);
    n.y3 = std::min(n.y1 + 1, src_height - 1);
    n.x3 = n.x1;
    n.y2 = n.y1;
    n.x4 = n.x2;
    n.y4 = n.y3;
    n.offset_x = p.x_p - n.x1;
    n.offset_y = p.y_p - n.y1;
    return n;
}

double blend(const NeighborSet& n, double f1, double f2, double f3, double f4) {
    const double ox = n.offset_x;
    const double oy = n.offset_y;
    return (1.0 - oy) * (ox * f2 + (1.0 - ox) * f1) + oy * (ox * f4 + (1.0 - ox) * f3);
}

std::uint8_t quantize(double v) {
    const double r = std::floor(v + 0.5);
    return static_cast<std::uint8_t>(std::clamp(r, 0.0, 255.0));
}

std::pair<int, int> scaled_dims(const ImageBuffer& src, double scale) {
    if (!(scale > 0.0)) throw NonPositiveScale("scale must be positive, got " + std::to_string(scale));
    const int out_w = static_cast<int>(std::floor(src.width * scale));
    const int out_h = static_cast<int>(std::floor(src.height * scale));
    if (out_w < 1 || out_h < 1)
        throw EmptyOutput("scaled output would be " + std::to_string(out_w) + "x" +
                          std::to_string(out_h));
    return {out_w, out_h};
}

void render_pixel(const ImageBuffer& src, double scale, int x_f, int y_f, ImageBuffer& dst) {
    const SourceCoord p =
        clamp_to_source(map_final_to_source(x_f, y_f, scale), src.width, src.height);
    const NeighborSet n = neighbors_and_offsets(p, src.width, src.height);
    for (int c = 0; c < src.channels; ++c) {
        const double v = blend(n, src.at(n.x1, n.y1, c), src.at(n.x2, n.y2, c),
                               src.at(n.x3, n.y3, c), src.at(n.x4, n.y4, c));
        dst.at(x_f, y_f, c) = quantize(v);
    }
}

ImageBuffer resize_scalar(const ImageBuffer& src, double scale) {
    const auto [out_w, out_h] = scaled_dims(src, scale);
    ImageBuffer dst(out_w, out_h, src.channels);
    for (int y = 0; y < out_h; ++y)
        for (int x = 0; x < out_w; ++x)
            render_pixel(src, scale, x, y, dst);
    return dst;
}

}  // namespace tileperf
