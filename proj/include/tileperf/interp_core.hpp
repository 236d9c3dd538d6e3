#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tileperf/errors.hpp"

namespace tileperf {

// ---------------------------------------------------------------------------
// Row-major 8-bit raster, 1 (gray) or 3 (RGB) interleaved channels.
// x indexes columns, y indexes rows.
// ---------------------------------------------------------------------------
struct ImageBuffer {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<std::uint8_t> samples;  // width * height * channels

    ImageBuffer() = default;
    ImageBuffer(int w, int h, int ch)
        : width(w), height(h), channels(ch),
          samples(static_cast<std::size_t>(w) * h * ch, 0) {}

    std::size_t index(int x, int y, int c = 0) const {
        return (static_cast<std::size_t>(y) * width + x) * channels + c;
    }
    std::uint8_t at(int x, int y, int c = 0) const { return samples[index(x, y, c)]; }
    std::uint8_t& at(int x, int y, int c = 0) { return samples[index(x, y, c)]; }

    bool operator==(const ImageBuffer&) const = default;
};

// Real-valued position in the source raster that an output pixel maps to.
struct SourceCoord {
    double x_p = 0.0;
    double y_p = 0.0;
};

// The four neighbors around a source position plus the fractional offsets.
// Corners repeat under edge clamping (x2 == x1 at the right edge, etc.).
struct NeighborSet {
    int x1, y1;  // top-left
    int x2, y2;  // top-right
    int x3, y3;  // bottom-left
    int x4, y4;  // bottom-right
    double offset_x;  // in [0, 1)
    double offset_y;  // in [0, 1)
};

// Output pixel (x_f, y_f) maps to source position (x_f / scale, y_f / scale).
// The result is unclamped; pass it through clamp_to_source before lookup.
SourceCoord map_final_to_source(double x_f, double y_f, double scale);

SourceCoord clamp_to_source(SourceCoord p, int src_width, int src_height);

// Neighbor coordinates are floor(p) and floor(p)+1, the latter clamped to the
// last valid index. Expects p already clamped into the source bounds.
NeighborSet neighbors_and_offsets(const SourceCoord& p, int src_width, int src_height);

// Bilinear blend of the four neighbor samples:
//   (1-oy) * (ox*f2 + (1-ox)*f1) + oy * (ox*f4 + (1-ox)*f3)
// The four weights sum to 1, so the result stays within [min(f), max(f)].
double blend(const NeighborSet& n, double f1, double f2, double f3, double f4);

// floor(v + 0.5), clamped to [0, 255].
std::uint8_t quantize(double v);

// Output dimensions (floor(w*scale), floor(h*scale)).
// Throws NonPositiveScale / EmptyOutput when a dimension would collapse.
std::pair<int, int> scaled_dims(const ImageBuffer& src, double scale);

// Compute one output pixel of dst (all channels) from src. This is the
// per-pixel kernel shared by the scalar and the tiled resize, which makes
// their outputs bit-identical by construction.
void render_pixel(const ImageBuffer& src, double scale, int x_f, int y_f, ImageBuffer& dst);

// Reference resize: plain row-major double loop over render_pixel.
// Serves as the correctness oracle for every tiled execution.
ImageBuffer resize_scalar(const ImageBuffer& src, double scale);

}  // namespace tileperf
