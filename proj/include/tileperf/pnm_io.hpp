#pragma once

#include <filesystem>
#include <iosfwd>

#include "tileperf/interp_core.hpp"

namespace tileperf {

// Binary netpbm codecs: P5 (one channel) and P6 (three channels), maxval 255
// only. Header whitespace and '#' comments are tolerated on read; the writer
// always emits the canonical header "P5|P6\n<w> <h>\n255\n".

ImageBuffer read_image(std::istream& in);
ImageBuffer read_image(const std::filesystem::path& path);

void write_image(const ImageBuffer& img, std::ostream& out);
void write_image(const ImageBuffer& img, const std::filesystem::path& path);

}  // namespace tileperf
