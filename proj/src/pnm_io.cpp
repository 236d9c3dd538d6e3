#include "tileperf/pnm_io.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

namespace tileperf {

namespace {

// Next header token, skipping whitespace and '#' comments to end of line.
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {}
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

int parse_dim(const std::string& tok, const char* what) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw MalformedHeader(std::string("bad ") + what + " field: '" + tok + "'");
    long v = std::stol(tok);
    if (v < 1 || v > std::numeric_limits<int>::max())
        throw MalformedHeader(std::string(what) + " out of range: " + tok);
    return static_cast<int>(v);
}

}  // namespace

ImageBuffer read_image(std::istream& in) {
    const std::string magic = next_token(in);
    int channels;
    if (magic == "P5")
        channels = 1;
    else if (magic == "P6")
        channels = 3;
    else
        throw UnsupportedFormat("expected P5 or P6, got '" + magic + "'");

    const int width = parse_dim(next_token(in), "width");
    const int height = parse_dim(next_token(in), "height");
    const std::string maxval = next_token(in);
    if (maxval.empty() || maxval.find_first_not_of("0123456789") != std::string::npos)
        throw MalformedHeader("bad maxval field: '" + maxval + "'");
    if (maxval != "255") throw UnsupportedMaxval("only maxval 255 is supported, got " + maxval);
    // next_token consumed exactly the single whitespace byte after maxval;
    // the raw payload starts here.

    ImageBuffer img(width, height, channels);
    in.read(reinterpret_cast<char*>(img.samples.data()),
            static_cast<std::streamsize>(img.samples.size()));
    if (static_cast<std::size_t>(in.gcount()) != img.samples.size())
        throw TruncatedPayload("expected " + std::to_string(img.samples.size()) +
                               " payload bytes, got " + std::to_string(in.gcount()));
    return img;
}

ImageBuffer read_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open image file: " + path.string());
    return read_image(in);
}

void write_image(const ImageBuffer& img, std::ostream& out) {
    if (img.channels != 1 && img.channels != 3)
        throw UnsupportedFormat("only 1- or 3-channel images can be written, got " +
                                std::to_string(img.channels));
    if (img.width < 1 || img.height < 1 ||
        img.samples.size() != static_cast<std::size_t>(img.width) * img.height * img.channels)
        throw IoFailure("image buffer dimensions do not match its sample count");

    out << (img.channels == 1 ? "P5" : "P6") << "\n"
        << img.width << " " << img.height << "\n"
        << "255\n";
    out.write(reinterpret_cast<const char*>(img.samples.data()),
              static_cast<std::streamsize>(img.samples.size()));
    if (!out) throw IoFailure("error while writing image payload");
}

void write_image(const ImageBuffer& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open output file: " + path.string());
    write_image(img, out);
    out.flush();
    if (!out) throw IoFailure("error while writing image file: " + path.string());
}

}  // namespace tileperf
