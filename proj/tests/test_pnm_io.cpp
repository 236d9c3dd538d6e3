#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>
#include <string>

#include "tileperf/pnm_io.hpp"

using namespace tileperf;

namespace {

ImageBuffer random_image(std::mt19937& rng, int w, int h, int ch) {
    ImageBuffer img(w, h, ch);
    std::uniform_int_distribution<int> byte(0, 255);
    for (auto& s : img.samples) s = static_cast<std::uint8_t>(byte(rng));
    return img;
}

std::string write_to_string(const ImageBuffer& img) {
    std::ostringstream out(std::ios::binary);
    write_image(img, out);
    return out.str();
}

ImageBuffer read_from_string(const std::string& bytes) {
    std::istringstream in(bytes, std::ios::binary);
    return read_image(in);
}

}  // namespace

TEST_CASE("one gray pixel writes the golden bytes") {
    ImageBuffer img(1, 1, 1);
    img.at(0, 0) = 0;
    const std::string bytes = write_to_string(img);
    CHECK(bytes == std::string("P5\n1 1\n255\n\0", 12));
}

TEST_CASE("one color pixel carries its samples in order") {
    ImageBuffer img(1, 1, 3);
    img.at(0, 0, 0) = 1;
    img.at(0, 0, 1) = 2;
    img.at(0, 0, 2) = 3;
    const std::string bytes = write_to_string(img);
    CHECK(bytes == std::string("P6\n1 1\n255\n\x01\x02\x03", 14));
}

TEST_CASE("a gray raster reads back row major") {
    const ImageBuffer img = read_from_string(std::string("P5\n2 2\n255\n\x0a\x14\x1e\x28", 15));
    CHECK(img.width == 2);
    CHECK(img.height == 2);
    CHECK(img.channels == 1);
    CHECK(img.at(0, 0) == 10);
    CHECK(img.at(1, 0) == 20);
    CHECK(img.at(0, 1) == 30);
    CHECK(img.at(1, 1) == 40);
}

TEST_CASE("header comments and odd whitespace are tolerated") {
    const std::string bytes("P5 # format\n# a full comment line\n  2\t1 \n# maxval next\n255\n\x05\x06",
                            61);
    const ImageBuffer img = read_from_string(bytes);
    CHECK(img.width == 2);
    CHECK(img.height == 1);
    CHECK(img.at(0, 0) == 5);
    CHECK(img.at(1, 0) == 6);
}

TEST_CASE("payload bytes survive a write and read cycle") {
    std::mt19937 rng(11);
    for (int round = 0; round < 20; ++round) {
        const int ch = (round % 2 == 0) ? 1 : 3;
        std::uniform_int_distribution<int> dim(1, 40);
        const ImageBuffer img = random_image(rng, dim(rng), dim(rng), ch);
        const std::string bytes = write_to_string(img);
        CHECK(read_from_string(bytes) == img);
        // a canonical file re-serializes byte for byte
        CHECK(write_to_string(read_from_string(bytes)) == bytes);
    }
}

TEST_CASE("payload values 0 and 255 are not special") {
    ImageBuffer img(2, 1, 1);
    img.at(0, 0) = 0;
    img.at(1, 0) = 255;
    CHECK(read_from_string(write_to_string(img)) == img);
}

TEST_CASE("unsupported and damaged files are rejected") {
    CHECK_THROWS_AS(read_from_string("P4\n2 2\n255\nxxxx"), UnsupportedFormat);
    CHECK_THROWS_AS(read_from_string("JUNK"), UnsupportedFormat);
    CHECK_THROWS_AS(read_from_string("P6\n1 1\n65535\nabc"), UnsupportedMaxval);
    CHECK_THROWS_AS(read_from_string("P5\n2 2\n255\nab"), TruncatedPayload);
    CHECK_THROWS_AS(read_from_string("P5\n-2 2\n255\nabcd"), MalformedHeader);
    CHECK_THROWS_AS(read_from_string("P5\ntwo 2\n255\nabcd"), MalformedHeader);
    CHECK_THROWS_AS(read_from_string("P5\n2\n"), MalformedHeader);
    CHECK_THROWS_AS(read_image("/no/such/file.pgm"), IoFailure);
}

TEST_CASE("only 1- or 3-channel buffers can be written") {
    CHECK_THROWS_AS(write_to_string(ImageBuffer(2, 2, 2)), UnsupportedFormat);
    ImageBuffer bad(2, 2, 1);
    bad.samples.pop_back();
    CHECK_THROWS_AS(write_to_string(bad), IoFailure);
}

TEST_CASE("file round trip through disk") {
    std::mt19937 rng(3);
    const ImageBuffer img = random_image(rng, 17, 9, 3);
    const std::filesystem::path path =
        std::filesystem::temp_directory_path() / "tileperf_roundtrip.ppm";
    write_image(img, path);
    CHECK(read_image(path) == img);
    std::filesystem::remove(path);
}
