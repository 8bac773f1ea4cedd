#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "test_support.hpp"
#include "vfx/video_io.hpp"

using namespace vfx;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("clip round trip is bit-exact") {
    testing::TempDir dir("clip");
    for (int seed = 0; seed < 3; ++seed) {
        const auto clip = testing::random_clip(37, 21, 4, static_cast<std::uint64_t>(seed), {30000, 1001});
        const auto path = dir / ("c" + std::to_string(seed));
        write_clip(clip, path);
        CHECK(read_clip(path, {30000, 1001}) == clip);
    }
}

TEST_CASE("33 frames are named 000 through 032") {
    testing::TempDir dir("names");
    write_clip(testing::solid_clip(4, 4, 33, {1, 2, 3}), dir / "c");
    std::vector<std::string> names;
    for (const auto& e : std::filesystem::directory_iterator(dir / "c")) names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end());
    REQUIRE(names.size() == 33);
    CHECK(names.front() == "000.png");
    CHECK(names.back() == "032.png");
    CHECK(read_clip(dir / "c", {15, 1}).frame_count() == 33);
}

TEST_CASE("single frame and error cases") {
    testing::TempDir dir("errors");
    write_clip(testing::solid_clip(4, 4, 1, {9, 9, 9}), dir / "one");
    CHECK(read_clip(dir / "one", {15, 1}).frame_count() == 1);

    std::filesystem::create_directories(dir / "mixed");
    write_png(Frame(480, 270), dir / "mixed" / "000.png");
    write_png(Frame(640, 360), dir / "mixed" / "001.png");
    CHECK_THROWS_AS(read_clip(dir / "mixed", {15, 1}), FormatError);

    std::filesystem::create_directories(dir / "empty");
    CHECK_THROWS_AS(read_clip(dir / "empty", {15, 1}), IoError);
    CHECK_THROWS_AS(read_clip(dir / "absent", {15, 1}), IoError);

    std::ofstream(dir / "bad.png") << "not a png at all";
    CHECK_THROWS_AS(read_png_rgb(dir / "bad.png"), FormatError);
}

TEST_CASE("writing into a non-empty directory needs force") {
    testing::TempDir dir("force");
    const auto a = testing::solid_clip(4, 4, 3, {1, 1, 1});
    const auto b = testing::solid_clip(4, 4, 2, {2, 2, 2});
    write_clip(a, dir / "c");
    CHECK_THROWS_AS(write_clip(b, dir / "c"), IoError);
    write_clip(b, dir / "c", {.force = true});
    CHECK(read_clip(dir / "c", {15, 1}) == b);
}

TEST_CASE("mask sequences keep 8-bit values") {
    testing::TempDir dir("masks");
    const auto m = MaskSequence::uniform(6, 4, 2, 128);
    write_mask_sequence(m, dir / "m");
    const auto back = read_mask_sequence(dir / "m");
    CHECK(back == m);
    CHECK(region_weight(back, Region::foreground, 1, 3, 2) == doctest::Approx(128.0 / 255.0));

    // RGB mask files are reduced to one channel.
    std::filesystem::create_directories(dir / "rgb");
    Frame white(6, 4);
    white.fill({255, 255, 255});
    write_png(white, dir / "rgb" / "000.png");
    CHECK(read_mask_sequence(dir / "rgb").mask(0) == Plane(6, 4, 255));
}

TEST_CASE("y4m header grammar") {
    CHECK(y4m_header(480, 270, {15, 1}) == "YUV4MPEG2 W480 H270 F15:1 Ip A1:1 C420\n");
    CHECK(y4m_header(64, 32, {30000, 1001}) == "YUV4MPEG2 W64 H32 F30000:1001 Ip A1:1 C420\n");
}

TEST_CASE("y4m color conversion") {
    CHECK(y4m_luma({128, 128, 128}) == 128);
    CHECK(y4m_luma({0, 0, 0}) == 0);
    CHECK(y4m_luma({255, 255, 255}) == 255);
    const Rgb gray[4] = {{128, 128, 128}, {128, 128, 128}, {128, 128, 128}, {128, 128, 128}};
    CHECK(y4m_cb(gray) == 128);
    CHECK(y4m_cr(gray) == 128);
    const Rgb red[4] = {{255, 0, 0}, {255, 0, 0}, {255, 0, 0}, {255, 0, 0}};
    // Full-range BT.601: Y = 0.299*255, Cr = 128 + 0.5*255
    CHECK(std::abs(y4m_luma(red[0]) - 76) <= 1);
    CHECK(y4m_cr(red) == 255);
    CHECK(std::abs(y4m_cb(red) - 85) <= 1);

    std::mt19937_64 gen(5);
    for (int i = 0; i < 2000; ++i) {
        const auto f = testing::random_frame(1, 1, gen);
        const auto c = f.at(0, 0);
        const double y = 0.299 * c.r + 0.587 * c.g + 0.114 * c.b;
        REQUIRE(std::abs(y4m_luma(c) - y) <= 0.51);  // 16-bit fixed-point coefficients
    }
}

TEST_CASE("y4m stream layout") {
    testing::TempDir dir("y4m");
    const auto clip = testing::solid_clip(480, 270, 3, {128, 128, 128});
    write_y4m(clip, dir / "g.y4m");
    const auto bytes = slurp(dir / "g.y4m");
    const std::string header = "YUV4MPEG2 W480 H270 F15:1 Ip A1:1 C420\n";
    const std::size_t frame_bytes = 480 * 270 * 3 / 2;
    REQUIRE(bytes.size() == header.size() + 3 * (6 + frame_bytes));
    CHECK(bytes.compare(0, header.size(), header) == 0);
    for (int t = 0; t < 3; ++t) {
        const std::size_t off = header.size() + t * (6 + frame_bytes);
        CHECK(bytes.compare(off, 6, "FRAME\n") == 0);
        for (std::size_t i = 0; i < 480 * 270; ++i)
            REQUIRE(std::abs(static_cast<unsigned char>(bytes[off + 6 + i]) - 128) <= 1);
    }
    CHECK_THROWS_AS(write_y4m(testing::solid_clip(481, 270, 1, {0, 0, 0}), dir / "odd.y4m"), FormatError);
    CHECK_THROWS_AS(write_y4m(testing::solid_clip(480, 271, 1, {0, 0, 0}), dir / "odd2.y4m"), FormatError);
}
