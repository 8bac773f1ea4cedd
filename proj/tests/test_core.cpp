#include <doctest.h>

#include "test_support.hpp"
#include "vfx/core.hpp"

using namespace vfx;

TEST_CASE("frame invariants") {
    CHECK_THROWS_AS(Frame(0, 4), ValidationError);
    CHECK_THROWS_AS(Frame(2, 2, std::vector<std::uint8_t>(11)), ValidationError);
    Frame f(3, 2);
    CHECK(f.data().size() == 18);
    f.set(2, 1, {1, 2, 3});
    CHECK(f.at(2, 1) == Rgb{1, 2, 3});
}

TEST_CASE("clip rejects mixed sizes and empty input") {
    CHECK_THROWS_AS(Clip({}, {15, 1}), ValidationError);
    CHECK_THROWS_AS(Clip({Frame(4, 4), Frame(4, 5)}, {15, 1}), ValidationError);
    CHECK_THROWS_AS(Clip({Frame(4, 4)}, {0, 1}), ValidationError);
}

TEST_CASE("region weight examples") {
    auto masks = MaskSequence::uniform(4, 4, 2, 0);
    CHECK(region_weight(masks, Region::background, 0, 1, 1) == 1.0f);
    CHECK(region_weight(masks, Region::all, 1, 3, 3) == 1.0f);

    // 0.25 is not representable in 8 bits; 0.25 * 255 rounds to 64.
    auto quarter = MaskSequence::uniform(4, 4, 1, 64);
    CHECK(region_weight(quarter, Region::foreground, 0, 0, 0) == doctest::Approx(64.0 / 255.0));
    CHECK(region_weight(std::uint8_t{51}, Region::foreground) == doctest::Approx(0.2));

    CHECK_THROWS_AS(region_weight(masks, Region::all, 2, 0, 0), BoundsError);
    CHECK_THROWS_AS(region_weight(masks, Region::all, 0, 4, 0), BoundsError);
    CHECK_THROWS_AS(region_weight(masks, Region::all, 0, 0, -1), BoundsError);
}

TEST_CASE("foreground and background weights are complementary for every mask value") {
    for (int v = 0; v <= 255; ++v) {
        const auto m = static_cast<std::uint8_t>(v);
        const float fg = region_weight(m, Region::foreground);
        const float bg = region_weight(m, Region::background);
        CHECK(fg + bg == doctest::Approx(1.0f).epsilon(1e-6));
        CHECK(v + (255 - v) == 255);
    }
    CHECK(region_weight(std::uint8_t{255}, Region::background) == 0.0f);
    CHECK(region_weight(std::uint8_t{0}, Region::foreground) == 0.0f);
}

TEST_CASE("select_region gives the object mask each region implies") {
    Plane p(2, 1, std::vector<std::uint8_t>{0, 200});
    CHECK(select_region(p, Region::foreground) == p);
    CHECK(select_region(p, Region::background) == Plane(2, 1, std::vector<std::uint8_t>{255, 55}));
    CHECK(select_region(p, Region::all) == Plane(2, 1, 255));
}

TEST_CASE("align_masks broadcasts a single mask and rejects other mismatches") {
    const auto clip = testing::solid_clip(4, 3, 5, {1, 2, 3});
    CHECK(align_masks(MaskSequence::uniform(4, 3, 1, 7), clip).count() == 5);
    CHECK(align_masks(MaskSequence::uniform(4, 3, 5, 7), clip).count() == 5);
    CHECK_THROWS_AS(align_masks(MaskSequence::uniform(4, 3, 2, 7), clip), AlignmentError);
    CHECK_THROWS_AS(align_masks(MaskSequence::uniform(3, 3, 5, 7), clip), AlignmentError);
}

TEST_CASE("to_u8 rounds half up and clamps") {
    CHECK(to_u8(127.5f) == 128);
    CHECK(to_u8(127.49f) == 127);
    CHECK(to_u8(-3.0f) == 0);
    CHECK(to_u8(300.0) == 255);
    CHECK(to_u8(std::nan("")) == 0);
}

TEST_CASE("rational parsing") {
    CHECK(parse_rational("15") == Rational{15, 1});
    CHECK(parse_rational("30000/1001") == Rational{30000, 1001});
    CHECK(parse_rational("30/2") == Rational{15, 1});
    CHECK_THROWS_AS(parse_rational("0"), ValidationError);
    CHECK_THROWS_AS(parse_rational("fast"), ValidationError);
}
