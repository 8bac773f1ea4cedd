#include <doctest.h>

#include <array>
#include <map>
#include <mutex>
#include <set>

#include "test_support.hpp"
#include "vfx/compositor.hpp"
#include "vfx/effects.hpp"
#include "vfx/spec_io.hpp"
#include "vfx/transitions.hpp"

using namespace vfx;

namespace {

CompositeEffectSpec invert_spec(Region region, int start, int end, std::string transition = "wipe_left_to_right") {
    CompositeEffectSpec s;
    s.effect_uid = "fx-test";
    s.region = region;
    s.spatial = {"invert", {}};
    s.transition = {std::move(transition), 0.02, 0.5, 0.5, start, end};
    s.seed = 1;
    return s;
}

}  // namespace

TEST_CASE("frames before a late window pass through") {
    const auto clip = testing::random_clip(12, 10, 33, 1);
    const auto out = compose(clip, nullptr, invert_spec(Region::all, 32, 33));
    for (int t = 0; t < 32; ++t) REQUIRE(out.frame(t) == clip.frame(t));
}

TEST_CASE("region all with full alpha equals the effected clip") {
    const auto clip = testing::random_clip(12, 10, 6, 2);
    const auto out = compose(clip, nullptr, invert_spec(Region::all, 0, 1));
    for (int t = 1; t < 6; ++t) REQUIRE(out.frame(t) == effects::invert(clip.frame(t)));
    CHECK(out.frame(0) == clip.frame(0));
}

TEST_CASE("half mask blends by hand-evaluated formula") {
    const auto clip = testing::solid_clip(4, 4, 3, {100, 100, 100});
    const auto masks = MaskSequence::uniform(4, 4, 1, 128);
    const auto out = compose(clip, &masks, invert_spec(Region::foreground, 0, 1));
    // w = 128/255; 155 w + 100 (1 - w) = 127.6 -> 128
    const double w = 128.0 / 255.0;
    const auto expected = static_cast<std::uint8_t>(std::floor(155 * w + 100 * (1 - w) + 0.5));
    CHECK(expected == 128);
    for (int t = 1; t < 3; ++t) CHECK(out.frame(t).at(2, 2) == Rgb{expected, expected, expected});
}

TEST_CASE("compose checks masks") {
    const auto clip = testing::random_clip(4, 4, 3, 3);
    CHECK_THROWS_AS(compose(clip, nullptr, invert_spec(Region::foreground, 0, 2)), MissingInputError);
    const auto bad = MaskSequence::uniform(4, 4, 2, 0);
    CHECK_THROWS_AS(compose(clip, &bad, invert_spec(Region::foreground, 0, 2)), AlignmentError);
    CHECK_THROWS_AS(compose(clip, nullptr, invert_spec(Region::all, 0, 4)), ValidationError);
}

TEST_CASE("background over a full-foreground mask passes every effect through") {
    const auto clip = testing::synthetic_footage(24, 16, 8, 3);
    const auto ones = MaskSequence::uniform(24, 16, 1, 255);
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        auto spec = sample_spec(seed, 8);
        spec.region = Region::background;
        CAPTURE(spec.spatial.effect_id);
        REQUIRE(compose(clip, &ones, spec) == clip);
    }
}

TEST_CASE("frames before the window start are untouched for sampled specs") {
    const auto clip = testing::synthetic_footage(20, 12, 10, 4);
    const auto masks = testing::synthetic_masks(20, 12, 10, 4);
    for (std::uint64_t seed = 100; seed < 160; ++seed) {
        const auto spec = sample_spec(seed, 10);
        const auto out = compose(clip, &masks, spec);
        CAPTURE(spec.spatial.effect_id);
        for (int t = 0; t <= spec.transition.window_start && t < 10; ++t) REQUIRE(out.frame(t) == clip.frame(t));
    }
}

TEST_CASE("sample_spec is deterministic and valid") {
    CHECK(sample_spec(42, 33) == sample_spec(42, 33));
    CHECK(sample_spec(42, 33).effect_uid == effect_uid_for_seed(42));
    CHECK(effect_uid_for_seed(255) == "fx-00000000000000ff");
    CHECK_THROWS_AS(sample_spec(1, 1), ValidationError);
    for (std::uint64_t seed = 0; seed < 2000; ++seed) {
        const auto s = sample_spec(seed, 33);
        REQUIRE(validate_params(s.spatial).empty());
        REQUIRE(s.transition.window_start < s.transition.window_end);
        REQUIRE(s.transition.window_start >= 0);
        REQUIRE(s.transition.window_end <= 33);
        REQUIRE_NOTHROW(validate_spec(s, 33));
    }
}

TEST_CASE("sampled effects, regions and transitions are uniform") {
    constexpr int n = 10000;
    std::map<std::string, int> effects, transitions;
    std::map<Region, int> regions;
    for (int i = 0; i < n; ++i) {
        const auto s = sample_spec(static_cast<std::uint64_t>(i) * 7919 + 13, 33);
        ++effects[s.spatial.effect_id];
        ++transitions[s.transition.transition_id];
        ++regions[s.region];
    }
    auto chi2 = [](const auto& counts, int categories) {
        const double e = static_cast<double>(n) / categories;
        double x = 0;
        for (const auto& [k, c] : counts) x += (c - e) * (c - e) / e;
        return x;
    };
    REQUIRE(effects.size() == 20);
    REQUIRE(transitions.size() == 15);
    REQUIRE(regions.size() == 3);
    // Critical values at p = 0.001 for 19, 14 and 2 degrees of freedom.
    CHECK(chi2(effects, 20) < 43.82);
    CHECK(chi2(transitions, 15) < 36.12);
    CHECK(chi2(regions, 3) < 13.82);
}

TEST_CASE("sampled continuous parameters keep the stated precision") {
    for (std::uint64_t seed = 0; seed < 3000; ++seed) {
        const auto s = sample_spec(seed, 33);
        const double soft = s.transition.softness;
        REQUIRE(std::abs(soft * 100 - std::round(soft * 100)) < 1e-9);
        if (!transition_uses_center(s.transition.transition_id)) {
            REQUIRE(s.transition.center_x == 0.5);
            REQUIRE(s.transition.center_y == 0.5);
        }
        if (s.spatial.effect_id == "wave_warp") {
            const double f = s.spatial.number("frequency");
            REQUIRE(std::abs(f * 1000 - std::round(f * 1000)) < 1e-9);
        }
        if (s.spatial.effect_id == "radial_blur") {
            const double cx = s.spatial.number("center_x"), cy = s.spatial.number("center_y");
            REQUIRE(std::abs(cx * 100 - std::round(cx * 100)) < 1e-9);
            REQUIRE(std::abs(cy * 100 - std::round(cy * 100)) < 1e-9);
        }
    }
}

TEST_CASE("effect sets have the requested shape and are reproducible") {
    std::vector<SourceClip> sources;
    for (int i = 0; i < 4; ++i)
        sources.push_back({testing::synthetic_footage(16, 12, 6, i), testing::synthetic_masks(16, 12, 6, i)});
    const auto a = generate_effect_set(sources, 2, 3, 500, 1);
    REQUIRE(a.size() == 2);
    int total = 0;
    for (std::size_t e = 0; e < a.size(); ++e) {
        CHECK(a[e].spec == sample_spec(500 + e, 6));
        CHECK(a[e].outputs.size() == 3);
        std::set<int> distinct(a[e].source_indices.begin(), a[e].source_indices.end());
        CHECK(distinct.size() == 3);
        for (std::size_t k = 0; k < 3; ++k) {
            const auto& src = sources[static_cast<std::size_t>(a[e].source_indices[k])];
            CHECK(a[e].outputs[k] == compose(src.clip, &src.masks, a[e].spec));
        }
        total += static_cast<int>(a[e].outputs.size());
    }
    CHECK(total == 6);

    const auto b = generate_effect_set(sources, 2, 3, 500, 3);
    for (std::size_t e = 0; e < 2; ++e) {
        CHECK(a[e].spec == b[e].spec);
        CHECK(a[e].source_indices == b[e].source_indices);
        CHECK(a[e].outputs == b[e].outputs);
    }
    CHECK_THROWS_AS(generate_effect_set(sources, 2, 5, 500, 1), CapacityError);
}

TEST_CASE("streaming sink sees every output exactly once") {
    std::vector<SourceClip> sources;
    for (int i = 0; i < 3; ++i)
        sources.push_back({testing::synthetic_footage(8, 8, 4, i), testing::synthetic_masks(8, 8, 4, i)});
    std::mutex mu;
    std::set<std::pair<int, int>> seen;
    const auto plan = generate_effect_set(sources, 4, 2, 9, 2, [&](int e, int slot, int, const Clip& clip) {
        std::lock_guard lock(mu);
        CHECK(clip.frame_count() == 4);
        seen.insert({e, slot});
    });
    CHECK(seen.size() == 8);
    CHECK(plan.specs.size() == 4);
}

TEST_CASE("spec text round trip") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const auto s = sample_spec(seed, 33);
        REQUIRE(spec_from_text(spec_to_text(s)) == s);
    }
    CHECK_THROWS_AS(spec_from_text("{\"effect_uid\": 3}"), FormatError);
    CHECK_THROWS_AS(spec_from_text("not json"), FormatError);
}
