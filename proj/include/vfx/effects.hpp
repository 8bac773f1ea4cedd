// The code-based spatial effect library.
//
// Each registry entry pairs an effect id with the hyperparameter space it
// is sampled from and a clip -> clip transform. Transforms are pure: the
// output depends only on the clip, the config, the object mask, and the
// seed handed to stochastic effects (grain, glitch).

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vfx/core.hpp"

namespace vfx {

/// Closed numeric interval. `decimals` is the sampling precision
/// (0 means integers); validation accepts any value inside [lo, hi].
struct RangeSpace {
    double lo;
    double hi;
    int decimals;
};

/// Finite set of numeric values.
struct SetSpace {
    std::vector<double> values;
};

/// 8-bit RGB color, each channel 0..255.
struct ColorSpace {};

/// Finite set of named options.
struct ChoiceSpace {
    std::vector<std::string> options;
};

/// Normalized center coordinate: either the fixed default or uniform in
/// [lo, hi] at the stated precision. Validation accepts [lo, hi] plus the default.
struct CenterSpace {
    double lo;
    double hi;
    int decimals;
    bool allow_default;
};

using ParamSpace = std::variant<RangeSpace, SetSpace, ColorSpace, ChoiceSpace, CenterSpace>;

struct ParamDescriptor {
    std::string name;
    ParamSpace space;
};

struct EffectContext {
    /// Region-selected object masks aligned to the clip; absent for effects that ignore masks.
    const MaskSequence* object_mask = nullptr;
    std::uint64_t seed = 0;
};

using EffectFn = std::function<Clip(const Clip&, const SpatialEffectConfig&, const EffectContext&)>;

struct EffectRegistryEntry {
    std::string effect_id;
    std::vector<ParamDescriptor> params;
    bool needs_mask = false;
    /// Output frame t depends on input frames other than t.
    bool sequential = false;
    EffectFn apply;
};

/// All 20 effects in canonical order.
const std::vector<EffectRegistryEntry>& effect_registry();
const EffectRegistryEntry& find_effect(std::string_view effect_id);

/// Returns one message per violated constraint; empty means valid.
std::vector<std::string> validate_params(const SpatialEffectConfig& config);

/// Validates, then applies. Throws RegistryError, ValidationError or MissingInputError.
Clip apply_effect(const Clip& clip, const SpatialEffectConfig& config, const MaskSequence* object_mask = nullptr,
                  std::uint64_t seed = 0);

/// Applies without checking the parameter space. For degenerate configs
/// (pixelate with block 1, strobe with zero-length flashes) used in tests.
Clip apply_effect_unchecked(const Clip& clip, const SpatialEffectConfig& config,
                            const MaskSequence* object_mask = nullptr, std::uint64_t seed = 0);

namespace effects {

// Per-effect kernels, exposed for direct testing.
Frame invert(const Frame& in);
Frame posterize(const Frame& in, std::span<const Rgb> palette);
Frame pixelate(const Frame& in, int block);
Frame wave_warp(const Frame& in, double amplitude, double frequency, double time_seconds);
Frame saturation_brightness(const Frame& in, double saturation, double brightness);
Frame gaussian_blur(const Frame& in, int kernel_size);
Frame grain(const Frame& in, double amount, int grain_size, std::uint64_t seed, int frame_index);
Frame black_and_white(const Frame& in);
Frame color_overlay(const Frame& in, double percent, Rgb color);
Frame cc_ball_action(const Frame& in, const Plane& mask, int spacing, Rgb ball_color);
Frame sticker(const Frame& in, const Plane& mask, int border, Rgb sticker_color);
Frame glow(const Frame& in, const Plane& mask, int glow_size, Rgb glow_color, double glow_brightness,
           double object_brightness);
Frame radial_blur(const Frame& in, double cx, double cy, int strength, double blur_border);
Frame rotate_pixels(const Frame& in, double cx, double cy, double max_angle_deg, double radius, int t, int n);
Frame glitch(const Frame& in, double angle_deg, double red, double green, double blue, std::uint64_t seed,
             int frame_index);
Frame dither(const Frame& in, int cell_size, int color_steps);
Frame motion_blur(const Frame& in, double angle_deg, double strength);
std::vector<int> stutter_schedule(int frame_count, int hold_duration, int frequency);
std::vector<Frame> ghosting(std::span<const Frame> in, double intensity);
bool strobe_flashes(int t, int flash_frequency, int flash_duration);

// Shared image helpers.
Plane dilate(const Plane& mask, int radius);
std::vector<float> gaussian_kernel(double sigma, int radius);
/// Bilinear sample with edge clamping; writes 3 channels.
void sample_bilinear(const Frame& in, double x, double y, float out[3]);
std::uint8_t luma601(Rgb c);

}  // namespace effects

}  // namespace vfx
