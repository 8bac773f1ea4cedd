#include <algorithm>
#include <cmath>
#include <sstream>

#include "vfx/effects.hpp"
#include "vfx/palette.hpp"

namespace vfx {

namespace {

using effects::stutter_schedule;

template <class Fn>
Clip map_frames(const Clip& clip, Fn&& fn) {
    std::vector<Frame> out;
    out.reserve(static_cast<std::size_t>(clip.frame_count()));
    for (int t = 0; t < clip.frame_count(); ++t) out.push_back(fn(clip.frame(t), t));
    return Clip(std::move(out), clip.fps());
}

int as_int(double v) { return static_cast<int>(std::lround(v)); }

const Plane& object_plane(const EffectContext& ctx, int t) { return ctx.object_mask->mask(t); }

RangeSpace range(double lo, double hi, int decimals) { return {lo, hi, decimals}; }
SetSpace set(std::initializer_list<double> v) { return {std::vector<double>(v)}; }

std::vector<EffectRegistryEntry> make_registry() {
    std::vector<EffectRegistryEntry> r;

    r.push_back({"posterize",
                 {{"palette", range(0, 29, 0)}},
                 false,
                 false,
                 [](const Clip& clip, const SpatialEffectConfig& cfg, const EffectContext&) {
                     const auto& palettes = builtin_palettes().palettes;
                     const auto index = static_cast<std::size_t>(as_int(cfg.number("palette")));
                     if (index >= palettes.size()) throw ValidationError("posterize: palette index out of range");
                     return map_frames(clip, [&](const Frame& f, int) { return effects::posterize(f, palettes[index]); });
                 }});

    r.push_back({"pixelate",
                 {{"pixel_length", set({4, 8, 16, 32})}},
                 false,
                 false,
                 [](const Clip& clip, const SpatialEffectConfig& cfg, const EffectContext&) {
                     const int block = std::max(1, as_int(cfg.number("pixel_length")));
                     return map_frames(clip, [&](const Frame& f, int) { return effects::pixelate(f, block); });
                 }});

    r.push_back({"invert", {}, false, false, [](const Clip& clip, const SpatialEffectConfig&, const EffectContext&) {
                     return map_frames(clip, [](const Frame& f, int) { return effects::invert(f); });
                 }});

    r.push_back({"wave_warp",
                 {{"amplitude", range(10, 50, 2)}, {"frequency", range(0.01, 0.075, 3)}},
                 false,
                 false,
                 [](const Clip& clip, const SpatialEffectConfig& cfg, const EffectContext&) {
                     const double amp = cfg.number("amplitude"), freq = cfg.number("frequency");
                     const double fps = clip.fps().value();
                     return map_frames(clip,
                                       [&](const Frame& f, int t) { return effects::wave_warp(f, amp, freq, t / fps); });
                 }});

    r.push_back({"saturation_brightness",
                 {{"brightness", range(-255, 254, 0)}, {"saturation", set({0.0, 0.5, 1.0, 1.5, 2.0})}},
                 false,
                 false,
                 [](const Clip& clip, const SpatialEffectConfig& cfg, const EffectContext&) {
                     const double b = cfg.number("brightness"), s = cfg.number("saturation");
                     return map_frames(clip,
                                       [&](const Frame& f, int) { return effects::saturation_brightness(f, s, b); });
                 }});

    r.push_back({"gaussian_blur",
                 {{"kernel_size", set({11, 21, 51, 101, 151})}},
                 false,
                 false,
                 [](const Clip& clip, const SpatialEffectConfig& cfg, const EffectContext&) {
                     const int k = as_int(cfg.number("kernel_size"));
                     if (k < 1 || k % 2 == 0) throw ValidationError("gaussian_blur: kernel size must be odd");
                     return map_frames(clip, [&](const Frame& f, int) { return effects::gaussian_blur(f, k); });
                 }});

    r.push_back({"grain",
                 {{"amount", range(10, 50, 0)}, {"grain_size", set({1, 2, 3, 4, 5})}},
                 false,
                 false,
                 [](const Clip& clip, const SpatialEffectConfig& cfg, const EffectContext& ctx) {
                     const double amount = cfg.number("amount");
                     const int size = std::max(1, as_int(cfg.number("grain_size")));
                     return map_frames(
                         clip, [&](const Frame& f, int t) { return effects::grain(f, amount, size, ctx.seed, t); });
                 }});

    r.push_back({"black_and_white", {}, false, false,
                 [](const Clip& clip, const SpatialEffectConfig&, const EffectContext&) {
                     return map_frames(clip, [](const Frame& f, int) { return effects::black_and_white(f); });
                 }});

    r.push_back({"color_overlay",
                 {{"percent", set({0.25, 0.5, 0.75, 1.0})}, {"color", ColorSpace{}}},
                 false,
                 false,
                 [](const Clip& clip, const SpatialEffectConfig& cfg, const EffectContext&) {
                     const double p = cfg.number("percent");
                     const Rgb c = cfg.color("color");
                     return map_frames(clip, [&](const Frame& f, int) { return effects::color_overlay(f, p, c); });
                 }});

    r.push_back({"cc_ball_action",
                 {{"grid_spacing", set({5, 10, 20, 30})}, {"ball_color", ColorSpace{}}},
                 true,
                 false,
                 [](const Clip& clip, const SpatialEffectConfig& cfg, const EffectContext& ctx) {
                     const int g = std::max(1, as_int(cfg.number("grid_spacing")));
                     const Rgb c = cfg.color("ball_color");
                     return map_frames(clip, [&](const Frame& f, int t) {
                         return effects::cc_ball_action(f, object_plane(ctx, t), g, c);
                     });
                 }});

    r.push_back({"sticker",
                 {{"border_size", set({10, 20, 30, 40, 50})}, {"sticker_color", ColorSpace{}}},
                 true,
                 false,
                 [](const Clip& clip, const SpatialEffectConfig& cfg, const EffectContext& ctx) {
                     const int border = as_int(cfg.number("border_size"));
                     const Rgb c = cfg.color("sticker_color");
                     return map_frames(clip, [&](const Frame& f, int t) {
                         return effects::sticker(f, object_plane(ctx, t), border, c);
                     });
                 }});

    r.push_back({"glow",
                 {{"glow_size", set({10, 20, 30, 40, 50})},
                  {"glow_color", ColorSpace{}},
                  {"glow_brightness", set({0.5, 1.0, 1.5, 2.0})},
                  {"object_brightness", set({0, 1, 2, 3, 4, 5})}},
                 true,
                 false,
                 [](const Clip& clip, const SpatialEffectConfig& cfg, const EffectContext& ctx) {
                     const int size = as_int(cfg.number("glow_size"));
                     const Rgb c = cfg.color("glow_color");
                     const double gb = cfg.number("glow_brightness"), ob = cfg.number("object_brightness");
                     return map_frames(clip, [&](const Frame& f, int t) {
                         return effects::glow(f, object_plane(ctx, t), size, c, gb, ob);
                     });
                 }});

    r.push_back({"radial_blur",
                 {{"center_x", CenterSpace{0.10, 0.90, 2, true}},
                  {"center_y", CenterSpace{0.10, 0.90, 2, true}},
                  {"strength", range(5, 60, 0)},
                  {"blur_border", range(0, 30, 0)}},
                 false,
                 false,
                 [](const Clip& clip, const SpatialEffectConfig& cfg, const EffectContext&) {
                     const double cx = cfg.number("center_x"), cy = cfg.number("center_y");
                     const int strength = as_int(cfg.number("strength"));
                     const double border = cfg.number("blur_border");
                     return map_frames(clip, [&](const Frame& f, int) {
                         return effects::radial_blur(f, cx, cy, strength, border);
                     });
                 }});

    r.push_back({"rotate_pixels",
                 {{"center_x", CenterSpace{0.0, 1.0, 3, false}},
                  {"center_y", CenterSpace{0.0, 1.0, 3, false}},
                  {"max_angle", set({10, 20, 30, 40, 50})},
                  {"radius", set({100, 200, 300, 400, 500})}},
                 false,
                 false,
                 [](const Clip& clip, const SpatialEffectConfig& cfg, const EffectContext&) {
                     const double cx = cfg.number("center_x"), cy = cfg.number("center_y");
                     const double angle = cfg.number("max_angle"), radius = cfg.number("radius");
                     const int n = clip.frame_count();
                     return map_frames(clip, [&](const Frame& f, int t) {
                         return effects::rotate_pixels(f, cx, cy, angle, radius, t, n);
                     });
                 }});

    r.push_back({"glitch",
                 {{"angle", range(0, 359, 0)},
                  {"red_displacement", range(-40, 40, 0)},
                  {"green_displacement", range(-40, 40, 0)},
                  {"blue_displacement", range(-5, 5, 0)}},
                 false,
                 false,
                 [](const Clip& clip, const SpatialEffectConfig& cfg, const EffectContext& ctx) {
                     const double a = cfg.number("angle");
                     const double rd = cfg.number("red_displacement"), gd = cfg.number("green_displacement"),
                                  bd = cfg.number("blue_displacement");
                     return map_frames(
                         clip, [&](const Frame& f, int t) { return effects::glitch(f, a, rd, gd, bd, ctx.seed, t); });
                 }});

    r.push_back({"dither",
                 {{"size", set({5, 8, 10, 12, 16, 20})}, {"color_steps", set({2, 3, 4, 5, 7, 9})}},
                 false,
                 false,
                 [](const Clip& clip, const SpatialEffectConfig& cfg, const EffectContext&) {
                     const int size = std::max(1, as_int(cfg.number("size")));
                     const int steps = as_int(cfg.number("color_steps"));
                     if (steps < 2) throw ValidationError("dither: color_steps must be at least 2");
                     return map_frames(clip, [&](const Frame& f, int) { return effects::dither(f, size, steps); });
                 }});

    r.push_back({"motion_blur",
                 {{"angle", range(0, 360, 0)}, {"strength", range(0.1, 0.6, 2)}},
                 false,
                 false,
                 [](const Clip& clip, const SpatialEffectConfig& cfg, const EffectContext&) {
                     const double a = cfg.number("angle"), s = cfg.number("strength");
                     return map_frames(clip, [&](const Frame& f, int) { return effects::motion_blur(f, a, s); });
                 }});

    r.push_back({"stutter",
                 {{"hold_duration", set({1, 2})}, {"stutter_frequency", set({3, 4, 5, 6})}},
                 false,
                 true,
                 [](const Clip& clip, const SpatialEffectConfig& cfg, const EffectContext&) {
                     const int freq = as_int(cfg.number("stutter_frequency"));
                     if (freq < 1) throw ValidationError("stutter: frequency must be positive");
                     const auto schedule = stutter_schedule(clip.frame_count(), as_int(cfg.number("hold_duration")), freq);
                     std::vector<Frame> out;
                     out.reserve(schedule.size());
                     for (int src : schedule) out.push_back(clip.frame(src));
                     return Clip(std::move(out), clip.fps());
                 }});

    r.push_back({"ghosting",
                 {{"intensity", range(0.1, 0.9, 2)}},
                 false,
                 true,
                 [](const Clip& clip, const SpatialEffectConfig& cfg, const EffectContext&) {
                     return Clip(effects::ghosting(clip.frames(), cfg.number("intensity")), clip.fps());
                 }});

    r.push_back({"strobe",
                 {{"flash_frequency", set({4, 6, 8, 10})},
                  {"flash_duration", set({1, 2})},
                  {"flash_color", ChoiceSpace{{"white", "black"}}}},
                 false,
                 false,
                 [](const Clip& clip, const SpatialEffectConfig& cfg, const EffectContext&) {
                     const int freq = as_int(cfg.number("flash_frequency"));
                     const int dur = as_int(cfg.number("flash_duration"));
                     if (freq < 1) throw ValidationError("strobe: flash frequency must be positive");
                     const Rgb flash = cfg.text("flash_color") == "white" ? Rgb{255, 255, 255} : Rgb{0, 0, 0};
                     return map_frames(clip, [&](const Frame& f, int t) {
                         if (!effects::strobe_flashes(t, freq, dur)) return f;
                         Frame solid(f.width(), f.height());
                         solid.fill(flash);
                         return solid;
                     });
                 }});

    return r;
}

std::string fmt(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

void check_param(const std::string& effect, const ParamDescriptor& desc, const ParamValue& value,
                 std::vector<std::string>& out) {
    const std::string where = effect + "." + desc.name;
    std::visit(
        [&](const auto& space) {
            using S = std::decay_t<decltype(space)>;
            if constexpr (std::is_same_v<S, ColorSpace>) {
                if (!std::holds_alternative<Rgb>(value)) out.push_back(where + ": expected an RGB color");
            } else if constexpr (std::is_same_v<S, ChoiceSpace>) {
                const auto* s = std::get_if<std::string>(&value);
                if (s == nullptr) {
                    out.push_back(where + ": expected one of a fixed set of names");
                } else if (std::ranges::find(space.options, *s) == space.options.end()) {
                    out.push_back(where + ": '" + *s + "' is not an allowed option");
                }
            } else {
                const auto* d = std::get_if<double>(&value);
                if (d == nullptr || !std::isfinite(*d)) {
                    out.push_back(where + ": expected a finite number");
                    return;
                }
                if constexpr (std::is_same_v<S, SetSpace>) {
                    if (std::ranges::find(space.values, *d) == space.values.end())
                        out.push_back(where + ": " + fmt(*d) + " is not in the allowed set");
                } else if constexpr (std::is_same_v<S, RangeSpace>) {
                    if (*d < space.lo || *d > space.hi)
                        out.push_back(where + ": " + fmt(*d) + " outside [" + fmt(space.lo) + ", " + fmt(space.hi) + "]");
                    else if (space.decimals == 0 && *d != std::floor(*d))
                        out.push_back(where + ": " + fmt(*d) + " must be an integer");
                } else if constexpr (std::is_same_v<S, CenterSpace>) {
                    const bool is_default = space.allow_default && *d == 0.5;
                    if (!is_default && (*d < space.lo || *d > space.hi))
                        out.push_back(where + ": " + fmt(*d) + " outside [" + fmt(space.lo) + ", " + fmt(space.hi) + "]");
                }
            }
        },
        desc.space);
}

Clip run(const Clip& clip, const SpatialEffectConfig& config, const MaskSequence* object_mask, std::uint64_t seed,
         bool validate) {
    const auto& entry = find_effect(config.effect_id);
    if (validate) {
        if (auto violations = validate_params(config); !violations.empty()) {
            std::string msg = "invalid parameters for " + config.effect_id + ":";
            for (const auto& v : violations) msg += "\n  " + v;
            throw ValidationError(msg);
        }
    }
    EffectContext ctx{nullptr, seed};
    MaskSequence aligned;
    if (entry.needs_mask) {
        if (object_mask == nullptr) throw MissingInputError(config.effect_id + " needs an object mask");
        aligned = align_masks(*object_mask, clip);
        ctx.object_mask = &aligned;
    }
    return entry.apply(clip, config, ctx);
}

}  // namespace

const std::vector<EffectRegistryEntry>& effect_registry() {
    static const std::vector<EffectRegistryEntry> registry = make_registry();
    return registry;
}

const EffectRegistryEntry& find_effect(std::string_view effect_id) {
    const auto& reg = effect_registry();
    auto it = std::ranges::find(reg, effect_id, &EffectRegistryEntry::effect_id);
    if (it == reg.end()) throw RegistryError("unknown effect '" + std::string(effect_id) + "'");
    return *it;
}

std::vector<std::string> validate_params(const SpatialEffectConfig& config) {
    std::vector<std::string> out;
    const auto& reg = effect_registry();
    auto it = std::ranges::find(reg, config.effect_id, &EffectRegistryEntry::effect_id);
    if (it == reg.end()) {
        out.push_back("unknown effect '" + config.effect_id + "'");
        return out;
    }
    for (const auto& desc : it->params) {
        auto p = config.params.find(desc.name);
        if (p == config.params.end()) {
            out.push_back(config.effect_id + "." + desc.name + ": missing");
            continue;
        }
        check_param(config.effect_id, desc, p->second, out);
    }
    for (const auto& [name, value] : config.params) {
        if (std::ranges::find(it->params, name, &ParamDescriptor::name) == it->params.end())
            out.push_back(config.effect_id + "." + name + ": unknown parameter");
    }
    return out;
}

Clip apply_effect(const Clip& clip, const SpatialEffectConfig& config, const MaskSequence* object_mask,
                  std::uint64_t seed) {
    return run(clip, config, object_mask, seed, true);
}

Clip apply_effect_unchecked(const Clip& clip, const SpatialEffectConfig& config, const MaskSequence* object_mask,
                            std::uint64_t seed) {
    return run(clip, config, object_mask, seed, false);
}

}  // namespace vfx
