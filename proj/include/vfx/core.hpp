// Domain types shared by every stage of the effect pipeline.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace vfx {

inline constexpr std::string_view kEngineVersion = "vfxgen/1.0.0";

// Error taxonomy. The CLI maps these onto exit codes.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BoundsError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct RegistryError : ValidationError { using ValidationError::ValidationError; };
struct AlignmentError : ValidationError { using ValidationError::ValidationError; };
struct MissingInputError : ValidationError { using ValidationError::ValidationError; };
struct CapacityError : ValidationError { using ValidationError::ValidationError; };
struct IoError : Error { using Error::Error; };
struct FormatError : IoError { using IoError::IoError; };
struct IntegrityError : IoError { using IoError::IoError; };

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Round half up to 8 bits after clamping to [0, 255].
inline std::uint8_t to_u8(float v) {
    if (!(v > 0.0f)) return 0;
    if (v >= 255.0f) return 255;
    return static_cast<std::uint8_t>(static_cast<int>(v + 0.5f));
}
inline std::uint8_t to_u8(double v) {
    if (!(v > 0.0)) return 0;
    if (v >= 255.0) return 255;
    return static_cast<std::uint8_t>(static_cast<int>(v + 0.5));
}

/// Row-major interleaved 8-bit RGB image.
class Frame {
public:
    Frame() = default;
    Frame(int width, int height);
    Frame(int width, int height, std::vector<std::uint8_t> pixels);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t pixel_count() const noexcept { return static_cast<std::size_t>(width_) * height_; }

    std::span<std::uint8_t> data() noexcept { return pixels_; }
    std::span<const std::uint8_t> data() const noexcept { return pixels_; }

    std::uint8_t* px(int x, int y) noexcept { return pixels_.data() + (static_cast<std::size_t>(y) * width_ + x) * 3; }
    const std::uint8_t* px(int x, int y) const noexcept {
        return pixels_.data() + (static_cast<std::size_t>(y) * width_ + x) * 3;
    }
    Rgb at(int x, int y) const noexcept {
        const auto* p = px(x, y);
        return {p[0], p[1], p[2]};
    }
    void set(int x, int y, Rgb c) noexcept {
        auto* p = px(x, y);
        p[0] = c.r;
        p[1] = c.g;
        p[2] = c.b;
    }
    void fill(Rgb c) noexcept;

    friend bool operator==(const Frame&, const Frame&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> pixels_;
};

/// Single-channel 8-bit plane; 0..255 maps linearly onto [0, 1].
class Plane {
public:
    Plane() = default;
    Plane(int width, int height, std::uint8_t value = 0);
    Plane(int width, int height, std::vector<std::uint8_t> values);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::span<std::uint8_t> data() noexcept { return values_; }
    std::span<const std::uint8_t> data() const noexcept { return values_; }
    std::uint8_t at(int x, int y) const noexcept { return values_[static_cast<std::size_t>(y) * width_ + x]; }
    std::uint8_t& at(int x, int y) noexcept { return values_[static_cast<std::size_t>(y) * width_ + x]; }

    friend bool operator==(const Plane&, const Plane&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> values_;
};

struct Rational {
    std::int64_t num = 15;
    std::int64_t den = 1;
    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational&, const Rational&) = default;
};

/// Parses "15", "30000/1001" or "29.97"-free integer ratios.
Rational parse_rational(std::string_view text);

class Clip {
public:
    Clip() = default;
    Clip(std::vector<Frame> frames, Rational fps);

    int width() const noexcept { return frames_.front().width(); }
    int height() const noexcept { return frames_.front().height(); }
    int frame_count() const noexcept { return static_cast<int>(frames_.size()); }
    Rational fps() const noexcept { return fps_; }

    const Frame& frame(int t) const { return frames_.at(static_cast<std::size_t>(t)); }
    const std::vector<Frame>& frames() const noexcept { return frames_; }

    friend bool operator==(const Clip&, const Clip&) = default;

private:
    std::vector<Frame> frames_;
    Rational fps_;
};

class MaskSequence {
public:
    MaskSequence() = default;
    explicit MaskSequence(std::vector<Plane> masks);

    int width() const noexcept { return masks_.front().width(); }
    int height() const noexcept { return masks_.front().height(); }
    int count() const noexcept { return static_cast<int>(masks_.size()); }
    bool empty() const noexcept { return masks_.empty(); }
    const Plane& mask(int t) const { return masks_.at(static_cast<std::size_t>(t)); }
    const std::vector<Plane>& masks() const noexcept { return masks_; }

    static MaskSequence uniform(int width, int height, int count, std::uint8_t value);

    friend bool operator==(const MaskSequence&, const MaskSequence&) = default;

private:
    std::vector<Plane> masks_;
};

/// Checks that masks cover the clip. A single mask is broadcast to every
/// frame; any other count or size mismatch throws AlignmentError.
MaskSequence align_masks(const MaskSequence& masks, const Clip& clip);

enum class Region { foreground, background, all };

std::string_view to_string(Region r);
Region parse_region(std::string_view name);

/// Region weight from a raw mask byte, as a float in [0, 1].
inline float region_weight(std::uint8_t mask_value, Region region) noexcept {
    switch (region) {
        case Region::foreground: return static_cast<float>(mask_value) / 255.0f;
        case Region::background: return static_cast<float>(255 - mask_value) / 255.0f;
        case Region::all: break;
    }
    return 1.0f;
}

/// Bounds-checked weight lookup.
float region_weight(const MaskSequence& masks, Region region, int frame, int x, int y);

/// Mask as seen by object-aware effects: the mask itself, its complement, or all ones.
Plane select_region(const Plane& mask, Region region);

using ParamValue = std::variant<double, Rgb, std::string>;
using ParamMap = std::map<std::string, ParamValue, std::less<>>;

struct SpatialEffectConfig {
    std::string effect_id;
    ParamMap params;
    friend bool operator==(const SpatialEffectConfig&, const SpatialEffectConfig&) = default;

    double number(std::string_view name) const;
    Rgb color(std::string_view name) const;
    const std::string& text(std::string_view name) const;
};

struct TransitionConfig {
    std::string transition_id;
    double softness = 0.01;
    double center_x = 0.5;
    double center_y = 0.5;
    int window_start = 0;
    int window_end = 1;
    friend bool operator==(const TransitionConfig&, const TransitionConfig&) = default;
};

struct CompositeEffectSpec {
    std::string effect_uid;
    Region region = Region::all;
    SpatialEffectConfig spatial;
    TransitionConfig transition;
    std::uint64_t seed = 0;
    friend bool operator==(const CompositeEffectSpec&, const CompositeEffectSpec&) = default;
};

struct TripletRecord {
    std::string effect_uid;
    std::string reference_path;
    std::string input_path;
    std::string target_path;
    CompositeEffectSpec spec;
    friend bool operator==(const TripletRecord&, const TripletRecord&) = default;
};

}  // namespace vfx
