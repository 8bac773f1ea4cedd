#include "vfx/core.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace vfx {

Frame::Frame(int width, int height) : Frame(width, height, {}) {}

Frame::Frame(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (width < 1 || height < 1) throw ValidationError("frame dimensions must be positive");
    const auto expected = static_cast<std::size_t>(width) * height * 3;
    if (pixels_.empty()) pixels_.assign(expected, 0);
    if (pixels_.size() != expected) {
        throw ValidationError("frame buffer holds " + std::to_string(pixels_.size()) + " bytes, expected " +
                              std::to_string(expected));
    }
}

void Frame::fill(Rgb c) noexcept {
    for (std::size_t i = 0; i < pixels_.size(); i += 3) {
        pixels_[i] = c.r;
        pixels_[i + 1] = c.g;
        pixels_[i + 2] = c.b;
    }
}

Plane::Plane(int width, int height, std::uint8_t value) : width_(width), height_(height) {
    if (width < 1 || height < 1) throw ValidationError("plane dimensions must be positive");
    values_.assign(static_cast<std::size_t>(width) * height, value);
}

Plane::Plane(int width, int height, std::vector<std::uint8_t> values)
    : width_(width), height_(height), values_(std::move(values)) {
    if (width < 1 || height < 1) throw ValidationError("plane dimensions must be positive");
    if (values_.size() != static_cast<std::size_t>(width) * height) {
        throw ValidationError("plane buffer size does not match dimensions");
    }
}

Rational parse_rational(std::string_view text) {
    Rational r{0, 1};
    auto parse_int = [&](std::string_view s, std::int64_t& out) {
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            throw ValidationError("invalid frame rate '" + std::string(text) + "'");
        }
    };
    if (auto slash = text.find_first_of("/:"); slash != std::string_view::npos) {
        parse_int(text.substr(0, slash), r.num);
        parse_int(text.substr(slash + 1), r.den);
    } else {
        parse_int(text, r.num);
    }
    if (r.num <= 0 || r.den <= 0) throw ValidationError("frame rate must be positive");
    const auto g = std::gcd(r.num, r.den);
    return {r.num / g, r.den / g};
}

Clip::Clip(std::vector<Frame> frames, Rational fps) : frames_(std::move(frames)), fps_(fps) {
    if (frames_.empty()) throw ValidationError("clip needs at least one frame");
    if (fps_.num <= 0 || fps_.den <= 0) throw ValidationError("clip frame rate must be positive");
    for (const auto& f : frames_) {
        if (f.width() != frames_.front().width() || f.height() != frames_.front().height()) {
            throw ValidationError("clip frames differ in size");
        }
    }
}

MaskSequence::MaskSequence(std::vector<Plane> masks) : masks_(std::move(masks)) {
    for (const auto& m : masks_) {
        if (m.width() != masks_.front().width() || m.height() != masks_.front().height()) {
            throw ValidationError("mask frames differ in size");
        }
    }
}

MaskSequence MaskSequence::uniform(int width, int height, int count, std::uint8_t value) {
    return MaskSequence(std::vector<Plane>(static_cast<std::size_t>(count), Plane(width, height, value)));
}

MaskSequence align_masks(const MaskSequence& masks, const Clip& clip) {
    if (masks.empty()) throw AlignmentError("mask sequence is empty");
    if (masks.width() != clip.width() || masks.height() != clip.height()) {
        throw AlignmentError("mask size " + std::to_string(masks.width()) + "x" + std::to_string(masks.height()) +
                             " does not match clip size " + std::to_string(clip.width()) + "x" +
                             std::to_string(clip.height()));
    }
    if (masks.count() == clip.frame_count()) return masks;
    if (masks.count() == 1) {
        return MaskSequence(std::vector<Plane>(static_cast<std::size_t>(clip.frame_count()), masks.mask(0)));
    }
    throw AlignmentError("mask count " + std::to_string(masks.count()) + " does not match clip frame count " +
                         std::to_string(clip.frame_count()));
}

std::string_view to_string(Region r) {
    switch (r) {
        case Region::foreground: return "foreground";
        case Region::background: return "background";
        case Region::all: break;
    }
    return "all";
}

Region parse_region(std::string_view name) {
    if (name == "foreground") return Region::foreground;
    if (name == "background") return Region::background;
    if (name == "all") return Region::all;
    throw ValidationError("unknown region '" + std::string(name) + "'");
}

float region_weight(const MaskSequence& masks, Region region, int frame, int x, int y) {
    if (frame < 0 || frame >= masks.count()) throw BoundsError("frame index " + std::to_string(frame) + " out of range");
    const auto& m = masks.mask(frame);
    if (x < 0 || y < 0 || x >= m.width() || y >= m.height()) {
        throw BoundsError("pixel (" + std::to_string(x) + ", " + std::to_string(y) + ") out of range");
    }
    return region_weight(m.at(x, y), region);
}

Plane select_region(const Plane& mask, Region region) {
    Plane out = mask;
    auto values = out.data();
    switch (region) {
        case Region::foreground: break;
        case Region::background:
            std::ranges::transform(values, values.begin(), [](std::uint8_t v) { return std::uint8_t(255 - v); });
            break;
        case Region::all: std::ranges::fill(values, std::uint8_t{255}); break;
    }
    return out;
}

double SpatialEffectConfig::number(std::string_view name) const {
    auto it = params.find(name);
    if (it == params.end() || !std::holds_alternative<double>(it->second)) {
        throw ValidationError(effect_id + ": missing numeric parameter '" + std::string(name) + "'");
    }
    return std::get<double>(it->second);
}

Rgb SpatialEffectConfig::color(std::string_view name) const {
    auto it = params.find(name);
    if (it == params.end() || !std::holds_alternative<Rgb>(it->second)) {
        throw ValidationError(effect_id + ": missing color parameter '" + std::string(name) + "'");
    }
    return std::get<Rgb>(it->second);
}

const std::string& SpatialEffectConfig::text(std::string_view name) const {
    auto it = params.find(name);
    if (it == params.end() || !std::holds_alternative<std::string>(it->second)) {
        throw ValidationError(effect_id + ": missing choice parameter '" + std::string(name) + "'");
    }
    return std::get<std::string>(it->second);
}

}  // namespace vfx
