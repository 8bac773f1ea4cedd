// Shared fixtures for the test binaries.

#pragma once

#include <cmath>
#include <filesystem>
#include <random>
#include <string>

#include "vfx/core.hpp"

namespace vfx::testing {

inline Frame random_frame(int w, int h, std::mt19937_64& gen) {
    Frame f(w, h);
    std::uniform_int_distribution<int> d(0, 255);
    for (auto& v : f.data()) v = static_cast<std::uint8_t>(d(gen));
    return f;
}

inline Clip random_clip(int w, int h, int frames, std::uint64_t seed, Rational fps = {15, 1}) {
    std::mt19937_64 gen(seed);
    std::vector<Frame> out;
    for (int t = 0; t < frames; ++t) out.push_back(random_frame(w, h, gen));
    return Clip(std::move(out), fps);
}

inline Clip solid_clip(int w, int h, int frames, Rgb c, Rational fps = {15, 1}) {
    Frame f(w, h);
    f.fill(c);
    return Clip(std::vector<Frame>(static_cast<std::size_t>(frames), f), fps);
}

/// Smooth moving gradient with a bright disc; looks like footage, compresses well.
inline Clip synthetic_footage(int w, int h, int frames, int variant, Rational fps = {15, 1}) {
    std::vector<Frame> out;
    for (int t = 0; t < frames; ++t) {
        Frame f(w, h);
        const double cx = w * (0.3 + 0.4 * std::sin(0.2 * t + variant)), cy = h * 0.5;
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                const double r = std::hypot(x - cx, y - cy);
                const bool disc = r < h / 4.0;
                f.set(x, y,
                      {static_cast<std::uint8_t>((x * 255 / std::max(1, w - 1) + 17 * variant + 3 * t) % 256),
                       static_cast<std::uint8_t>(disc ? 230 : (y * 255 / std::max(1, h - 1))),
                       static_cast<std::uint8_t>((40 * variant + 5 * t) % 256)});
            }
        }
        out.push_back(std::move(f));
    }
    return Clip(std::move(out), fps);
}

/// Disc mask that follows synthetic_footage's disc.
inline MaskSequence synthetic_masks(int w, int h, int frames, int variant) {
    std::vector<Plane> out;
    for (int t = 0; t < frames; ++t) {
        Plane p(w, h);
        const double cx = w * (0.3 + 0.4 * std::sin(0.2 * t + variant)), cy = h * 0.5;
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) p.at(x, y) = std::hypot(x - cx, y - cy) < h / 4.0 ? 255 : 0;
        out.push_back(std::move(p));
    }
    return MaskSequence(std::move(out));
}

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("vfx-" + tag + "-" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

private:
    std::filesystem::path path_;
};

}  // namespace vfx::testing
