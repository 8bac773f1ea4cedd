// Temporal transition mattes.
//
// Every transition is a sweep over a normalized distance field d(x) in
// [0, 1]. At progress p the sweep front sits at q = p * (1 + softness) and
// alpha = clamp((q - d) / softness, 0, 1): zero everywhere at p = 0, one
// everywhere at p = 1, with a soft band of width `softness` in between.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "vfx/core.hpp"

namespace vfx {

inline constexpr double kMinSoftness = 0.01;
inline constexpr double kMaxSoftness = 0.05;

/// Transition ids in canonical order.
const std::vector<std::string>& transition_ids();
bool transition_uses_center(std::string_view transition_id);

/// Per-pixel field, row-major.
struct ScalarField {
    int width = 0;
    int height = 0;
    std::vector<double> values;
    double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

struct MatteSequence {
    std::vector<ScalarField> frames;
};

/// Normalized sweep coordinate for one pixel. Throws RegistryError for unknown ids.
double sweep_distance(std::string_view transition_id, double center_x, double center_y, int width, int height, int x,
                      int y);

ScalarField distance_field(std::string_view transition_id, double center_x, double center_y, int width, int height);

/// Linear window progress, clamped to [0, 1].
double window_progress(const TransitionConfig& config, int t);

/// Alpha for one pixel at a given progress.
double sweep_alpha(double distance, double progress, double softness);
double smoothstep(double p);

/// Throws ValidationError when the window or softness is invalid for
/// a clip of `frame_count` frames, or the id is unknown.
void validate_transition(const TransitionConfig& config, int frame_count);

/// One matte frame.
ScalarField matte_frame(const TransitionConfig& config, const ScalarField& distance, int t);

MatteSequence matte(const TransitionConfig& config, int width, int height, int frame_count);

}  // namespace vfx
