#include "vfx/transitions.hpp"

#include <algorithm>
#include <cmath>

namespace vfx {

namespace {

enum class Shape {
    alpha_blend,
    wipe_left_to_right,
    wipe_right_to_left,
    wipe_top_to_bottom,
    wipe_bottom_to_top,
    diag_top_left_bottom_right,
    diag_bottom_right_top_left,
    diag_top_right_bottom_left,
    diag_bottom_left_top_right,
    circle_out,
    circle_in,
    rect_out,
    rect_in,
    diamond_out,
    diamond_in,
};

struct Named {
    const char* id;
    Shape shape;
    bool centered;
};

constexpr Named kTransitions[] = {
    {"alpha_blend", Shape::alpha_blend, true},
    {"wipe_left_to_right", Shape::wipe_left_to_right, false},
    {"wipe_right_to_left", Shape::wipe_right_to_left, false},
    {"wipe_top_to_bottom", Shape::wipe_top_to_bottom, false},
    {"wipe_bottom_to_top", Shape::wipe_bottom_to_top, false},
    {"diag_top_left_bottom_right", Shape::diag_top_left_bottom_right, false},
    {"diag_bottom_right_top_left", Shape::diag_bottom_right_top_left, false},
    {"diag_top_right_bottom_left", Shape::diag_top_right_bottom_left, false},
    {"diag_bottom_left_top_right", Shape::diag_bottom_left_top_right, false},
    {"circle_out", Shape::circle_out, true},
    {"circle_in", Shape::circle_in, true},
    {"rect_out", Shape::rect_out, true},
    {"rect_in", Shape::rect_in, true},
    {"diamond_out", Shape::diamond_out, true},
    {"diamond_in", Shape::diamond_in, true},
};

const Named& lookup(std::string_view id) {
    for (const auto& t : kTransitions)
        if (id == t.id) return t;
    throw RegistryError("unknown transition '" + std::string(id) + "'");
}

double ratio(double v, int extent) { return extent > 1 ? v / (extent - 1) : 0.0; }

enum class Metric { euclidean, chebyshev, manhattan };

double metric(Metric m, double dx, double dy) {
    switch (m) {
        case Metric::euclidean: return std::hypot(dx, dy);
        case Metric::chebyshev: return std::max(std::abs(dx), std::abs(dy));
        case Metric::manhattan: break;
    }
    return std::abs(dx) + std::abs(dy);
}

double radial(Metric m, double cx, double cy, int w, int h, int x, int y) {
    const double px = cx * (w - 1), py = cy * (h - 1);
    double far = 0.0;
    for (double ex : {0.0, static_cast<double>(w - 1)})
        for (double ey : {0.0, static_cast<double>(h - 1)}) far = std::max(far, metric(m, ex - px, ey - py));
    return far > 0.0 ? std::min(1.0, metric(m, x - px, y - py) / far) : 0.0;
}

// Projection of (x, y) onto the corner-to-corner
// diagonal, normalized so the starting corner is 0 and the opposite corner 1.
double diagonal(bool from_right, int w, int h, int x, int y) {
    const double dx = w - 1, dy = h - 1;
    const double denom = dx * dx + dy * dy;
    if (denom == 0.0) return 0.0;
    const double u = from_right ? (w - 1 - x) : x;
    return std::clamp((u * dx + y * dy) / denom, 0.0, 1.0);
}

}  // namespace

const std::vector<std::string>& transition_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& t : kTransitions) v.emplace_back(t.id);
        return v;
    }();
    return ids;
}

bool transition_uses_center(std::string_view transition_id) { return lookup(transition_id).centered; }

double sweep_distance(std::string_view transition_id, double cx, double cy, int w, int h, int x, int y) {
    switch (lookup(transition_id).shape) {
        case Shape::alpha_blend: return 0.0;
        case Shape::wipe_left_to_right: return ratio(x, w);
        case Shape::wipe_right_to_left: return 1.0 - ratio(x, w);
        case Shape::wipe_top_to_bottom: return ratio(y, h);
        case Shape::wipe_bottom_to_top: return 1.0 - ratio(y, h);
        case Shape::diag_top_left_bottom_right: return diagonal(false, w, h, x, y);
        case Shape::diag_bottom_right_top_left: return 1.0 - diagonal(false, w, h, x, y);
        case Shape::diag_top_right_bottom_left: return diagonal(true, w, h, x, y);
        case Shape::diag_bottom_left_top_right: return 1.0 - diagonal(true, w, h, x, y);
        case Shape::circle_out: return radial(Metric::euclidean, cx, cy, w, h, x, y);
        case Shape::circle_in: return 1.0 - radial(Metric::euclidean, cx, cy, w, h, x, y);
        case Shape::rect_out: return radial(Metric::chebyshev, cx, cy, w, h, x, y);
        case Shape::rect_in: return 1.0 - radial(Metric::chebyshev, cx, cy, w, h, x, y);
        case Shape::diamond_out: return radial(Metric::manhattan, cx, cy, w, h, x, y);
        case Shape::diamond_in: return 1.0 - radial(Metric::manhattan, cx, cy, w, h, x, y);
    }
    return 0.0;
}

ScalarField distance_field(std::string_view transition_id, double cx, double cy, int w, int h) {
    ScalarField f{w, h, std::vector<double>(static_cast<std::size_t>(w) * h)};
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            f.values[static_cast<std::size_t>(y) * w + x] = sweep_distance(transition_id, cx, cy, w, h, x, y);
    return f;
}

double window_progress(const TransitionConfig& config, int t) {
    const double p = static_cast<double>(t - config.window_start) / (config.window_end - config.window_start);
    return std::clamp(p, 0.0, 1.0);
}

double smoothstep(double p) {
    p = std::clamp(p, 0.0, 1.0);
    return p * p * (3.0 - 2.0 * p);
}

double sweep_alpha(double distance, double progress, double softness) {
    if (progress <= 0.0) return 0.0;
    if (progress >= 1.0) return 1.0;
    const double front = progress * (1.0 + softness);
    return std::clamp((front - distance) / softness, 0.0, 1.0);
}

void validate_transition(const TransitionConfig& config, int frame_count) {
    lookup(config.transition_id);
    if (!(config.window_start < config.window_end))
        throw ValidationError("transition window needs start < end, got [" + std::to_string(config.window_start) + ", " +
                              std::to_string(config.window_end) + "]");
    if (config.window_start < 0 || config.window_end > frame_count)
        throw ValidationError("transition window [" + std::to_string(config.window_start) + ", " +
                              std::to_string(config.window_end) + "] outside [0, " + std::to_string(frame_count) + "]");
    if (!(config.softness >= kMinSoftness && config.softness <= kMaxSoftness))
        throw ValidationError("transition softness " + std::to_string(config.softness) + " outside [0.01, 0.05]");
    if (!(config.center_x >= 0.0 && config.center_x <= 1.0 && config.center_y >= 0.0 && config.center_y <= 1.0))
        throw ValidationError("transition center must lie in [0, 1]^2");
}

ScalarField matte_frame(const TransitionConfig& config, const ScalarField& distance, int t) {
    const double p = window_progress(config, t);
    ScalarField out{distance.width, distance.height, std::vector<double>(distance.values.size())};
    if (lookup(config.transition_id).shape == Shape::alpha_blend) {
        std::ranges::fill(out.values, smoothstep(p));
        return out;
    }
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = sweep_alpha(distance.values[i], p, config.softness);
    return out;
}

MatteSequence matte(const TransitionConfig& config, int width, int height, int frame_count) {
    validate_transition(config, frame_count);
    const auto d = distance_field(config.transition_id, config.center_x, config.center_y, width, height);
    MatteSequence seq;
    seq.frames.reserve(static_cast<std::size_t>(frame_count));
    for (int t = 0; t < frame_count; ++t) seq.frames.push_back(matte_frame(config, d, t));
    return seq;
}

}  // namespace vfx
