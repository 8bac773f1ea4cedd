// Normalized multi-direction classifier-free guidance.
//
// Given four velocity evaluations (full conditioning, and with text,
// reference, or input dropped), each guidance direction is rescaled to the
// smallest norm among the active directions before weighting:
//
//   g_c   = v_full - v_no_text
//   g_ref = v_full - v_no_ref
//   g_in  = v_full - v_no_input
//   out   = v_no_text + sum_k lambda_k * (|g| / |g_k|) * g_k,  |g| = min_k |g_k|
//
// A direction is active when lambda_k > 0 and |g_k| > epsilon. Inactive
// directions neither contribute nor take part in the min, so a vanishing
// direction cannot zero out the others.

#pragma once

#include <array>
#include <span>
#include <vector>

namespace vfx::guidance {

inline constexpr double kDefaultEpsilon = 1e-8;

struct VelocityEvalSet {
    std::vector<double> v_full;
    std::vector<double> v_no_text;
    std::vector<double> v_no_ref;
    std::vector<double> v_no_input;
};

struct GuidanceWeights {
    double lambda_c = 0.0;
    double lambda_ref = 0.0;
    double lambda_in = 0.0;
};

enum Direction { text = 0, reference = 1, input = 2 };

struct Breakdown {
    std::array<std::vector<double>, 3> directions;  // raw g_k
    std::array<double, 3> norms{};
    std::array<bool, 3> active{};
    double shared_norm = 0.0;  // |g|; 0 when nothing is active
    std::array<std::vector<double>, 3> terms;       // lambda_k * (|g| / |g_k|) * g_k, zero if inactive
    std::vector<double> result;
};

double l2_norm(std::span<const double> v);

/// Throws AlignmentError on mismatched or empty vectors, ValidationError on
/// negative weights or non-positive epsilon.
Breakdown combine_detailed(const VelocityEvalSet& evals, const GuidanceWeights& weights,
                           double epsilon = kDefaultEpsilon);

std::vector<double> combine(const VelocityEvalSet& evals, const GuidanceWeights& weights,
                            double epsilon = kDefaultEpsilon);

}  // namespace vfx::guidance
