#include "vfx/guidance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vfx/core.hpp"

namespace vfx::guidance {

double l2_norm(std::span<const double> v) {
    // Scaled accumulation avoids overflow on large latents.
    double scale = 0.0, ssq = 1.0;
    for (double x : v) {
        if (x == 0.0) continue;
        const double a = std::abs(x);
        if (scale < a) {
            ssq = 1.0 + ssq * (scale / a) * (scale / a);
            scale = a;
        } else {
            ssq += (a / scale) * (a / scale);
        }
    }
    return scale * std::sqrt(ssq);
}

Breakdown combine_detailed(const VelocityEvalSet& evals, const GuidanceWeights& weights, double epsilon) {
    const std::size_t n = evals.v_full.size();
    if (n == 0) throw AlignmentError("guidance vectors must be non-empty");
    if (evals.v_no_text.size() != n || evals.v_no_ref.size() != n || evals.v_no_input.size() != n) {
        throw AlignmentError("guidance vectors differ in length: v_full=" + std::to_string(n) +
                             " v_no_text=" + std::to_string(evals.v_no_text.size()) +
                             " v_no_ref=" + std::to_string(evals.v_no_ref.size()) +
                             " v_no_input=" + std::to_string(evals.v_no_input.size()));
    }
    const std::array<double, 3> lambda{weights.lambda_c, weights.lambda_ref, weights.lambda_in};
    for (double l : lambda)
        if (!(l >= 0.0) || !std::isfinite(l)) throw ValidationError("guidance weights must be finite and non-negative");
    if (!(epsilon > 0.0)) throw ValidationError("guidance epsilon must be positive");

    Breakdown b;
    const std::array<const std::vector<double>*, 3> dropped{&evals.v_no_text, &evals.v_no_ref, &evals.v_no_input};
    double shared = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < 3; ++k) {
        auto& g = b.directions[k];
        g.resize(n);
        for (std::size_t i = 0; i < n; ++i) g[i] = evals.v_full[i] - (*dropped[k])[i];
        b.norms[k] = l2_norm(g);
        b.active[k] = lambda[k] > 0.0 && b.norms[k] > epsilon;
        if (b.active[k]) shared = std::min(shared, b.norms[k]);
    }
    b.shared_norm = std::isfinite(shared) ? shared : 0.0;

    b.result = evals.v_no_text;
    for (std::size_t k = 0; k < 3; ++k) {
        auto& term = b.terms[k];
        term.assign(n, 0.0);
        if (!b.active[k]) continue;
        const double scale = lambda[k] * (b.shared_norm / b.norms[k]);
        for (std::size_t i = 0; i < n; ++i) {
            term[i] = scale * b.directions[k][i];
            b.result[i] += term[i];
        }
    }
    return b;
}

std::vector<double> combine(const VelocityEvalSet& evals, const GuidanceWeights& weights, double epsilon) {
    return combine_detailed(evals, weights, epsilon).result;
}

}  // namespace vfx::guidance
