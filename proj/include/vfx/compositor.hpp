// Composite effect application and random spec sampling.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "vfx/core.hpp"

namespace vfx {

/// out = w * effected + (1 - w) * clip with w = region weight * matte alpha,
/// blended in float32 and rounded half up once.
///
/// `masks` may be null only when spec.region is `all`; a single mask is
/// broadcast to every frame.
Clip compose(const Clip& clip, const MaskSequence* masks, const CompositeEffectSpec& spec);

/// Throws ValidationError (or a subclass) if the spec cannot be applied to a
/// clip of `frame_count` frames.
void validate_spec(const CompositeEffectSpec& spec, int frame_count);

/// Draws region, effect, parameters, transition and window from the stream
/// keyed by `seed`. Requires frame_count >= 2.
CompositeEffectSpec sample_spec(std::uint64_t seed, int frame_count);

std::string effect_uid_for_seed(std::uint64_t seed);

struct SourceClip {
    Clip clip;
    MaskSequence masks;
};

struct EffectSet {
    CompositeEffectSpec spec;
    /// Indices into the source list, one per output clip.
    std::vector<int> source_indices;
    std::vector<Clip> outputs;
};

/// Receives each finished output; called concurrently from worker threads.
using OutputSink = std::function<void(int effect_index, int slot, int source_index, const Clip& clip)>;

struct EffectSetPlan {
    std::vector<CompositeEffectSpec> specs;
    std::vector<std::vector<int>> source_indices;
};

/// Specs and source assignments only; no pixels touched.
EffectSetPlan plan_effect_sets(int source_count, int frame_count, int n_effects, int clips_per_effect,
                               std::uint64_t master_seed);

/// Streams outputs to `sink` using `workers` threads (0 = hardware concurrency).
EffectSetPlan generate_effect_set(const std::vector<SourceClip>& sources, int n_effects, int clips_per_effect,
                                  std::uint64_t master_seed, int workers, const OutputSink& sink);

/// In-memory variant returning every output clip.
std::vector<EffectSet> generate_effect_set(const std::vector<SourceClip>& sources, int n_effects,
                                           int clips_per_effect, std::uint64_t master_seed, int workers = 1);

}  // namespace vfx
