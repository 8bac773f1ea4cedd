#include "vfx/compositor.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>

#include "vfx/effects.hpp"
#include "vfx/rng.hpp"
#include "vfx/transitions.hpp"

namespace vfx {

namespace {

double round_to(double v, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::round(v * scale) / scale;
}

double sample_range(rng::Stream& s, double lo, double hi, int decimals) {
    if (decimals == 0) return static_cast<double>(s.uniform_int(std::llround(lo), std::llround(hi)));
    return std::clamp(round_to(s.uniform(lo, hi), decimals), lo, hi);
}

template <class T>
const T& pick(rng::Stream& s, const std::vector<T>& options) {
    return options[static_cast<std::size_t>(s.uniform_int(0, static_cast<std::int64_t>(options.size()) - 1))];
}

SpatialEffectConfig sample_effect(rng::Stream& s) {
    const auto& reg = effect_registry();
    const auto& entry = reg[static_cast<std::size_t>(s.uniform_int(0, static_cast<std::int64_t>(reg.size()) - 1))];
    SpatialEffectConfig cfg{entry.effect_id, {}};
    // Paired center coordinates share one "default or uniform" decision.
    std::optional<bool> use_default_center;
    for (const auto& desc : entry.params) {
        std::visit(
            [&](const auto& space) {
                using S = std::decay_t<decltype(space)>;
                if constexpr (std::is_same_v<S, RangeSpace>) {
                    cfg.params[desc.name] = sample_range(s, space.lo, space.hi, space.decimals);
                } else if constexpr (std::is_same_v<S, SetSpace>) {
                    cfg.params[desc.name] = pick(s, space.values);
                } else if constexpr (std::is_same_v<S, ColorSpace>) {
                    const auto r = s.uniform_int(0, 255), g = s.uniform_int(0, 255), b = s.uniform_int(0, 255);
                    cfg.params[desc.name] =
                        Rgb{static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g), static_cast<std::uint8_t>(b)};
                } else if constexpr (std::is_same_v<S, ChoiceSpace>) {
                    cfg.params[desc.name] = pick(s, space.options);
                } else if constexpr (std::is_same_v<S, CenterSpace>) {
                    if (!use_default_center) use_default_center = space.allow_default && s.uniform_int(0, 1) == 0;
                    cfg.params[desc.name] =
                        *use_default_center ? 0.5 : sample_range(s, space.lo, space.hi, space.decimals);
                }
            },
            desc.space);
    }
    return cfg;
}

TransitionConfig sample_transition(rng::Stream& s, int frame_count) {
    TransitionConfig t;
    t.transition_id = pick(s, transition_ids());
    t.softness = sample_range(s, kMinSoftness, kMaxSoftness, 2);
    if (transition_uses_center(t.transition_id) && s.uniform_int(0, 1) == 1) {
        t.center_x = sample_range(s, 0.0, 1.0, 2);
        t.center_y = sample_range(s, 0.0, 1.0, 2);
    }
    // Two distinct frame boundaries in [0, frame_count], uniform over pairs.
    const auto a = static_cast<int>(s.uniform_int(0, frame_count));
    auto b = static_cast<int>(s.uniform_int(0, frame_count - 1));
    if (b >= a) ++b;
    t.window_start = std::min(a, b);
    t.window_end = std::max(a, b);
    return t;
}

void run_parallel(int task_count, int workers, const std::function<void(int)>& task) {
    if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = std::min(workers, std::max(1, task_count));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (int i = next++; i < task_count; i = next++) {
            try {
                task(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = task_count;
            }
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::string effect_uid_for_seed(std::uint64_t seed) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fx-%016llx", static_cast<unsigned long long>(seed));
    return buf;
}

void validate_spec(const CompositeEffectSpec& spec, int frame_count) {
    if (auto violations = validate_params(spec.spatial); !violations.empty()) {
        std::string msg = "invalid spatial effect parameters:";
        for (const auto& v : violations) msg += "\n  " + v;
        throw ValidationError(msg);
    }
    validate_transition(spec.transition, frame_count);
}

Clip compose(const Clip& clip, const MaskSequence* masks, const CompositeEffectSpec& spec) {
    validate_spec(spec, clip.frame_count());
    const int w = clip.width(), h = clip.height(), n = clip.frame_count();

    MaskSequence aligned;
    if (masks != nullptr) {
        aligned = align_masks(*masks, clip);
    } else if (spec.region == Region::all) {
        aligned = MaskSequence::uniform(w, h, n, 255);
    } else {
        throw MissingInputError("region '" + std::string(to_string(spec.region)) + "' needs a mask sequence");
    }

    std::vector<Plane> object;
    object.reserve(static_cast<std::size_t>(n));
    for (const auto& m : aligned.masks()) object.push_back(select_region(m, spec.region));
    const MaskSequence object_masks(std::move(object));

    const Clip effected = apply_effect(clip, spec.spatial, &object_masks, spec.seed);
    const auto distance =
        distance_field(spec.transition.transition_id, spec.transition.center_x, spec.transition.center_y, w, h);

    std::vector<Frame> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
        if (window_progress(spec.transition, t) <= 0.0) {
            out.push_back(clip.frame(t));
            continue;
        }
        const auto alpha = matte_frame(spec.transition, distance, t);
        const auto& src = clip.frame(t).data();
        const auto& eff = effected.frame(t).data();
        const auto& mask = aligned.mask(t).data();
        Frame f(w, h);
        auto dst = f.data();
        for (std::size_t i = 0; i < alpha.values.size(); ++i) {
            const float weight = region_weight(mask[i], spec.region) * static_cast<float>(alpha.values[i]);
            for (std::size_t c = 0; c < 3; ++c) {
                const std::size_t k = i * 3 + c;
                dst[k] = to_u8(weight * static_cast<float>(eff[k]) + (1.0f - weight) * static_cast<float>(src[k]));
            }
        }
        out.push_back(std::move(f));
    }
    return Clip(std::move(out), clip.fps());
}

CompositeEffectSpec sample_spec(std::uint64_t seed, int frame_count) {
    if (frame_count < 2) throw ValidationError("sampling a transition window needs at least 2 frames");
    rng::Stream s(seed, rng::Purpose::spec_sampling, 0);
    CompositeEffectSpec spec;
    spec.effect_uid = effect_uid_for_seed(seed);
    spec.seed = seed;
    static const std::vector<Region> regions{Region::foreground, Region::background, Region::all};
    spec.region = pick(s, regions);
    spec.spatial = sample_effect(s);
    spec.transition = sample_transition(s, frame_count);
    return spec;
}

EffectSetPlan plan_effect_sets(int source_count, int frame_count, int n_effects, int clips_per_effect,
                               std::uint64_t master_seed) {
    if (clips_per_effect < 1) throw ValidationError("clips per effect must be positive");
    if (n_effects < 0) throw ValidationError("effect count must be non-negative");
    if (clips_per_effect > source_count) {
        throw CapacityError("need " + std::to_string(clips_per_effect) + " distinct source clips per effect, have " +
                            std::to_string(source_count));
    }
    EffectSetPlan plan;
    for (int e = 0; e < n_effects; ++e) {
        const auto effect_seed = master_seed + static_cast<std::uint64_t>(e);
        plan.specs.push_back(sample_spec(effect_seed, frame_count));
        // Partial Fisher-Yates over source indices.
        rng::Stream s(master_seed, rng::Purpose::effect_sources, static_cast<std::uint64_t>(e));
        std::vector<int> order(static_cast<std::size_t>(source_count));
        std::iota(order.begin(), order.end(), 0);
        for (int k = 0; k < clips_per_effect; ++k) {
            const auto j = static_cast<std::size_t>(s.uniform_int(k, source_count - 1));
            std::swap(order[static_cast<std::size_t>(k)], order[j]);
        }
        order.resize(static_cast<std::size_t>(clips_per_effect));
        plan.source_indices.push_back(std::move(order));
    }
    return plan;
}

EffectSetPlan generate_effect_set(const std::vector<SourceClip>& sources, int n_effects, int clips_per_effect,
                                  std::uint64_t master_seed, int workers, const OutputSink& sink) {
    if (sources.empty()) throw CapacityError("no source clips");
    int frame_count = sources.front().clip.frame_count();
    for (const auto& s : sources) frame_count = std::min(frame_count, s.clip.frame_count());
    auto plan = plan_effect_sets(static_cast<int>(sources.size()), frame_count, n_effects, clips_per_effect, master_seed);
    run_parallel(n_effects * clips_per_effect, workers, [&](int task) {
        const int e = task / clips_per_effect, k = task % clips_per_effect;
        const int src = plan.source_indices[static_cast<std::size_t>(e)][static_cast<std::size_t>(k)];
        const auto& source = sources[static_cast<std::size_t>(src)];
        sink(e, k, src, compose(source.clip, &source.masks, plan.specs[static_cast<std::size_t>(e)]));
    });
    return plan;
}

std::vector<EffectSet> generate_effect_set(const std::vector<SourceClip>& sources, int n_effects,
                                           int clips_per_effect, std::uint64_t master_seed, int workers) {
    std::vector<std::vector<Clip>> outputs(static_cast<std::size_t>(std::max(0, n_effects)),
                                           std::vector<Clip>(static_cast<std::size_t>(std::max(0, clips_per_effect))));
    auto plan = generate_effect_set(sources, n_effects, clips_per_effect, master_seed, workers,
                                    [&](int e, int k, int, const Clip& clip) {
                                        outputs[static_cast<std::size_t>(e)][static_cast<std::size_t>(k)] = clip;
                                    });
    std::vector<EffectSet> sets;
    for (int e = 0; e < n_effects; ++e) {
        sets.push_back({plan.specs[static_cast<std::size_t>(e)], plan.source_indices[static_cast<std::size_t>(e)],
                        std::move(outputs[static_cast<std::size_t>(e)])});
    }
    return sets;
}

}  // namespace vfx
