#include "vfx/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <ostream>

#include <json.hpp>

#include "vfx/compositor.hpp"
#include "vfx/spec_io.hpp"
#include "vfx/triplets.hpp"
#include "vfx/video_io.hpp"

namespace vfx {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path normalized_absolute(const fs::path& p) { return fs::absolute(p).lexically_normal(); }

std::string relative_to(const fs::path& target, const fs::path& base) {
    return normalized_absolute(target).lexically_relative(normalized_absolute(base)).generic_string();
}

void prepare_out_dir(const fs::path& out_dir, bool force) {
    if (fs::exists(out_dir) && !fs::is_empty(out_dir)) {
        if (!force) throw IoError("refusing to overwrite non-empty directory " + out_dir.string());
        for (const char* name : {"clips", "specs"}) fs::remove_all(out_dir / name);
        fs::remove(out_dir / "manifest.jsonl");
        fs::remove(checksum_path_for(out_dir / "manifest.jsonl"));
    }
    fs::create_directories(out_dir / "clips");
    fs::create_directories(out_dir / "specs");
}

}  // namespace

std::vector<CorpusEntry> read_corpus_manifest(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read corpus manifest " + path.string());
    const fs::path base = path.parent_path();
    std::vector<CorpusEntry> entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const auto j = json::parse(line);
            CorpusEntry e;
            e.clip_dir = base / j.at("clip_dir").get<std::string>();
            e.mask_dir = base / j.at("mask_dir").get<std::string>();
            e.clip_id = j.at("clip_id").get<std::string>();
            e.fps = parse_rational(j.contains("fps") ? j["fps"].get<std::string>() : std::string("15"));
            if (e.clip_id.empty() || e.clip_id.find('/') != std::string::npos)
                throw ValidationError("clip_id must be a non-empty name without '/'");
            entries.push_back(std::move(e));
        } catch (const json::exception& e) {
            throw FormatError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return entries;
}

void write_corpus_manifest(const std::vector<CorpusEntry>& entries, const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    const fs::path base = path.parent_path().empty() ? fs::path(".") : path.parent_path();
    for (const auto& e : entries) {
        nlohmann::ordered_json j;
        j["clip_dir"] = relative_to(e.clip_dir, base);
        j["mask_dir"] = relative_to(e.mask_dir, base);
        j["clip_id"] = e.clip_id;
        j["fps"] = std::to_string(e.fps.num) + "/" + std::to_string(e.fps.den);
        out << j.dump() << '\n';
    }
}

DatasetSummary build_dataset(const DatasetOptions& options) {
    auto log = [&](const std::string& msg) {
        if (options.progress != nullptr) *options.progress << msg << '\n';
    };

    const auto corpus = read_corpus_manifest(options.corpus_manifest);
    if (static_cast<int>(corpus.size()) < options.clips_per_effect) {
        throw CapacityError("corpus has " + std::to_string(corpus.size()) + " source clips, " +
                            std::to_string(options.clips_per_effect) + " needed per effect");
    }
    {
        std::vector<std::string> ids;
        for (const auto& e : corpus) ids.push_back(e.clip_id);
        std::ranges::sort(ids);
        if (std::ranges::adjacent_find(ids) != ids.end()) throw ValidationError("duplicate clip_id in corpus manifest");
    }

    std::vector<SourceClip> sources;
    sources.reserve(corpus.size());
    for (const auto& e : corpus) {
        auto clip = read_clip(e.clip_dir, e.fps);
        auto masks = align_masks(read_mask_sequence(e.mask_dir), clip);
        sources.push_back({std::move(clip), std::move(masks)});
    }
    // Triplets pair clips from different sources, so the corpus must be uniform.
    for (const auto& s : sources) {
        const auto& a = s.clip;
        const auto& b = sources.front().clip;
        if (a.width() != b.width() || a.height() != b.height() || a.frame_count() != b.frame_count() || a.fps() != b.fps())
            throw ValidationError("corpus clips must share size, frame count and frame rate");
    }
    log("loaded " + std::to_string(sources.size()) + " source clips");

    prepare_out_dir(options.out_dir, options.force);
    const fs::path clips_root = options.out_dir / "clips";

    const auto plan = plan_effect_sets(static_cast<int>(sources.size()), sources.front().clip.frame_count(),
                                       options.n_effects, options.clips_per_effect, options.seed);
    for (const auto& spec : plan.specs) write_spec_file(spec, options.out_dir / "specs" / (spec.effect_uid + ".json"));

    std::atomic<int> done{0};
    std::mutex log_mutex;
    const int total = options.n_effects * options.clips_per_effect;
    generate_effect_set(sources, options.n_effects, options.clips_per_effect, options.seed, options.workers,
                        [&](int e, int, int src, const Clip& clip) {
                            const auto& uid = plan.specs[static_cast<std::size_t>(e)].effect_uid;
                            write_clip(clip, clips_root / uid / corpus[static_cast<std::size_t>(src)].clip_id);
                            const int n = ++done;
                            std::lock_guard lock(log_mutex);
                            log("rendered " + std::to_string(n) + "/" + std::to_string(total));
                        });

    std::vector<EffectPairs> sets;
    for (int e = 0; e < options.n_effects; ++e) {
        const auto& spec = plan.specs[static_cast<std::size_t>(e)];
        auto indices = plan.source_indices[static_cast<std::size_t>(e)];
        std::ranges::sort(indices);
        EffectPairs set{spec, {}};
        for (int src : indices) {
            const auto& entry = corpus[static_cast<std::size_t>(src)];
            set.pairs.push_back({relative_to(entry.clip_dir, options.out_dir),
                                 "clips/" + spec.effect_uid + "/" + entry.clip_id});
        }
        sets.push_back(std::move(set));
    }
    std::ranges::sort(sets, {}, [](const EffectPairs& s) { return s.spec.effect_uid; });

    std::vector<std::string> warnings;
    const auto records = build_triplets(sets, options.per_effect_limit, options.seed, &warnings);
    for (const auto& w : warnings) log("warning: " + w);

    const fs::path manifest = options.out_dir / "manifest.jsonl";
    write_manifest(records, manifest);
    verify_manifest(manifest);
    log("wrote " + std::to_string(records.size()) + " triplets to " + manifest.string());

    return {total, static_cast<int>(records.size()), options.n_effects, manifest};
}

}  // namespace vfx
