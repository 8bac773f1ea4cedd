// Batch dataset production: corpus -> effect sets -> triplets -> manifest.
//
// Output layout under out_dir:
//   clips/<effect_uid>/<clip_id>/NNN.png   effected clips
//   specs/<effect_uid>.json                one spec per effect
//   manifest.jsonl, manifest.jsonl.sha256
// Paths inside the manifest are relative to out_dir.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vfx/core.hpp"

namespace vfx {

struct CorpusEntry {
    std::filesystem::path clip_dir;
    std::filesystem::path mask_dir;
    std::string clip_id;
    Rational fps;
};

/// JSON lines {"clip_dir": ..., "mask_dir": ..., "clip_id": ..., "fps": "15"}; fps
/// is optional (default 15). Relative dirs resolve against the manifest's directory.
std::vector<CorpusEntry> read_corpus_manifest(const std::filesystem::path& path);
void write_corpus_manifest(const std::vector<CorpusEntry>& entries, const std::filesystem::path& path);

struct DatasetOptions {
    std::filesystem::path corpus_manifest;
    std::filesystem::path out_dir;
    int n_effects = 0;
    int clips_per_effect = 0;
    std::optional<int> per_effect_limit;
    std::uint64_t seed = 0;
    int workers = 0;
    bool force = false;
    std::ostream* progress = nullptr;
};

struct DatasetSummary {
    int output_clips = 0;
    int triplets = 0;
    int effects = 0;
    std::filesystem::path manifest;
};

DatasetSummary build_dataset(const DatasetOptions& options);

}  // namespace vfx
