// Training triplets and dataset manifests.
//
// For one effect with K (input, output) pairs, every ordered pair of
// distinct indices (j, l) yields the triplet
//   reference = output_j, input = input_l, target = output_l,
// so an effect contributes at most K (K - 1) triplets.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vfx/core.hpp"

namespace vfx {

struct ClipPair {
    std::string input_path;
    std::string output_path;
};

struct EffectPairs {
    CompositeEffectSpec spec;
    std::vector<ClipPair> pairs;
};

/// Ordered (reference index, target index) pairs chosen for one effect,
/// sorted lexicographically. Sampled without replacement when `limit`
/// is below K (K - 1).
std::vector<std::pair<int, int>> select_index_pairs(int pair_count, std::optional<int> limit, std::uint64_t seed,
                                                    const std::string& effect_uid);

/// Effects with fewer than two pairs are skipped; a message is appended to
/// `warnings` (or printed to stderr when null).
std::vector<TripletRecord> build_triplets(const std::vector<EffectPairs>& effect_sets, std::optional<int> per_effect_limit,
                                          std::uint64_t seed, std::vector<std::string>* warnings = nullptr);

/// SHA-256 over a clip directory: each regular file's name and bytes, in
/// lexicographic name order. A plain file hashes as its bytes.
std::string clip_content_hash(const std::filesystem::path& clip_path);

inline std::filesystem::path checksum_path_for(const std::filesystem::path& manifest) {
    return manifest.string() + ".sha256";
}

/// Writes the JSON-lines manifest and its companion checksum file.
/// Relative record paths resolve against the manifest's directory.
/// Throws IntegrityError naming every missing clip before writing anything.
void write_manifest(const std::vector<TripletRecord>& records, const std::filesystem::path& path);

std::vector<TripletRecord> read_manifest(const std::filesystem::path& path);

/// Re-hashes every clip listed in the checksum file; throws IntegrityError
/// listing missing or modified clips.
void verify_manifest(const std::filesystem::path& path);

}  // namespace vfx
