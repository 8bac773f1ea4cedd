#include "vfx/triplets.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "vfx/hash.hpp"
#include "vfx/palette.hpp"
#include "vfx/rng.hpp"
#include "vfx/spec_io.hpp"

namespace vfx {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr const char* kManifestKind = "vfx-triplet-manifest";
constexpr int kManifestVersion = 1;

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

fs::path resolve(const fs::path& base, const std::string& p) {
    const fs::path path(p);
    return path.is_absolute() ? path : base / path;
}

std::vector<std::string> referenced_paths(const std::vector<TripletRecord>& records) {
    std::set<std::string> unique;
    for (const auto& r : records) {
        unique.insert(r.reference_path);
        unique.insert(r.input_path);
        unique.insert(r.target_path);
    }
    return {unique.begin(), unique.end()};
}

}  // namespace

std::vector<std::pair<int, int>> select_index_pairs(int pair_count, std::optional<int> limit, std::uint64_t seed,
                                                    const std::string& effect_uid) {
    std::vector<std::pair<int, int>> all;
    for (int j = 0; j < pair_count; ++j)
        for (int l = 0; l < pair_count; ++l)
            if (j != l) all.emplace_back(j, l);
    if (limit && *limit < static_cast<int>(all.size())) {
        const int keep = std::max(0, *limit);
        rng::Stream s(seed, rng::Purpose::triplet_selection, fnv1a(effect_uid));
        for (int k = 0; k < keep; ++k) {
            const auto pick = static_cast<std::size_t>(s.uniform_int(k, static_cast<std::int64_t>(all.size()) - 1));
            std::swap(all[static_cast<std::size_t>(k)], all[pick]);
        }
        all.resize(static_cast<std::size_t>(keep));
        std::ranges::sort(all);
    }
    return all;
}

std::vector<TripletRecord> build_triplets(const std::vector<EffectPairs>& effect_sets, std::optional<int> per_effect_limit,
                                          std::uint64_t seed, std::vector<std::string>* warnings) {
    std::vector<TripletRecord> records;
    for (const auto& set : effect_sets) {
        const int k = static_cast<int>(set.pairs.size());
        if (k < 2) {
            const std::string msg = "skipping effect " + set.spec.effect_uid + ": needs at least 2 clip pairs, has " +
                                    std::to_string(k);
            if (warnings != nullptr) warnings->push_back(msg);
            else std::cerr << "warning: " << msg << '\n';
            continue;
        }
        for (auto [j, l] : select_index_pairs(k, per_effect_limit, seed, set.spec.effect_uid)) {
            const auto& ref = set.pairs[static_cast<std::size_t>(j)];
            const auto& tgt = set.pairs[static_cast<std::size_t>(l)];
            records.push_back({set.spec.effect_uid, ref.output_path, tgt.input_path, tgt.output_path, set.spec});
        }
    }
    return records;
}

std::string clip_content_hash(const fs::path& clip_path) {
    if (fs::is_regular_file(clip_path)) return sha256_file(clip_path);
    if (!fs::is_directory(clip_path)) throw IntegrityError("missing clip " + clip_path.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(clip_path))
        if (entry.is_regular_file()) files.push_back(entry.path());
    std::ranges::sort(files);
    Sha256 h;
    for (const auto& f : files) {
        const auto name = f.filename().string();
        h.update(name);
        h.update(std::string_view("\0", 1));
        h.update(sha256_file(f));
    }
    return h.hex_digest();
}

void write_manifest(const std::vector<TripletRecord>& records, const fs::path& path) {
    const fs::path base = path.parent_path().empty() ? fs::path(".") : path.parent_path();
    const auto paths = referenced_paths(records);

    std::vector<std::string> missing;
    for (const auto& p : paths)
        if (!fs::exists(resolve(base, p))) missing.push_back(p);
    if (!missing.empty()) {
        std::string msg = std::to_string(missing.size()) + " referenced clip(s) missing:";
        for (const auto& m : missing) msg += "\n  " + m;
        throw IntegrityError(msg);
    }

    std::ostringstream body;
    ordered_json header;
    header["manifest"] = kManifestKind;
    header["version"] = kManifestVersion;
    header["engine_version"] = std::string(kEngineVersion);
    header["palette_hash"] = palette_hash();
    header["records"] = records.size();
    body << header.dump() << '\n';
    for (const auto& r : records) {
        ordered_json row;
        row["effect_uid"] = r.effect_uid;
        row["spec"] = spec_to_json(r.spec);
        row["reference_path"] = r.reference_path;
        row["input_path"] = r.input_path;
        row["target_path"] = r.target_path;
        row["engine_version"] = std::string(kEngineVersion);
        row["palette_hash"] = palette_hash();
        body << row.dump() << '\n';
    }

    std::ostringstream sums;
    for (const auto& p : paths) sums << clip_content_hash(resolve(base, p)) << "  " << p << '\n';

    auto write = [](const fs::path& target, const std::string& text) {
        std::ofstream out(target, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + target.string());
        out << text;
        if (!out) throw IoError("write failed: " + target.string());
    };
    write(path, body.str());
    write(checksum_path_for(path), sums.str());
}

std::vector<TripletRecord> read_manifest(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read manifest " + path.string());
    std::vector<TripletRecord> records;
    std::string line;
    int line_no = 0;
    std::size_t declared = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            const auto j = json::parse(line);
            if (line_no == 1) {
                if (j.value("manifest", "") != kManifestKind) throw FormatError("not a triplet manifest");
                declared = j.at("records").get<std::size_t>();
                continue;
            }
            records.push_back({j.at("effect_uid").get<std::string>(), j.at("reference_path").get<std::string>(),
                               j.at("input_path").get<std::string>(), j.at("target_path").get<std::string>(),
                               spec_from_json(j.at("spec"))});
        } catch (const json::exception& e) {
            throw FormatError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (line_no == 0) throw FormatError(path.string() + ": empty manifest (missing header)");
    if (records.size() != declared)
        throw FormatError(path.string() + ": header declares " + std::to_string(declared) + " records, found " +
                          std::to_string(records.size()));
    return records;
}

void verify_manifest(const fs::path& path) {
    const fs::path base = path.parent_path().empty() ? fs::path(".") : path.parent_path();
    std::ifstream in(checksum_path_for(path), std::ios::binary);
    if (!in) throw IntegrityError("missing checksum file for " + path.string());
    std::vector<std::string> bad;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto sep = line.find("  ");
        if (sep == std::string::npos) throw FormatError("malformed checksum line: " + line);
        const std::string expected = line.substr(0, sep), rel = line.substr(sep + 2);
        const auto target = resolve(base, rel);
        if (!fs::exists(target)) {
            bad.push_back(rel + " (missing)");
        } else if (clip_content_hash(target) != expected) {
            bad.push_back(rel + " (modified)");
        }
    }
    if (!bad.empty()) {
        std::string msg = std::to_string(bad.size()) + " clip(s) failed integrity check:";
        for (const auto& b : bad) msg += "\n  " + b;
        throw IntegrityError(msg);
    }
}

}  // namespace vfx
