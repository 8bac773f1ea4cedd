// JSON form of CompositeEffectSpec.
//
//   {"effect_uid": "...", "region": "foreground",
//    "spatial": {"effect_id": "glow", "params": {"glow_color": [r, g, b], ...}},
//    "transition": {"transition_id": "...", "softness": 0.03, "center": [x, y],
//                   "window": [start, end]},
//    "seed": 7, "palette_hash": "...", "engine_version": "..."}
//
// Numbers are written at full round-trip precision.

#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "vfx/core.hpp"

namespace vfx {

nlohmann::ordered_json spec_to_json(const CompositeEffectSpec& spec);
CompositeEffectSpec spec_from_json(const nlohmann::json& j);

std::string spec_to_text(const CompositeEffectSpec& spec);
CompositeEffectSpec spec_from_text(const std::string& text);

void write_spec_file(const CompositeEffectSpec& spec, const std::filesystem::path& path);
CompositeEffectSpec read_spec_file(const std::filesystem::path& path);

}  // namespace vfx
