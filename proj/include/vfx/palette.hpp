// Posterize palettes. The built-in set is compiled from
// assets/posterize_palettes_v1.txt; its SHA-256 is stamped into every spec
// and manifest so datasets can be traced back to the exact colors.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "vfx/core.hpp"

namespace vfx {

using Palette = std::vector<Rgb>;

struct PaletteSet {
    std::string version;
    std::vector<Palette> palettes;
    std::string content_hash;
};

/// Parses the line-oriented asset format: a version line, then one palette
/// per line as whitespace-separated 6-digit hex colors.
PaletteSet parse_palettes(std::string_view text);

const PaletteSet& builtin_palettes();
std::string_view builtin_palette_text();

inline const std::string& palette_hash() { return builtin_palettes().content_hash; }

}  // namespace vfx
