#include "vfx/palette.hpp"

#include <charconv>
#include <sstream>

#include "palette_asset.hpp"
#include "vfx/hash.hpp"

namespace vfx {

PaletteSet parse_palettes(std::string_view text) {
    PaletteSet set;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (set.version.empty()) {
            set.version = line;
            continue;
        }
        Palette palette;
        std::istringstream tokens(line);
        std::string tok;
        while (tokens >> tok) {
            unsigned value = 0;
            auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value, 16);
            if (tok.size() != 6 || ec != std::errc() || ptr != tok.data() + tok.size()) {
                throw FormatError("palette line " + std::to_string(line_no) + ": bad color '" + tok + "'");
            }
            palette.push_back({static_cast<std::uint8_t>(value >> 16), static_cast<std::uint8_t>(value >> 8),
                               static_cast<std::uint8_t>(value)});
        }
        set.palettes.push_back(std::move(palette));
    }
    set.content_hash = sha256_hex(text);
    return set;
}

std::string_view builtin_palette_text() { return detail::kPaletteAsset; }

const PaletteSet& builtin_palettes() {
    static const PaletteSet set = parse_palettes(builtin_palette_text());
    return set;
}

}  // namespace vfx
