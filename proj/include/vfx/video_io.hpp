// On-disk clips: directories of lossless PNG frames named %03d.png, plus
// a YUV4MPEG2 writer for previews.

#pragma once

#include <filesystem>
#include <string>

#include "vfx/core.hpp"

namespace vfx {

struct WriteOptions {
    bool force = false;
    /// zlib level; any level is lossless.
    int compression = 1;
};

/// Frame file name for index t ("%03d.png").
std::string frame_file_name(int t);

Frame read_png_rgb(const std::filesystem::path& path);
Plane read_png_gray(const std::filesystem::path& path);
void write_png(const Frame& frame, const std::filesystem::path& path, int compression = 1);
void write_png(const Plane& plane, const std::filesystem::path& path, int compression = 1);

/// Loads every *.png in lexicographic order.
Clip read_clip(const std::filesystem::path& dir, Rational fps);
/// Refuses to write into a non-empty directory unless options.force is set.
void write_clip(const Clip& clip, const std::filesystem::path& dir, const WriteOptions& options = {});

MaskSequence read_mask_sequence(const std::filesystem::path& dir);
void write_mask_sequence(const MaskSequence& masks, const std::filesystem::path& dir, const WriteOptions& options = {});

/// "YUV4MPEG2 W<w> H<h> F<num>:<den> Ip A1:1 C420\n"
std::string y4m_header(int width, int height, Rational fps);

/// Full-range BT.601 RGB -> YCbCr in 16-bit fixed point, round half up.
/// Chroma is the rounded mean over each 2x2 block.
std::uint8_t y4m_luma(Rgb c);
std::uint8_t y4m_cb(const Rgb (&block)[4]);
std::uint8_t y4m_cr(const Rgb (&block)[4]);

/// Requires even width and height (FormatError otherwise).
void write_y4m(const Clip& clip, const std::filesystem::path& path);

}  // namespace vfx
