#include "vfx/video_io.hpp"

#include <png.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <memory>
#include <vector>

namespace vfx {

namespace fs = std::filesystem;

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const fs::path& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f) throw IoError("cannot open " + path.string());
    return f;
}

[[noreturn]] void png_fail(png_structp png, png_const_charp msg) {
    throw FormatError(std::string("png: ") + msg + " (" + static_cast<const char*>(png_get_error_ptr(png)) + ")");
}

void png_warn(png_structp, png_const_charp) {}

// Decodes a PNG to 8-bit samples with `channels` channels (1 or 3).
std::vector<std::uint8_t> decode_png(const fs::path& path, int channels, int& width, int& height) {
    auto file = open_file(path, "rb");
    const std::string where = path.string();
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, const_cast<char*>(where.c_str()), png_fail, png_warn);
    if (png == nullptr) throw IoError("png: out of memory");
    png_infop info = png_create_info_struct(png);
    struct Guard {
        png_structp* png;
        png_infop* info;
        ~Guard() { png_destroy_read_struct(png, info, nullptr); }
    } guard{&png, &info};

    png_init_io(png, file.get());
    png_read_info(png, info);
    const int color = png_get_color_type(png, info);
    if (png_get_bit_depth(png, info) == 16) png_set_strip_16(png);
    if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color == PNG_COLOR_TYPE_GRAY && png_get_bit_depth(png, info) < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (color & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) {
        png_set_tRNS_to_alpha(png);
        png_set_strip_alpha(png);
    }
    const bool source_gray = (color & PNG_COLOR_MASK_COLOR) == 0;
    if (channels == 3 && source_gray) png_set_gray_to_rgb(png);
    if (channels == 1 && !source_gray) png_set_rgb_to_gray_fixed(png, 1, -1, -1);
    png_read_update_info(png, info);

    width = static_cast<int>(png_get_image_width(png, info));
    height = static_cast<int>(png_get_image_height(png, info));
    if (static_cast<int>(png_get_channels(png, info)) != channels) throw FormatError("png: unsupported layout in " + where);
    std::vector<std::uint8_t> pixels(static_cast<std::size_t>(width) * height * channels);
    std::vector<png_bytep> rows(static_cast<std::size_t>(height));
    for (int y = 0; y < height; ++y) rows[static_cast<std::size_t>(y)] = pixels.data() + static_cast<std::size_t>(y) * width * channels;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    return pixels;
}

void encode_png(const fs::path& path, std::span<const std::uint8_t> pixels, int width, int height, int channels,
                int compression) {
    auto file = open_file(path, "wb");
    const std::string where = path.string();
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, const_cast<char*>(where.c_str()), png_fail, png_warn);
    if (png == nullptr) throw IoError("png: out of memory");
    png_infop info = png_create_info_struct(png);
    struct Guard {
        png_structp* png;
        png_infop* info;
        ~Guard() { png_destroy_write_struct(png, info); }
    } guard{&png, &info};

    png_init_io(png, file.get());
    png_set_compression_level(png, std::clamp(compression, 0, 9));
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8,
                 channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < height; ++y)
        png_write_row(png, pixels.data() + static_cast<std::size_t>(y) * width * channels);
    png_write_end(png, nullptr);
}

std::vector<fs::path> list_pngs(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".png") files.push_back(e.path());
    std::ranges::sort(files, [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
    return files;
}

void prepare_dir(const fs::path& dir, const WriteOptions& options) {
    std::error_code ec;
    if (fs::exists(dir)) {
        if (!fs::is_directory(dir)) throw IoError("output path exists and is not a directory: " + dir.string());
        if (!fs::is_empty(dir)) {
            if (!options.force) throw IoError("refusing to overwrite non-empty directory " + dir.string());
            for (const auto& e : fs::directory_iterator(dir))
                if (e.is_regular_file() && e.path().extension() == ".png") fs::remove(e.path());
        }
    } else if (!fs::create_directories(dir, ec) && ec) {
        throw IoError("cannot create " + dir.string() + ": " + ec.message());
    }
}

}  // namespace

std::string frame_file_name(int t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%03d.png", t);
    return buf;
}

Frame read_png_rgb(const fs::path& path) {
    int w = 0, h = 0;
    auto px = decode_png(path, 3, w, h);
    return Frame(w, h, std::move(px));
}

Plane read_png_gray(const fs::path& path) {
    int w = 0, h = 0;
    auto px = decode_png(path, 1, w, h);
    return Plane(w, h, std::move(px));
}

void write_png(const Frame& frame, const fs::path& path, int compression) {
    encode_png(path, frame.data(), frame.width(), frame.height(), 3, compression);
}

void write_png(const Plane& plane, const fs::path& path, int compression) {
    encode_png(path, plane.data(), plane.width(), plane.height(), 1, compression);
}

Clip read_clip(const fs::path& dir, Rational fps) {
    const auto files = list_pngs(dir);
    if (files.empty()) throw IoError("no frames in " + dir.string());
    std::vector<Frame> frames;
    frames.reserve(files.size());
    for (const auto& f : files) {
        frames.push_back(read_png_rgb(f));
        if (frames.back().width() != frames.front().width() || frames.back().height() != frames.front().height()) {
            throw FormatError(f.string() + " is " + std::to_string(frames.back().width()) + "x" +
                              std::to_string(frames.back().height()) + ", expected " +
                              std::to_string(frames.front().width()) + "x" + std::to_string(frames.front().height()));
        }
    }
    return Clip(std::move(frames), fps);
}

void write_clip(const Clip& clip, const fs::path& dir, const WriteOptions& options) {
    prepare_dir(dir, options);
    for (int t = 0; t < clip.frame_count(); ++t) write_png(clip.frame(t), dir / frame_file_name(t), options.compression);
}

MaskSequence read_mask_sequence(const fs::path& dir) {
    const auto files = list_pngs(dir);
    if (files.empty()) throw IoError("no masks in " + dir.string());
    std::vector<Plane> masks;
    masks.reserve(files.size());
    for (const auto& f : files) {
        masks.push_back(read_png_gray(f));
        if (masks.back().width() != masks.front().width() || masks.back().height() != masks.front().height())
            throw FormatError(f.string() + ": mask size differs from the first mask");
    }
    return MaskSequence(std::move(masks));
}

void write_mask_sequence(const MaskSequence& masks, const fs::path& dir, const WriteOptions& options) {
    prepare_dir(dir, options);
    for (int t = 0; t < masks.count(); ++t) write_png(masks.mask(t), dir / frame_file_name(t), options.compression);
}

std::string y4m_header(int width, int height, Rational fps) {
    return "YUV4MPEG2 W" + std::to_string(width) + " H" + std::to_string(height) + " F" + std::to_string(fps.num) + ":" +
           std::to_string(fps.den) + " Ip A1:1 C420\n";
}

// Coefficients are round(k * 65536) of the BT.601 full-range matrix.
std::uint8_t y4m_luma(Rgb c) {
    return static_cast<std::uint8_t>((19595 * c.r + 38470 * c.g + 7471 * c.b + 32768) >> 16);
}

std::uint8_t y4m_cb(const Rgb (&block)[4]) {
    std::int64_t sum = 0;
    for (const auto& c : block) sum += -11058 * c.r - 21710 * c.g + 32768 * c.b;
    // Mean of four samples, +128 offset, round half up: (sum + 4*128*65536 + 2*65536) / (4*65536).
    const std::int64_t v = (sum + (std::int64_t{512} << 16) + (std::int64_t{2} << 16)) >> 18;
    return static_cast<std::uint8_t>(std::clamp<std::int64_t>(v, 0, 255));
}

std::uint8_t y4m_cr(const Rgb (&block)[4]) {
    std::int64_t sum = 0;
    for (const auto& c : block) sum += 32768 * c.r - 27439 * c.g - 5329 * c.b;
    const std::int64_t v = (sum + (std::int64_t{512} << 16) + (std::int64_t{2} << 16)) >> 18;
    return static_cast<std::uint8_t>(std::clamp<std::int64_t>(v, 0, 255));
}

void write_y4m(const Clip& clip, const fs::path& path) {
    const int w = clip.width(), h = clip.height();
    if (w % 2 != 0 || h % 2 != 0)
        throw FormatError("4:2:0 output needs even dimensions, got " + std::to_string(w) + "x" + std::to_string(h));
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << y4m_header(w, h, clip.fps());
    std::vector<char> y(static_cast<std::size_t>(w) * h), cb(static_cast<std::size_t>(w / 2) * (h / 2)), cr(cb.size());
    for (const auto& f : clip.frames()) {
        for (int py = 0; py < h; ++py)
            for (int px = 0; px < w; ++px) y[static_cast<std::size_t>(py) * w + px] = static_cast<char>(y4m_luma(f.at(px, py)));
        for (int by = 0; by < h / 2; ++by) {
            for (int bx = 0; bx < w / 2; ++bx) {
                const Rgb block[4] = {f.at(2 * bx, 2 * by), f.at(2 * bx + 1, 2 * by), f.at(2 * bx, 2 * by + 1),
                                      f.at(2 * bx + 1, 2 * by + 1)};
                const auto i = static_cast<std::size_t>(by) * (w / 2) + bx;
                cb[i] = static_cast<char>(y4m_cb(block));
                cr[i] = static_cast<char>(y4m_cr(block));
            }
        }
        out << "FRAME\n";
        out.write(y.data(), static_cast<std::streamsize>(y.size()));
        out.write(cb.data(), static_cast<std::streamsize>(cb.size()));
        out.write(cr.data(), static_cast<std::streamsize>(cr.size()));
    }
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace vfx
