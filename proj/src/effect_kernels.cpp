#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "vfx/effects.hpp"
#include "vfx/rng.hpp"

namespace vfx::effects {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDegToRad = std::numbers::pi / 180.0;

// Interleaved float working copy of a frame (or a plane when channels == 1).
struct FloatImage {
    int width = 0;
    int height = 0;
    int channels = 3;
    std::vector<float> v;

    float& at(int x, int y, int c) { return v[(static_cast<std::size_t>(y) * width + x) * channels + c]; }
    float at(int x, int y, int c) const { return v[(static_cast<std::size_t>(y) * width + x) * channels + c]; }
};

FloatImage to_float(const Frame& f) {
    FloatImage img{f.width(), f.height(), 3, {}};
    img.v.assign(f.data().begin(), f.data().end());
    return img;
}

FloatImage to_float(const Plane& p) {
    FloatImage img{p.width(), p.height(), 1, {}};
    img.v.assign(p.data().begin(), p.data().end());
    return img;
}

Frame to_frame(const FloatImage& img) {
    Frame out(img.width, img.height);
    auto dst = out.data();
    for (std::size_t i = 0; i < img.v.size(); ++i) dst[i] = to_u8(img.v[i]);
    return out;
}

// Separable convolution with edge clamping.
void convolve_separable(FloatImage& img, std::span<const float> kernel) {
    const int radius = static_cast<int>(kernel.size() / 2);
    const int w = img.width, h = img.height, ch = img.channels;
    std::vector<float> tmp(img.v.size());
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < ch; ++c) {
                float acc = 0.0f;
                for (int k = -radius; k <= radius; ++k) {
                    const int sx = std::clamp(x + k, 0, w - 1);
                    acc += kernel[static_cast<std::size_t>(k + radius)] * img.at(sx, y, c);
                }
                tmp[(static_cast<std::size_t>(y) * w + x) * ch + c] = acc;
            }
        }
    }
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < ch; ++c) {
                float acc = 0.0f;
                for (int k = -radius; k <= radius; ++k) {
                    const int sy = std::clamp(y + k, 0, h - 1);
                    acc += kernel[static_cast<std::size_t>(k + radius)] * tmp[(static_cast<std::size_t>(sy) * w + x) * ch + c];
                }
                img.at(x, y, c) = acc;
            }
        }
    }
}

// 8x8 Bayer index matrix built from the recursive 2x2 construction.
constexpr std::array<std::array<int, 8>, 8> make_bayer8() {
    std::array<std::array<int, 8>, 8> m{};
    m[0][0] = 0;
    for (int n = 1; n < 8; n *= 2) {
        for (int y = 0; y < n; ++y) {
            for (int x = 0; x < n; ++x) {
                const int v = 4 * m[y][x];
                m[y][x] = v;
                m[y][x + n] = v + 2;
                m[y + n][x] = v + 3;
                m[y + n][x + n] = v + 1;
            }
        }
    }
    return m;
}
constexpr auto kBayer8 = make_bayer8();

}  // namespace

std::uint8_t luma601(Rgb c) {
    return static_cast<std::uint8_t>((299 * c.r + 587 * c.g + 114 * c.b + 500) / 1000);
}

void sample_bilinear(const Frame& in, double x, double y, float out[3]) {
    const int w = in.width(), h = in.height();
    x = std::clamp(x, 0.0, static_cast<double>(w - 1));
    y = std::clamp(y, 0.0, static_cast<double>(h - 1));
    const int x0 = static_cast<int>(x), y0 = static_cast<int>(y);
    const int x1 = std::min(x0 + 1, w - 1), y1 = std::min(y0 + 1, h - 1);
    const auto fx = static_cast<float>(x - x0), fy = static_cast<float>(y - y0);
    const auto* p00 = in.px(x0, y0);
    const auto* p10 = in.px(x1, y0);
    const auto* p01 = in.px(x0, y1);
    const auto* p11 = in.px(x1, y1);
    for (int c = 0; c < 3; ++c) {
        const float top = p00[c] + fx * (p10[c] - p00[c]);
        const float bottom = p01[c] + fx * (p11[c] - p01[c]);
        out[c] = top + fy * (bottom - top);
    }
}

std::vector<float> gaussian_kernel(double sigma, int radius) {
    std::vector<float> k(static_cast<std::size_t>(2 * radius + 1));
    double sum = 0.0;
    std::vector<double> tmp(k.size());
    for (int i = -radius; i <= radius; ++i) {
        tmp[static_cast<std::size_t>(i + radius)] = sigma > 0 ? std::exp(-0.5 * i * i / (sigma * sigma)) : (i == 0);
        sum += tmp[static_cast<std::size_t>(i + radius)];
    }
    for (std::size_t i = 0; i < k.size(); ++i) k[i] = static_cast<float>(tmp[i] / sum);
    return k;
}

Plane dilate(const Plane& mask, int radius) {
    if (radius <= 0) return mask;
    const int w = mask.width(), h = mask.height();
    Plane tmp(w, h), out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint8_t m = 0;
            for (int sx = std::max(0, x - radius); sx <= std::min(w - 1, x + radius); ++sx) m = std::max(m, mask.at(sx, y));
            tmp.at(x, y) = m;
        }
    }
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint8_t m = 0;
            for (int sy = std::max(0, y - radius); sy <= std::min(h - 1, y + radius); ++sy) m = std::max(m, tmp.at(x, sy));
            out.at(x, y) = m;
        }
    }
    return out;
}

Frame invert(const Frame& in) {
    Frame out = in;
    for (auto& v : out.data()) v = static_cast<std::uint8_t>(255 - v);
    return out;
}

Frame posterize(const Frame& in, std::span<const Rgb> palette) {
    Frame out = in;
    for (int y = 0; y < in.height(); ++y) {
        for (int x = 0; x < in.width(); ++x) {
            const Rgb c = in.at(x, y);
            int best = 0;
            int best_d = 1 << 30;
            for (std::size_t i = 0; i < palette.size(); ++i) {
                const int dr = c.r - palette[i].r, dg = c.g - palette[i].g, db = c.b - palette[i].b;
                const int d = dr * dr + dg * dg + db * db;
                if (d < best_d) {
                    best_d = d;
                    best = static_cast<int>(i);
                }
            }
            out.set(x, y, palette[static_cast<std::size_t>(best)]);
        }
    }
    return out;
}

Frame pixelate(const Frame& in, int block) {
    Frame out(in.width(), in.height());
    for (int by = 0; by < in.height(); by += block) {
        for (int bx = 0; bx < in.width(); bx += block) {
            const int ex = std::min(bx + block, in.width()), ey = std::min(by + block, in.height());
            std::array<std::uint32_t, 3> sum{};
            for (int y = by; y < ey; ++y)
                for (int x = bx; x < ex; ++x)
                    for (int c = 0; c < 3; ++c) sum[c] += in.px(x, y)[c];
            const auto n = static_cast<std::uint32_t>((ex - bx) * (ey - by));
            const Rgb mean{static_cast<std::uint8_t>((sum[0] + n / 2) / n), static_cast<std::uint8_t>((sum[1] + n / 2) / n),
                           static_cast<std::uint8_t>((sum[2] + n / 2) / n)};
            for (int y = by; y < ey; ++y)
                for (int x = bx; x < ex; ++x) out.set(x, y, mean);
        }
    }
    return out;
}

Frame wave_warp(const Frame& in, double amplitude, double frequency, double time_seconds) {
    // Phase advances at 10 spatial periods per second.
    constexpr double kPhaseSpeed = 10.0;
    Frame out(in.width(), in.height());
    float rgb[3];
    for (int y = 0; y < in.height(); ++y) {
        const double shift =
            amplitude * std::sin(kTwoPi * frequency * y + time_seconds * kTwoPi * frequency * kPhaseSpeed);
        for (int x = 0; x < in.width(); ++x) {
            sample_bilinear(in, x + shift, y, rgb);
            auto* p = out.px(x, y);
            for (int c = 0; c < 3; ++c) p[c] = to_u8(rgb[c]);
        }
    }
    return out;
}

Frame saturation_brightness(const Frame& in, double saturation, double brightness) {
    Frame out(in.width(), in.height());
    auto src = in.data();
    auto dst = out.data();
    for (std::size_t i = 0; i < src.size(); i += 3) {
        const double luma = 0.299 * src[i] + 0.587 * src[i + 1] + 0.114 * src[i + 2];
        for (std::size_t c = 0; c < 3; ++c) dst[i + c] = to_u8(luma + saturation * (src[i + c] - luma) + brightness);
    }
    return out;
}

Frame gaussian_blur(const Frame& in, int kernel_size) {
    const int radius = (kernel_size - 1) / 2;
    const auto kernel = gaussian_kernel((kernel_size - 1) / 6.0, radius);
    auto img = to_float(in);
    convolve_separable(img, kernel);
    return to_frame(img);
}

Frame grain(const Frame& in, double amount, int grain_size, std::uint64_t seed, int frame_index) {
    const int gw = (in.width() + grain_size - 1) / grain_size;
    const int gh = (in.height() + grain_size - 1) / grain_size;
    rng::Stream stream(seed, rng::Purpose::frame_noise, static_cast<std::uint64_t>(frame_index));
    std::vector<float> noise(static_cast<std::size_t>(gw) * gh);
    for (auto& n : noise) n = static_cast<float>(stream.uniform(-amount, amount));
    Frame out(in.width(), in.height());
    for (int y = 0; y < in.height(); ++y) {
        for (int x = 0; x < in.width(); ++x) {
            const float n = noise[static_cast<std::size_t>(y / grain_size) * gw + x / grain_size];
            const auto* s = in.px(x, y);
            auto* d = out.px(x, y);
            for (int c = 0; c < 3; ++c) d[c] = to_u8(s[c] + n);
        }
    }
    return out;
}

Frame black_and_white(const Frame& in) {
    Frame out(in.width(), in.height());
    for (int y = 0; y < in.height(); ++y) {
        for (int x = 0; x < in.width(); ++x) {
            const auto l = luma601(in.at(x, y));
            out.set(x, y, {l, l, l});
        }
    }
    return out;
}

Frame color_overlay(const Frame& in, double percent, Rgb color) {
    Frame out(in.width(), in.height());
    const std::array<double, 3> overlay{static_cast<double>(color.r), static_cast<double>(color.g),
                                        static_cast<double>(color.b)};
    auto src = in.data();
    auto dst = out.data();
    for (std::size_t i = 0; i < src.size(); i += 3)
        for (std::size_t c = 0; c < 3; ++c) dst[i + c] = to_u8((1.0 - percent) * src[i + c] + percent * overlay[c]);
    return out;
}

Frame cc_ball_action(const Frame& in, const Plane& mask, int spacing, Rgb ball_color) {
    Frame out(in.width(), in.height());
    const double radius = spacing / 2.0;
    const int half = spacing / 2;
    for (int gy = 0; gy * spacing < in.height(); ++gy) {
        for (int gx = 0; gx * spacing < in.width(); ++gx) {
            const int cx = std::min(gx * spacing + half, in.width() - 1);
            const int cy = std::min(gy * spacing + half, in.height() - 1);
            if (mask.at(cx, cy) < 128) continue;
            const double l = luma601(in.at(cx, cy)) / 255.0;
            const Rgb c{to_u8(ball_color.r * l), to_u8(ball_color.g * l), to_u8(ball_color.b * l)};
            const int r = static_cast<int>(std::ceil(radius));
            for (int y = std::max(0, cy - r); y <= std::min(in.height() - 1, cy + r); ++y) {
                for (int x = std::max(0, cx - r); x <= std::min(in.width() - 1, cx + r); ++x) {
                    const double dx = x - cx, dy = y - cy;
                    if (dx * dx + dy * dy <= radius * radius) out.set(x, y, c);
                }
            }
        }
    }
    return out;
}

Frame sticker(const Frame& in, const Plane& mask, int border, Rgb sticker_color) {
    const Plane grown = dilate(mask, border);
    const std::array<float, 3> col{static_cast<float>(sticker_color.r), static_cast<float>(sticker_color.g),
                                   static_cast<float>(sticker_color.b)};
    Frame out(in.width(), in.height());
    for (int y = 0; y < in.height(); ++y) {
        for (int x = 0; x < in.width(); ++x) {
            const float m = mask.at(x, y) / 255.0f;
            const float b = grown.at(x, y) / 255.0f;
            const auto* s = in.px(x, y);
            auto* d = out.px(x, y);
            for (int c = 0; c < 3; ++c) {
                const float backdrop = b * col[c] + (1.0f - b) * 255.0f;
                d[c] = to_u8(m * s[c] + (1.0f - m) * backdrop);
            }
        }
    }
    return out;
}

Frame glow(const Frame& in, const Plane& mask, int glow_size, Rgb glow_color, double glow_brightness,
           double object_brightness) {
    const auto gain = static_cast<float>(std::exp2(object_brightness / 5.0 - 0.5));
    auto halo = to_float(dilate(mask, glow_size));
    convolve_separable(halo, gaussian_kernel(glow_size / 3.0, glow_size));
    const std::array<float, 3> col{static_cast<float>(glow_color.r), static_cast<float>(glow_color.g),
                                   static_cast<float>(glow_color.b)};
    Frame out(in.width(), in.height());
    for (int y = 0; y < in.height(); ++y) {
        for (int x = 0; x < in.width(); ++x) {
            const float m = mask.at(x, y) / 255.0f;
            const float g = halo.at(x, y, 0) / 255.0f * static_cast<float>(glow_brightness);
            const auto* s = in.px(x, y);
            auto* d = out.px(x, y);
            for (int c = 0; c < 3; ++c) {
                const float layer = std::min(255.0f, g * col[c]);
                const float screen = 255.0f - (255.0f - s[c]) * (255.0f - layer) / 255.0f;
                const float object = std::min(255.0f, s[c] * gain);
                d[c] = to_u8(m * object + (1.0f - m) * screen);
            }
        }
    }
    return out;
}

Frame radial_blur(const Frame& in, double cx, double cy, int strength, double blur_border) {
    // Each successive sample steps 0.5% of the way toward the center.
    constexpr double kStep = 0.005;
    const int w = in.width(), h = in.height();
    const double px_c = cx * (w - 1), py_c = cy * (h - 1);
    double corner = 0.0;
    for (double ex : {0.0, static_cast<double>(w - 1)})
        for (double ey : {0.0, static_cast<double>(h - 1)}) corner = std::max(corner, std::hypot(ex - px_c, ey - py_c));
    const double band = blur_border / 100.0 * corner;
    const int samples = std::max(1, strength);
    Frame out(w, h);
    float rgb[3];
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::array<float, 3> acc{};
            for (int k = 0; k < samples; ++k) {
                const double f = kStep * k;
                sample_bilinear(in, x + (px_c - x) * f, y + (py_c - y) * f, rgb);
                for (int c = 0; c < 3; ++c) acc[c] += rgb[c];
            }
            const auto* s = in.px(x, y);
            auto* d = out.px(x, y);
            const double edge = std::min({x, y, w - 1 - x, h - 1 - y});
            const float t = (band > 0.0 && edge < band) ? static_cast<float>(edge / band) : 1.0f;
            for (int c = 0; c < 3; ++c) d[c] = to_u8(t * (acc[c] / samples) + (1.0f - t) * s[c]);
        }
    }
    return out;
}

Frame rotate_pixels(const Frame& in, double cx, double cy, double max_angle_deg, double radius, int t, int n) {
    const double px_c = cx * (in.width() - 1), py_c = cy * (in.height() - 1);
    const double swing = std::sin(kTwoPi * t / std::max(1, n));
    Frame out = in;
    float rgb[3];
    for (int y = 0; y < in.height(); ++y) {
        for (int x = 0; x < in.width(); ++x) {
            const double dx = x - px_c, dy = y - py_c;
            const double r = std::hypot(dx, dy);
            if (r >= radius) continue;
            const double theta = max_angle_deg * (1.0 - r / radius) * swing * kDegToRad;
            // Inverse mapping: rotate the destination offset by -theta.
            const double c = std::cos(theta), s = std::sin(theta);
            sample_bilinear(in, px_c + c * dx + s * dy, py_c - s * dx + c * dy, rgb);
            auto* d = out.px(x, y);
            for (int ch = 0; ch < 3; ++ch) d[ch] = to_u8(rgb[ch]);
        }
    }
    return out;
}

Frame glitch(const Frame& in, double angle_deg, double red, double green, double blue, std::uint64_t seed,
             int frame_index) {
    rng::Stream stream(seed, rng::Purpose::frame_noise, static_cast<std::uint64_t>(frame_index));
    const double ux = std::cos(angle_deg * kDegToRad), uy = std::sin(angle_deg * kDegToRad);
    const int w = in.width(), h = in.height();
    std::array<int, 3> sx{}, sy{};
    const std::array<double, 3> base{red, green, blue};
    for (int c = 0; c < 3; ++c) {
        const double d = base[c] * stream.uniform(0.8, 1.2);
        sx[c] = static_cast<int>(std::lround(d * ux));
        sy[c] = static_cast<int>(std::lround(d * uy));
    }
    auto wrap = [](int v, int n) { return ((v % n) + n) % n; };
    Frame out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            auto* d = out.px(x, y);
            for (int c = 0; c < 3; ++c) d[c] = in.px(wrap(x - sx[c], w), wrap(y - sy[c], h))[c];
        }
    }
    return out;
}

Frame dither(const Frame& in, int cell_size, int color_steps) {
    const int levels = color_steps - 1;
    Frame out(in.width(), in.height());
    for (int y = 0; y < in.height(); ++y) {
        const auto& row = kBayer8[static_cast<std::size_t>((y / cell_size) % 8)];
        for (int x = 0; x < in.width(); ++x) {
            const double threshold = (row[static_cast<std::size_t>((x / cell_size) % 8)] + 0.5) / 64.0;
            const auto* s = in.px(x, y);
            auto* d = out.px(x, y);
            for (int c = 0; c < 3; ++c) {
                const int q = std::clamp(static_cast<int>(std::floor(s[c] * levels / 255.0 + threshold)), 0, levels);
                d[c] = static_cast<std::uint8_t>((q * 255 + levels / 2) / levels);
            }
        }
    }
    return out;
}

Frame motion_blur(const Frame& in, double angle_deg, double strength) {
    const double length = strength * std::min(in.width(), in.height()) / 4.0;
    const int taps = length < 1.0 ? 1 : static_cast<int>(std::ceil(length)) + 1;
    const double ux = std::cos(angle_deg * kDegToRad), uy = std::sin(angle_deg * kDegToRad);
    std::vector<double> offsets(static_cast<std::size_t>(taps), 0.0);
    if (taps > 1)
        for (int k = 0; k < taps; ++k) offsets[static_cast<std::size_t>(k)] = (static_cast<double>(k) / (taps - 1) - 0.5) * length;
    Frame out(in.width(), in.height());
    float rgb[3];
    for (int y = 0; y < in.height(); ++y) {
        for (int x = 0; x < in.width(); ++x) {
            std::array<float, 3> acc{};
            for (double o : offsets) {
                sample_bilinear(in, x + o * ux, y + o * uy, rgb);
                for (int c = 0; c < 3; ++c) acc[c] += rgb[c];
            }
            auto* d = out.px(x, y);
            for (int c = 0; c < 3; ++c) d[c] = to_u8(acc[c] / static_cast<float>(taps));
        }
    }
    return out;
}

std::vector<int> stutter_schedule(int frame_count, int hold_duration, int frequency) {
    std::vector<int> sources;
    sources.reserve(static_cast<std::size_t>(frame_count));
    for (int i = 0; static_cast<int>(sources.size()) < frame_count; ++i) {
        sources.push_back(i);
        if ((i + 1) % frequency == 0)
            for (int k = 0; k < hold_duration; ++k) sources.push_back(i);
    }
    sources.resize(static_cast<std::size_t>(frame_count));
    return sources;
}

std::vector<Frame> ghosting(std::span<const Frame> in, double intensity) {
    std::vector<Frame> out;
    out.reserve(in.size());
    std::vector<float> trail(in.front().data().begin(), in.front().data().end());
    const auto k = static_cast<float>(intensity);
    for (std::size_t t = 0; t < in.size(); ++t) {
        auto src = in[t].data();
        if (t > 0)
            for (std::size_t i = 0; i < trail.size(); ++i) trail[i] = (1.0f - k) * src[i] + k * trail[i];
        Frame f(in[t].width(), in[t].height());
        auto dst = f.data();
        for (std::size_t i = 0; i < trail.size(); ++i) dst[i] = to_u8(trail[i]);
        out.push_back(std::move(f));
    }
    return out;
}

bool strobe_flashes(int t, int flash_frequency, int flash_duration) { return t % flash_frequency < flash_duration; }

}  // namespace vfx::effects
