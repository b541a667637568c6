#include "stereonav/imgio.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>

namespace stereonav {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::string& path, const char* mode, bool reading) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f) {
        if (reading) throw DecodeError("cannot open file: " + path);
        throw IoError("cannot open file for writing: " + path);
    }
    return f;
}

// ---------------------------------------------------------------------------
// PGM (P5, binary, maxval 255)

int pgm_next_token(std::FILE* f, char* buf, size_t buflen) {
    int c = std::fgetc(f);
    // skip whitespace and '#' comments
    while (c != EOF && (std::isspace(c) || c == '#')) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = std::fgetc(f);
        }
        c = std::fgetc(f);
    }
    size_t n = 0;
    while (c != EOF && !std::isspace(c)) {
        if (n + 1 >= buflen) return -1;
        buf[n++] = static_cast<char>(c);
        c = std::fgetc(f);
    }
    buf[n] = '\0';
    return n > 0 ? 0 : -1;
}

GrayImage load_pgm(std::FILE* f, const std::string& path) {
    char tok[32];
    if (pgm_next_token(f, tok, sizeof tok) != 0 || std::strcmp(tok, "P5") != 0)
        throw DecodeError("not a binary PGM (P5): " + path);
    long dims[3];
    for (long& d : dims) {
        if (pgm_next_token(f, tok, sizeof tok) != 0) throw DecodeError("truncated PGM header: " + path);
        char* end = nullptr;
        d = std::strtol(tok, &end, 10);
        if (end == tok || *end != '\0') throw DecodeError("malformed PGM header: " + path);
    }
    if (dims[0] < 1 || dims[1] < 1) throw DecodeError("bad PGM dimensions: " + path);
    if (dims[2] != 255) throw DecodeError("unsupported PGM maxval (need 255): " + path);

    GrayImage img(static_cast<int>(dims[0]), static_cast<int>(dims[1]));
    if (std::fread(img.data.data(), 1, img.data.size(), f) != img.data.size())
        throw DecodeError("truncated PGM pixel data: " + path);
    return img;
}

// ---------------------------------------------------------------------------
// PNG via libpng

struct PngRaster {
    int width = 0;
    int height = 0;
    int bit_depth = 0;
    int channels = 0;
    std::vector<uint8_t> rows;  // packed rows, big-endian 16-bit samples
    size_t rowbytes = 0;
};

PngRaster read_png(const std::string& path) {
    FilePtr f = open_file(path, "rb", true);

    uint8_t sig[8];
    if (std::fread(sig, 1, 8, f.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0)
        throw DecodeError("not a PNG file: " + path);

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw DecodeError("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw DecodeError("libpng init failed");
    }
    PngRaster out;
    std::vector<png_bytep> row_ptrs;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw DecodeError("PNG decode error: " + path);
    }
    png_init_io(png, f.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    int color_type = png_get_color_type(png, info);
    out.bit_depth = png_get_bit_depth(png, info);
    // Normalize palette/low-depth images to 8-bit samples; keep 16-bit as is.
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && out.bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_read_update_info(png, info);

    out.width = static_cast<int>(png_get_image_width(png, info));
    out.height = static_cast<int>(png_get_image_height(png, info));
    out.bit_depth = png_get_bit_depth(png, info);
    out.channels = png_get_channels(png, info);
    out.rowbytes = png_get_rowbytes(png, info);
    out.rows.resize(out.rowbytes * out.height);
    row_ptrs.resize(out.height);
    for (int y = 0; y < out.height; ++y) row_ptrs[y] = out.rows.data() + out.rowbytes * y;
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return out;
}

void write_png(const std::string& path, int width, int height, int bit_depth, int color_type,
               const std::vector<png_bytep>& row_ptrs) {
    FilePtr f = open_file(path, "wb", false);
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!png) throw IoError("libpng init failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw IoError("libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw IoError("PNG write error: " + path);
    }
    png_init_io(png, f.get());
    png_set_IHDR(png, info, width, height, bit_depth, color_type, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, const_cast<png_bytep*>(row_ptrs.data()));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

uint16_t sample16(const uint8_t* p) {
    return static_cast<uint16_t>((p[0] << 8) | p[1]);  // PNG stores big-endian
}

GrayImage gray_from_png(const PngRaster& r, const std::string& path) {
    GrayImage img(r.width, r.height);
    const int bytes = r.bit_depth / 8;
    for (int y = 0; y < r.height; ++y) {
        const uint8_t* row = r.rows.data() + r.rowbytes * y;
        for (int x = 0; x < r.width; ++x) {
            const uint8_t* px = row + static_cast<size_t>(x) * r.channels * bytes;
            uint32_t v[4] = {0, 0, 0, 0};
            for (int c = 0; c < r.channels; ++c)
                v[c] = bytes == 2 ? (sample16(px + 2 * c) >> 8) : px[c];
            uint8_t g;
            if (r.channels >= 3) {
                g = static_cast<uint8_t>((299 * v[0] + 587 * v[1] + 114 * v[2] + 500) / 1000);
            } else if (r.channels >= 1) {
                g = static_cast<uint8_t>(v[0]);
            } else {
                throw DecodeError("unsupported PNG layout: " + path);
            }
            img.at(x, y) = g;
        }
    }
    return img;
}

void hue_ramp(double t, uint8_t& r, uint8_t& g, uint8_t& b) {
    // HSV sweep, hue 0 (red) .. 240 (blue), full saturation/value.
    double h = 240.0 * t / 60.0;
    int i = static_cast<int>(h);
    double f = h - i;
    auto q = static_cast<uint8_t>(std::lround(255.0 * (1.0 - f)));
    auto u = static_cast<uint8_t>(std::lround(255.0 * f));
    switch (i) {
        case 0: r = 255; g = u; b = 0; break;
        case 1: r = q; g = 255; b = 0; break;
        case 2: r = 0; g = 255; b = u; break;
        case 3: r = 0; g = q; b = 255; break;
        default: r = 0; g = 0; b = 255; break;
    }
}

}  // namespace

GrayImage load_gray(const std::string& path) {
    {
        FilePtr f = open_file(path, "rb", true);
        int c0 = std::fgetc(f.get());
        int c1 = std::fgetc(f.get());
        if (c0 == 'P' && c1 == '5') {
            std::rewind(f.get());
            std::fgetc(f.get());
            std::fgetc(f.get());
            return load_pgm(f.get(), path);
        }
    }
    PngRaster r = read_png(path);
    if (r.bit_depth != 8 && r.bit_depth != 16)
        throw DecodeError("unsupported PNG bit depth: " + path);
    return gray_from_png(r, path);
}

void save_pgm(const GrayImage& img, const std::string& path) {
    FilePtr f = open_file(path, "wb", false);
    if (std::fprintf(f.get(), "P5\n%d %d\n255\n", img.width, img.height) < 0)
        throw IoError("PGM write error: " + path);
    if (std::fwrite(img.data.data(), 1, img.data.size(), f.get()) != img.data.size())
        throw IoError("PGM write error: " + path);
}

void save_png_gray8(const GrayImage& img, const std::string& path) {
    std::vector<png_bytep> rows(img.height);
    for (int y = 0; y < img.height; ++y)
        rows[y] = const_cast<png_bytep>(img.row(y));
    write_png(path, img.width, img.height, 8, PNG_COLOR_TYPE_GRAY, rows);
}

void save_png_rgb(const RgbImage& img, const std::string& path) {
    std::vector<png_bytep> rows(img.height);
    for (int y = 0; y < img.height; ++y)
        rows[y] = const_cast<png_bytep>(img.data.data() + static_cast<size_t>(y) * img.width * 3);
    write_png(path, img.width, img.height, 8, PNG_COLOR_TYPE_RGB, rows);
}

DisparityMap load_kitti_disparity(const std::string& path) {
    PngRaster r = read_png(path);
    if (r.bit_depth != 16 || r.channels != 1)
        throw DecodeError("KITTI disparity must be 16-bit single-channel PNG: " + path);
    DisparityMap map(r.width, r.height);
    for (int y = 0; y < r.height; ++y) {
        const uint8_t* row = r.rows.data() + r.rowbytes * y;
        for (int x = 0; x < r.width; ++x) {
            uint16_t v = sample16(row + 2 * static_cast<size_t>(x));
            if (v != 0) map.set(x, y, static_cast<float>(v) / 256.0f);
        }
    }
    return map;
}

void write_disparity(const DisparityMap& map, const std::string& path,
                     DisparityWriteMode mode, int d_max) {
    if (mode == DisparityWriteMode::Raw16) {
        std::vector<uint8_t> rows(static_cast<size_t>(map.width) * map.height * 2);
        for (int y = 0; y < map.height; ++y) {
            uint8_t* row = rows.data() + static_cast<size_t>(y) * map.width * 2;
            for (int x = 0; x < map.width; ++x) {
                uint32_t v = 0;
                if (map.is_valid(x, y)) {
                    long enc = std::lround(static_cast<double>(map.value(x, y)) * 256.0);
                    // 0 is the invalid sentinel; keep valid zeros representable.
                    v = static_cast<uint32_t>(clampi(static_cast<int>(enc), 1, 65535));
                }
                row[2 * x] = static_cast<uint8_t>(v >> 8);
                row[2 * x + 1] = static_cast<uint8_t>(v & 0xff);
            }
        }
        std::vector<png_bytep> row_ptrs(map.height);
        for (int y = 0; y < map.height; ++y)
            row_ptrs[y] = rows.data() + static_cast<size_t>(y) * map.width * 2;
        write_png(path, map.width, map.height, 16, PNG_COLOR_TYPE_GRAY, row_ptrs);
    } else {
        save_png_rgb(colorize_disparity(map, d_max), path);
    }
}

RgbImage colorize_disparity(const DisparityMap& map, int d_max) {
    if (d_max < 1) throw std::invalid_argument("colorize_disparity: d_max must be >= 1");
    RgbImage img(map.width, map.height);
    for (int y = 0; y < map.height; ++y) {
        for (int x = 0; x < map.width; ++x) {
            if (!map.is_valid(x, y)) continue;
            double d = std::min(std::max(static_cast<double>(map.value(x, y)), 0.0),
                                static_cast<double>(d_max - 1));
            double t = d_max > 1 ? d / static_cast<double>(d_max - 1) : 0.0;
            uint8_t r, g, b;
            hue_ramp(t, r, g, b);
            img.set(x, y, r, g, b);
        }
    }
    return img;
}

GrayImage crop_roi(const GrayImage& img, int x0, int y0, int w, int h) {
    if (x0 < 0 || y0 < 0 || w < 1 || h < 1 || x0 + w > img.width || y0 + h > img.height)
        throw std::out_of_range("crop_roi: rectangle exceeds image bounds");
    GrayImage out(w, h);
    for (int y = 0; y < h; ++y)
        std::memcpy(out.row(y), img.row(y0 + y) + x0, static_cast<size_t>(w));
    return out;
}

DisparityMap crop_roi(const DisparityMap& map, int x0, int y0, int w, int h) {
    if (x0 < 0 || y0 < 0 || w < 1 || h < 1 || x0 + w > map.width || y0 + h > map.height)
        throw std::out_of_range("crop_roi: rectangle exceeds image bounds");
    DisparityMap out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (map.is_valid(x0 + x, y0 + y)) out.set(x, y, map.value(x0 + x, y0 + y));
        }
    }
    return out;
}

}  // namespace stereonav
