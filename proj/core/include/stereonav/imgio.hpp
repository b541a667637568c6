#pragma once

#include <string>

#include "stereonav/types.hpp"

namespace stereonav {

/// Interleaved 8-bit RGB raster, used for colorized and annotated output.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> data;  // 3 bytes per pixel

    RgbImage() = default;
    RgbImage(int w, int h)
        : width(w), height(h), data(static_cast<size_t>(w) * h * 3, 0) {}

    void set(int x, int y, uint8_t r, uint8_t g, uint8_t b) {
        size_t i = (static_cast<size_t>(y) * width + x) * 3;
        data[i] = r;
        data[i + 1] = g;
        data[i + 2] = b;
    }
};

enum class DisparityWriteMode { Raw16, Colorized };

/// Loads an 8-bit grayscale raster from a PGM (P5) or PNG file. The format is
/// sniffed from the file contents, not the extension. 16-bit PNGs are
/// down-shifted to 8 bits; 8-bit RGB(A) PNGs are converted with integer
/// BT.601 luma so results stay platform independent.
GrayImage load_gray(const std::string& path);

void save_pgm(const GrayImage& img, const std::string& path);
void save_png_gray8(const GrayImage& img, const std::string& path);
void save_png_rgb(const RgbImage& img, const std::string& path);

/// KITTI disparity encoding: 16-bit grayscale PNG, stored value v means
/// disparity v/256.0, v == 0 means invalid.
DisparityMap load_kitti_disparity(const std::string& path);

/// Raw16 writes the KITTI encoding (valid zeros are clamped to stored value 1
/// so the validity mask survives a round trip). Colorized maps valid
/// disparities linearly over [0, d_max) onto a red-to-blue ramp, invalid
/// pixels are black.
void write_disparity(const DisparityMap& map, const std::string& path,
                     DisparityWriteMode mode, int d_max);

RgbImage colorize_disparity(const DisparityMap& map, int d_max);

GrayImage crop_roi(const GrayImage& img, int x0, int y0, int w, int h);
DisparityMap crop_roi(const DisparityMap& map, int x0, int y0, int w, int h);

}  // namespace stereonav
