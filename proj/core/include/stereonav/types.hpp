#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace stereonav {

struct DecodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A streaming stage was asked for a source row outside its declared window.
struct BufferDepthError : std::runtime_error {
    int x;
    int y;
    BufferDepthError(int px, int py, const std::string& msg)
        : std::runtime_error(msg), x(px), y(py) {}
};

inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

/// 8-bit single-channel raster, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> data;

    GrayImage() = default;
    GrayImage(int w, int h, uint8_t fill = 0)
        : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {
        if (w < 1 || h < 1) throw std::out_of_range("GrayImage: dimensions must be >= 1");
    }

    uint8_t& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    uint8_t at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }

    // Replicate-clamped access, the border policy used throughout the pipeline.
    uint8_t at_clamped(int x, int y) const {
        return at(clampi(x, 0, width - 1), clampi(y, 0, height - 1));
    }

    const uint8_t* row(int y) const { return data.data() + static_cast<size_t>(y) * width; }
    uint8_t* row(int y) { return data.data() + static_cast<size_t>(y) * width; }

    bool operator==(const GrayImage&) const = default;
};

/// Disparity raster with a per-pixel validity mask. Values are integer for
/// pipeline output but fractional for ground truth, hence float storage.
/// Invalid cells keep value 0 and are ignored by every consumer.
struct DisparityMap {
    int width = 0;
    int height = 0;
    std::vector<float> values;
    std::vector<uint8_t> valid;

    DisparityMap() = default;
    DisparityMap(int w, int h)
        : width(w), height(h),
          values(static_cast<size_t>(w) * h, 0.0f),
          valid(static_cast<size_t>(w) * h, 0) {
        if (w < 1 || h < 1) throw std::out_of_range("DisparityMap: dimensions must be >= 1");
    }

    size_t idx(int x, int y) const { return static_cast<size_t>(y) * width + x; }
    float value(int x, int y) const { return values[idx(x, y)]; }
    bool is_valid(int x, int y) const { return valid[idx(x, y)] != 0; }

    void set(int x, int y, float v) {
        values[idx(x, y)] = v;
        valid[idx(x, y)] = 1;
    }
    void invalidate(int x, int y) {
        values[idx(x, y)] = 0.0f;
        valid[idx(x, y)] = 0;
    }

    long count_valid() const {
        long n = 0;
        for (uint8_t v : valid) n += v != 0;
        return n;
    }

    bool operator==(const DisparityMap&) const = default;
};

/// W x H x d_max volume, disparity-major innermost:
/// index = (y * width + x) * d_max + d.
template <typename T>
struct Volume {
    int width = 0;
    int height = 0;
    int d_max = 0;
    std::vector<T> values;

    Volume() = default;
    Volume(int w, int h, int d)
        : width(w), height(h), d_max(d),
          values(static_cast<size_t>(w) * h * d, T{0}) {
        if (w < 1 || h < 1 || d < 1) throw std::out_of_range("Volume: dimensions must be >= 1");
    }

    size_t idx(int x, int y, int d) const {
        return (static_cast<size_t>(y) * width + x) * d_max + d;
    }
    T at(int x, int y, int d) const { return values[idx(x, y, d)]; }
    T& at(int x, int y, int d) { return values[idx(x, y, d)]; }

    const T* slice(int x, int y) const { return values.data() + idx(x, y, 0); }
    T* slice(int x, int y) { return values.data() + idx(x, y, 0); }

    const T* row(int y) const { return values.data() + idx(0, y, 0); }

    bool operator==(const Volume&) const = default;
};

/// Pixel-wise matching costs (16-bit, saturating).
using CostVolume = Volume<uint16_t>;
/// Path-aggregated costs. 32 bits never overflow for d_max <= 256 and
/// 16-bit unary costs, since the running minimum is subtracted per step.
using AggregatedVolume = Volume<uint32_t>;

/// Census descriptors; for the default 5x5 window only the low 24 bits are used.
struct CensusImage {
    int width = 0;
    int height = 0;
    std::vector<uint64_t> descriptors;

    CensusImage() = default;
    CensusImage(int w, int h)
        : width(w), height(h), descriptors(static_cast<size_t>(w) * h, 0) {}

    uint64_t at(int x, int y) const { return descriptors[static_cast<size_t>(y) * width + x]; }
    uint64_t& at(int x, int y) { return descriptors[static_cast<size_t>(y) * width + x]; }
};

struct StereoCalibration {
    double baseline_m = 0.2;
    double focal_px = 200.0;
    double cx = 0.0;
    double cy = 0.0;
    int d_max = 60;

    void validate() const {
        if (baseline_m <= 0.0) throw std::invalid_argument("calibration: baseline_m must be > 0");
        if (focal_px <= 0.0) throw std::invalid_argument("calibration: focal_px must be > 0");
        if (d_max < 1 || d_max > 256) throw std::invalid_argument("calibration: d_max must be in [1,256]");
    }
};

}  // namespace stereonav
