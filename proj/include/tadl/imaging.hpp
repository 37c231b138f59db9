#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tadl/core.hpp"

namespace tadl {

// Display-resolution grid (rows x cols); the 16-pixel axis maps to 176.
inline constexpr int kInterpRows = 128;
inline constexpr int kInterpCols = 176;

struct InterpolatedImage {
    int rows = kInterpRows;
    int cols = kInterpCols;
    std::vector<double> pixels;  // row-major

    double at(int row, int col) const { return pixels[row * cols + col]; }
};

/// Continuous bilinear interpolant of the source grid, evaluated at
/// fractional source coordinates. Coordinates are clamped to the grid,
/// so evaluation at integer coordinates reproduces source values exactly.
inline double bilinear_sample(const ThermalFrame& frame, double row, double col) {
    row = std::clamp(row, 0.0, static_cast<double>(kRows - 1));
    col = std::clamp(col, 0.0, static_cast<double>(kCols - 1));
    const int r0 = std::min(static_cast<int>(row), kRows - 2);
    const int c0 = std::min(static_cast<int>(col), kCols - 2);
    const double fr = row - r0;
    const double fc = col - c0;
    const double top = frame.at(r0, c0) * (1.0 - fc) + frame.at(r0, c0 + 1) * fc;
    const double bot = frame.at(r0 + 1, c0) * (1.0 - fc) + frame.at(r0 + 1, c0 + 1) * fc;
    return top * (1.0 - fr) + bot * fr;
}

/// Bilinear upscale 16x12 -> 176x128 with corner-aligned sampling:
/// src = dst * (S-1)/(D-1), so the four corners (and every destination pixel
/// that lands on a source grid point) reproduce source values exactly.
inline InterpolatedImage interpolate(const ThermalFrame& frame) {
    InterpolatedImage img;
    img.pixels.resize(static_cast<std::size_t>(kInterpRows) * kInterpCols);
    const double row_scale = static_cast<double>(kRows - 1) / (kInterpRows - 1);
    const double col_scale = static_cast<double>(kCols - 1) / (kInterpCols - 1);
    for (int r = 0; r < kInterpRows; ++r) {
        for (int c = 0; c < kInterpCols; ++c) {
            img.pixels[static_cast<std::size_t>(r) * kInterpCols + c] =
                bilinear_sample(frame, r * row_scale, c * col_scale);
        }
    }
    return img;
}

struct PersonLocation {
    double row = 0.0;  // fractional source-grid coordinates
    double col = 0.0;
    double peak_temp = 0.0;
    int support = 0;  // pixels above threshold
};

/// Temperature-weighted centroid of pixels above ambient+delta,
/// or nullopt when nothing clears the threshold.
inline std::optional<PersonLocation> locate_person(const ThermalFrame& frame,
                                                   double ambient, double delta) {
    if (delta <= 0) throw std::invalid_argument("locate_person: delta must be > 0");
    const double threshold = ambient + delta;
    PersonLocation loc;
    double wsum = 0.0, rsum = 0.0, csum = 0.0;
    for (int r = 0; r < kRows; ++r) {
        for (int c = 0; c < kCols; ++c) {
            const double t = frame.at(r, c);
            if (t < threshold) continue;
            wsum += t;
            rsum += t * r;
            csum += t * c;
            loc.peak_temp = std::max(loc.peak_temp, t);
            ++loc.support;
        }
    }
    if (loc.support == 0) return std::nullopt;
    loc.row = rsum / wsum;
    loc.col = csum / wsum;
    return loc;
}

struct ThermalSpread {
    int area = 0;          // pixels above threshold
    double rms_radius = 0; // RMS distance from the weighted centroid, px
};

/// Size of the above-threshold footprint: upright bodies give a confined
/// spot, lying bodies a wider, flatter one.
inline std::optional<ThermalSpread> thermal_spread(const ThermalFrame& frame,
                                                   double ambient, double delta) {
    auto loc = locate_person(frame, ambient, delta);
    if (!loc) return std::nullopt;
    const double threshold = ambient + delta;
    double sq_sum = 0.0;
    int n = 0;
    for (int r = 0; r < kRows; ++r) {
        for (int c = 0; c < kCols; ++c) {
            if (frame.at(r, c) < threshold) continue;
            const double dr = r - loc->row;
            const double dc = c - loc->col;
            sq_sum += dr * dr + dc * dc;
            ++n;
        }
    }
    return ThermalSpread{n, std::sqrt(sq_sum / n)};
}

/// Binary PGM (P5) of an interpolated image, gray mapped linearly over
/// this frame's [min, max].
inline void write_pgm(const std::string& path, const InterpolatedImage& img) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    double lo = img.pixels[0], hi = img.pixels[0];
    for (double p : img.pixels) {
        lo = std::min(lo, p);
        hi = std::max(hi, p);
    }
    const double span = hi > lo ? hi - lo : 1.0;
    os << "P5\n" << img.cols << " " << img.rows << "\n255\n";
    for (double p : img.pixels) {
        const int g = static_cast<int>(std::lround((p - lo) / span * 255.0));
        os.put(static_cast<char>(std::clamp(g, 0, 255)));
    }
}

}  // namespace tadl
