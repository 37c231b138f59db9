#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tadl/time.hpp"

namespace tadl {

// Grid geometry is fixed to the MLX90641 layout: 12 rows x 16 columns,
// row-major. Keeping it fixed keeps the wire format fixed-size.
inline constexpr int kRows = 12;
inline constexpr int kCols = 16;
inline constexpr int kPixelCount = kRows * kCols;

// physical envelope of the sensor in degC; anything outside is a bad frame
inline constexpr double kMinTempC = -40.0;
inline constexpr double kMaxTempC = 300.0;

/// One timestamped 16x12 temperature grid, the atomic sensor sample.
struct ThermalFrame {
    UnixSeconds timestamp = 0;
    std::vector<double> pixels;  // row-major, kPixelCount entries when valid

    double at(int row, int col) const { return pixels[row * kCols + col]; }
    double& at(int row, int col) { return pixels[row * kCols + col]; }
};

inline ThermalFrame make_frame(UnixSeconds ts, double fill) {
    return ThermalFrame{ts, std::vector<double>(kPixelCount, fill)};
}

enum class ActivityClass : int {
    Sleeping = 1,
    Daily = 2,
    NoActivity = 3,
};

// Timeline labels: the three activity classes plus a sentinel for minutes
// with no frame at all.
enum class Label : int {
    Sleeping = 1,
    Daily = 2,
    NoActivity = 3,
    Missing = 0,
};

inline const char* label_name(Label l) {
    switch (l) {
        case Label::Sleeping: return "sleeping";
        case Label::Daily: return "daily";
        case Label::NoActivity: return "no_activity";
        case Label::Missing: return "missing";
    }
    return "?";
}

inline std::optional<Label> label_from_name(const std::string& s) {
    if (s == "sleeping") return Label::Sleeping;
    if (s == "daily") return Label::Daily;
    if (s == "no_activity") return Label::NoActivity;
    if (s == "missing") return Label::Missing;
    return std::nullopt;
}

inline Label to_label(ActivityClass k) { return static_cast<Label>(k); }

struct PixelCoord {
    int row = 0;
    int col = 0;
    auto operator<=>(const PixelCoord&) const = default;
};

/// A named pixel set bound to one activity class (bed -> Sleeping, ...).
struct RegionOfInterest {
    ActivityClass activity = ActivityClass::Sleeping;  // Sleeping or Daily only
    std::string label;
    std::set<PixelCoord> pixels;
};

/// Per-class temperature time series A over a regular grid; absent entries
/// mark grid instants with no frame.
struct ActivityArray {
    ActivityClass activity = ActivityClass::Sleeping;
    UnixSeconds start = 0;
    std::int64_t period = 60;  // seconds
    std::vector<std::optional<double>> values;

    UnixSeconds timestamp_at(std::size_t t) const {
        return start + static_cast<std::int64_t>(t) * period;
    }
};

enum class RoiAggregate { Mean, Max };

struct MonitoringConfig {
    std::int64_t period = 60;          // seconds between samples
    double activation_delta = 2.0;     // degC above ambient to call an ROI occupied
    double ambient_baseline = 22.0;    // degC fallback when no background estimate
    int smoothing_window = 5;          // samples, odd
    int ambient_window_min = 60;       // trailing window for the background median
    int bathroom_max_min = 90;         // visits must not exceed this
    int visit_neighbor_min = 60;       // flanking occupancy required for a visit
    int outing_min_min = 60;           // no-activity longer than this is an outing
    int night_owl_cutoff_min = 0;      // minutes past local midnight
    double anomaly_delta = 2.0;        // degC below the day's occupied mean
    int anomaly_min_minutes = 30;
    RoiAggregate roi_aggregate = RoiAggregate::Mean;
    int tz_offset_min = 0;

    void validate() const {
        if (period <= 0) throw std::invalid_argument("period must be > 0");
        if (activation_delta <= 0) throw std::invalid_argument("activation_delta must be > 0");
        if (smoothing_window < 1 || smoothing_window % 2 == 0)
            throw std::invalid_argument("smoothing_window must be odd and >= 1");
        if (bathroom_max_min <= 0 || outing_min_min <= 0 || visit_neighbor_min <= 0)
            throw std::invalid_argument("analytics thresholds must be > 0");
    }
};

enum class FrameError {
    WrongLength,
    NonFinite,
    OutOfRange,
};

inline const char* frame_error_name(FrameError e) {
    switch (e) {
        case FrameError::WrongLength: return "WrongLength";
        case FrameError::NonFinite: return "NonFinite";
        case FrameError::OutOfRange: return "OutOfRange";
    }
    return "?";
}

/// nullopt when the frame satisfies every invariant, else the first failed check
inline std::optional<FrameError> validate_frame(const ThermalFrame& frame) {
    if (frame.pixels.size() != static_cast<std::size_t>(kPixelCount))
        return FrameError::WrongLength;
    for (double p : frame.pixels) {
        if (!std::isfinite(p)) return FrameError::NonFinite;
        if (p < kMinTempC || p > kMaxTempC) return FrameError::OutOfRange;
    }
    return std::nullopt;
}

struct FrameStats {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
};

inline FrameStats frame_stats(const ThermalFrame& frame) {
    if (frame.pixels.empty()) throw std::invalid_argument("frame_stats: empty frame");
    FrameStats s;
    s.min = s.max = frame.pixels[0];
    double sum = 0.0;
    for (double p : frame.pixels) {
        s.min = std::min(s.min, p);
        s.max = std::max(s.max, p);
        sum += p;
    }
    s.mean = sum / static_cast<double>(frame.pixels.size());
    return s;
}

struct CsvError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    out.push_back(std::move(field));
    return out;
}

inline std::string frame_csv_header() {
    std::string h = "timestamp";
    for (int i = 0; i < kPixelCount; ++i) h += ",p" + std::to_string(i);
    return h;
}

}  // namespace detail

/// Canonical frame CSV: header `timestamp,p0,...,p191`, one row per frame,
/// temperatures with two fractional digits (centi-degree quantization).
inline void write_frames_csv(std::ostream& os, const std::vector<ThermalFrame>& frames) {
    os << detail::frame_csv_header() << "\n";
    UnixSeconds prev = 0;
    bool first = true;
    char buf[32];
    for (const auto& f : frames) {
        if (!first && f.timestamp <= prev)
            throw CsvError("write_frames: timestamps not strictly increasing");
        prev = f.timestamp;
        first = false;
        if (f.pixels.size() != static_cast<std::size_t>(kPixelCount))
            throw CsvError("write_frames: frame has wrong pixel count");
        os << f.timestamp;
        for (double p : f.pixels) {
            std::snprintf(buf, sizeof(buf), ",%.2f", p);
            os << buf;
        }
        os << "\n";
    }
}

inline void write_frames_csv(const std::string& path, const std::vector<ThermalFrame>& frames) {
    std::ofstream os(path);
    if (!os) throw CsvError("cannot open for writing: " + path);
    write_frames_csv(os, frames);
}

/// Inverse of write_frames_csv. An empty file yields an empty stream.
inline std::vector<ThermalFrame> read_frames_csv(std::istream& is) {
    std::vector<ThermalFrame> frames;
    std::string line;
    std::size_t lineno = 0;
    bool saw_header = false;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || (lineno == 1 && line[0] == '\xef')) continue;  // skip BOM-only junk
        if (!saw_header) {
            if (line.rfind("timestamp", 0) != 0)
                throw CsvError("line 1: expected frame CSV header");
            saw_header = true;
            continue;
        }
        auto fields = detail::split_csv_line(line);
        if (fields.size() != static_cast<std::size_t>(kPixelCount) + 1)
            throw CsvError("line " + std::to_string(lineno) + ": expected " +
                           std::to_string(kPixelCount + 1) + " fields, got " +
                           std::to_string(fields.size()));
        ThermalFrame f;
        try {
            f.timestamp = std::stoll(fields[0]);
        } catch (const std::exception&) {
            throw CsvError("line " + std::to_string(lineno) + ": bad timestamp");
        }
        f.pixels.reserve(kPixelCount);
        for (int i = 1; i <= kPixelCount; ++i) {
            try {
                std::size_t pos = 0;
                double v = std::stod(fields[i], &pos);
                if (pos != fields[i].size()) throw std::invalid_argument("trailing junk");
                f.pixels.push_back(v);
            } catch (const std::exception&) {
                throw CsvError("line " + std::to_string(lineno) + ": bad value in field " +
                               std::to_string(i));
            }
        }
        if (!frames.empty() && f.timestamp <= frames.back().timestamp)
            throw CsvError("line " + std::to_string(lineno) +
                           ": timestamps not strictly increasing");
        frames.push_back(std::move(f));
    }
    return frames;
}

inline std::vector<ThermalFrame> read_frames_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw CsvError("cannot open: " + path);
    return read_frames_csv(is);
}

}  // namespace tadl
