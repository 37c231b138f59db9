#pragma once

#include <algorithm>
#include <array>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tadl/core.hpp"
#include "tadl/tracking.hpp"

namespace tadl {

/// Per-minute labels over the same grid as the activity arrays.
struct ActivityTimeline {
    UnixSeconds start = 0;
    std::int64_t period = 60;
    std::vector<Label> labels;

    UnixSeconds timestamp_at(std::size_t t) const {
        return start + static_cast<std::int64_t>(t) * period;
    }
};

/// A maximal run of one label.
struct Segment {
    Label label = Label::Missing;
    UnixSeconds start = 0;
    std::int64_t duration = 0;  // seconds

    UnixSeconds end() const { return start + duration; }
    double minutes() const { return static_cast<double>(duration) / 60.0; }
};

/// Threshold rule: a class is active when its series reaches ambient+delta.
/// Missing when both series are absent; both active resolves by argmax with
/// ties going to Sleeping.
inline Label classify_sample(std::optional<double> a1, std::optional<double> a2,
                             double ambient, double delta) {
    if (delta <= 0) throw std::invalid_argument("classify_sample: delta must be > 0");
    if (!a1 && !a2) return Label::Missing;
    const double threshold = ambient + delta;
    const bool s = a1 && *a1 >= threshold;
    const bool d = a2 && *a2 >= threshold;
    if (s && d) return *a2 > *a1 ? Label::Daily : Label::Sleeping;
    if (s) return Label::Sleeping;
    if (d) return Label::Daily;
    return Label::NoActivity;
}

/// Self-calibrating ambient estimate: trailing median of the background
/// series over `window_min` minutes, falling back to the configured constant
/// when no background sample is available.
inline std::vector<double> ambient_series(const ActivityArrays& arrays,
                                          const MonitoringConfig& cfg) {
    const std::size_t len = arrays.length();
    const std::size_t window = std::max<std::size_t>(
        1, static_cast<std::size_t>((static_cast<std::int64_t>(cfg.ambient_window_min) * 60) /
                                    arrays.period()));
    std::vector<double> out(len, cfg.ambient_baseline);
    std::vector<double> buf;
    buf.reserve(window);
    for (std::size_t t = 0; t < len; ++t) {
        buf.clear();
        const std::size_t lo = t + 1 >= window ? t + 1 - window : 0;
        for (std::size_t i = lo; i <= t; ++i) {
            if (arrays.background.values[i]) buf.push_back(*arrays.background.values[i]);
        }
        if (buf.empty()) continue;  // keep the fallback
        auto mid = buf.begin() + buf.size() / 2;
        std::nth_element(buf.begin(), mid, buf.end());
        double med = *mid;
        if (buf.size() % 2 == 0) {
            auto lo_it = std::max_element(buf.begin(), mid);
            med = (med + *lo_it) / 2.0;
        }
        out[t] = med;
    }
    return out;
}

/// Raw (unsmoothed) per-instant labels.
inline ActivityTimeline classify_timeline(const ActivityArrays& arrays,
                                          const MonitoringConfig& cfg) {
    ActivityTimeline tl;
    tl.start = arrays.start();
    tl.period = arrays.period();
    tl.labels.reserve(arrays.length());
    const auto ambient = ambient_series(arrays, cfg);
    for (std::size_t t = 0; t < arrays.length(); ++t) {
        tl.labels.push_back(classify_sample(arrays.sleeping.values[t],
                                            arrays.daily.values[t], ambient[t],
                                            cfg.activation_delta));
    }
    return tl;
}

/// Sliding-window majority vote. Missing positions are never rewritten and
/// Missing neighbors never vote; ties keep the center label.
inline std::vector<Label> smooth(const std::vector<Label>& labels, int window) {
    if (window < 1 || window % 2 == 0)
        throw std::invalid_argument("smooth: window must be odd and >= 1");
    if (window == 1 || labels.empty()) return labels;
    const int half = window / 2;
    const int n = static_cast<int>(labels.size());
    std::vector<Label> out(labels.size());
    for (int i = 0; i < n; ++i) {
        if (labels[i] == Label::Missing) {
            out[i] = Label::Missing;
            continue;
        }
        std::array<int, 4> votes{};  // indexed by Label value 0..3
        for (int j = std::max(0, i - half); j <= std::min(n - 1, i + half); ++j) {
            if (labels[j] != Label::Missing) ++votes[static_cast<int>(labels[j])];
        }
        int winner = 0, max_votes = 0, n_at_max = 0;
        for (int k = 1; k <= 3; ++k) {
            if (votes[k] > max_votes) {
                max_votes = votes[k];
                winner = k;
                n_at_max = 1;
            } else if (votes[k] == max_votes) {
                ++n_at_max;
            }
        }
        out[i] = n_at_max == 1 ? static_cast<Label>(winner) : labels[i];
    }
    return out;
}

inline ActivityTimeline smooth(const ActivityTimeline& tl, int window) {
    return ActivityTimeline{tl.start, tl.period, smooth(tl.labels, window)};
}

/// Run-length encode the timeline into maximal same-label segments.
inline std::vector<Segment> segment(const ActivityTimeline& tl) {
    std::vector<Segment> out;
    for (std::size_t t = 0; t < tl.labels.size(); ++t) {
        if (!out.empty() && out.back().label == tl.labels[t]) {
            out.back().duration += tl.period;
        } else {
            out.push_back({tl.labels[t], tl.timestamp_at(t), tl.period});
        }
    }
    return out;
}

/// Inverse of segment(): expand runs back into per-instant labels.
inline ActivityTimeline expand(const std::vector<Segment>& segments, std::int64_t period) {
    ActivityTimeline tl;
    tl.period = period;
    if (segments.empty()) return tl;
    tl.start = segments.front().start;
    for (const auto& s : segments) {
        for (std::int64_t i = 0; i < s.duration / period; ++i) tl.labels.push_back(s.label);
    }
    return tl;
}

// --- CSV ------------------------------------------------------------------

inline void write_timeline_csv(std::ostream& os, const ActivityTimeline& tl) {
    os << "timestamp,label\n";
    for (std::size_t t = 0; t < tl.labels.size(); ++t)
        os << format_utc(tl.timestamp_at(t)) << "," << label_name(tl.labels[t]) << "\n";
}

inline void write_timeline_csv(const std::string& path, const ActivityTimeline& tl) {
    std::ofstream os(path);
    if (!os) throw CsvError("cannot open for writing: " + path);
    write_timeline_csv(os, tl);
}

inline ActivityTimeline read_timeline_csv(std::istream& is) {
    ActivityTimeline tl;
    std::string line;
    std::size_t lineno = 0;
    UnixSeconds prev = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (lineno == 1) {
            if (line.rfind("timestamp", 0) != 0)
                throw CsvError("line 1: expected timeline CSV header");
            continue;
        }
        auto fields = detail::split_csv_line(line);
        if (fields.size() != 2)
            throw CsvError("line " + std::to_string(lineno) + ": expected 2 fields");
        const UnixSeconds ts = parse_timestamp(fields[0]);
        auto label = label_from_name(fields[1]);
        if (!label)
            throw CsvError("line " + std::to_string(lineno) + ": unknown label '" +
                           fields[1] + "'");
        if (tl.labels.empty()) {
            tl.start = ts;
        } else if (tl.labels.size() == 1) {
            tl.period = ts - tl.start;
            if (tl.period <= 0)
                throw CsvError("line " + std::to_string(lineno) + ": non-increasing timestamps");
        } else if (ts - prev != tl.period) {
            throw CsvError("line " + std::to_string(lineno) + ": irregular time grid");
        }
        prev = ts;
        tl.labels.push_back(*label);
    }
    return tl;
}

inline ActivityTimeline read_timeline_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw CsvError("cannot open: " + path);
    return read_timeline_csv(is);
}

inline void write_segments_csv(std::ostream& os, const std::vector<Segment>& segments) {
    char buf[32];
    os << "label,start,duration_min\n";
    for (const auto& s : segments) {
        std::snprintf(buf, sizeof(buf), "%.2f", s.minutes());
        os << label_name(s.label) << "," << format_utc(s.start) << "," << buf << "\n";
    }
}

}  // namespace tadl
