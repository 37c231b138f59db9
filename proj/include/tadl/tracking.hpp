#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tadl/core.hpp"

namespace tadl {

struct EmptyRoiError : std::runtime_error {
    EmptyRoiError() : std::runtime_error("no pixel clears the calibration threshold") {}
};

struct RoiOverlapError : std::runtime_error {
    explicit RoiOverlapError(const std::string& label)
        : std::runtime_error("ROI overlaps existing region: " + label) {}
};

/// The calibrated regions for one installation. Regions are pairwise
/// disjoint; at least one Sleeping and one Daily region make a usable map.
class RoiMap {
  public:
    void add(RegionOfInterest roi) {
        for (const auto& existing : entries_) {
            for (const auto& px : roi.pixels) {
                if (existing.pixels.count(px)) throw RoiOverlapError(roi.label);
            }
        }
        entries_.push_back(std::move(roi));
    }

    const std::vector<RegionOfInterest>& entries() const { return entries_; }

    bool covers_required_classes() const {
        bool s = false, d = false;
        for (const auto& r : entries_) {
            s = s || r.activity == ActivityClass::Sleeping;
            d = d || r.activity == ActivityClass::Daily;
        }
        return s && d;
    }

    /// union of pixel indices (row-major) for one class
    std::vector<int> class_pixels(ActivityClass k) const {
        std::vector<int> out;
        for (const auto& r : entries_) {
            if (r.activity != k) continue;
            for (const auto& px : r.pixels) out.push_back(px.row * kCols + px.col);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// pixels belonging to no region at all
    std::vector<int> background_pixels() const {
        std::vector<bool> taken(kPixelCount, false);
        for (const auto& r : entries_) {
            for (const auto& px : r.pixels) taken[px.row * kCols + px.col] = true;
        }
        std::vector<int> out;
        for (int i = 0; i < kPixelCount; ++i) {
            if (!taken[i]) out.push_back(i);
        }
        return out;
    }

  private:
    std::vector<RegionOfInterest> entries_;
};

/// Threshold a reference capture (person placed at the location) into an ROI.
inline RegionOfInterest calibrate_roi(const ThermalFrame& reference, double ambient,
                                      double delta, ActivityClass activity,
                                      std::string label) {
    if (delta <= 0) throw std::invalid_argument("calibrate_roi: delta must be > 0");
    if (activity == ActivityClass::NoActivity)
        throw std::invalid_argument("calibrate_roi: class must be Sleeping or Daily");
    RegionOfInterest roi;
    roi.activity = activity;
    roi.label = std::move(label);
    const double threshold = ambient + delta;
    for (int r = 0; r < kRows; ++r) {
        for (int c = 0; c < kCols; ++c) {
            if (reference.at(r, c) >= threshold) roi.pixels.insert({r, c});
        }
    }
    if (roi.pixels.empty()) throw EmptyRoiError();
    return roi;
}

struct EmptyStreamError : std::runtime_error {
    EmptyStreamError() : std::runtime_error("empty frame stream") {}
};

/// The three per-class series sharing one time grid.
struct ActivityArrays {
    ActivityArray sleeping;    // A^1
    ActivityArray daily;       // A^2
    ActivityArray background;  // A^3 (doubles as the ambient estimate)

    std::size_t length() const { return sleeping.values.size(); }
    UnixSeconds start() const { return sleeping.start; }
    std::int64_t period() const { return sleeping.period; }

    const ActivityArray& by_class(ActivityClass k) const {
        switch (k) {
            case ActivityClass::Sleeping: return sleeping;
            case ActivityClass::Daily: return daily;
            case ActivityClass::NoActivity: return background;
        }
        throw std::invalid_argument("bad class");
    }
};

namespace detail {

inline std::optional<double> aggregate_pixels(const ThermalFrame& f,
                                              const std::vector<int>& idx,
                                              RoiAggregate agg) {
    if (idx.empty()) return std::nullopt;
    if (agg == RoiAggregate::Max) {
        double m = f.pixels[idx[0]];
        for (int i : idx) m = std::max(m, f.pixels[i]);
        return m;
    }
    double sum = 0.0;
    for (int i : idx) sum += f.pixels[i];
    return sum / static_cast<double>(idx.size());
}

}  // namespace detail

/// Build A^K for K = 1,2,3 over the regular grid spanning the stream.
/// Each grid instant takes the nearest frame within period/2 (ties toward
/// the earlier frame); instants with no frame are absent in all three series.
inline ActivityArrays build_activity_arrays(const std::vector<ThermalFrame>& frames,
                                            const RoiMap& rois, std::int64_t period,
                                            RoiAggregate agg = RoiAggregate::Mean) {
    if (frames.empty()) throw EmptyStreamError();
    if (period <= 0) throw std::invalid_argument("period must be > 0");

    const UnixSeconds start = frames.front().timestamp;
    const UnixSeconds last = frames.back().timestamp;
    const std::size_t len = static_cast<std::size_t>((last - start) / period) + 1;

    const auto sleep_px = rois.class_pixels(ActivityClass::Sleeping);
    const auto daily_px = rois.class_pixels(ActivityClass::Daily);
    const auto bg_px = rois.background_pixels();

    ActivityArrays out;
    out.sleeping = {ActivityClass::Sleeping, start, period, {}};
    out.daily = {ActivityClass::Daily, start, period, {}};
    out.background = {ActivityClass::NoActivity, start, period, {}};
    out.sleeping.values.resize(len);
    out.daily.values.resize(len);
    out.background.values.resize(len);

    // frames are time-ordered; walk them once
    std::size_t fi = 0;
    for (std::size_t t = 0; t < len; ++t) {
        const UnixSeconds grid = start + static_cast<std::int64_t>(t) * period;
        while (fi + 1 < frames.size() && frames[fi].timestamp < grid) {
            // keep the earlier frame on distance ties
            const auto d_cur = std::llabs(frames[fi].timestamp - grid);
            const auto d_next = std::llabs(frames[fi + 1].timestamp - grid);
            if (d_next >= d_cur) break;
            ++fi;
        }
        if (std::llabs(frames[fi].timestamp - grid) * 2 > period) continue;
        const ThermalFrame& f = frames[fi];
        out.sleeping.values[t] = detail::aggregate_pixels(f, sleep_px, agg);
        out.daily.values[t] = detail::aggregate_pixels(f, daily_px, agg);
        out.background.values[t] = detail::aggregate_pixels(f, bg_px, RoiAggregate::Mean);
    }
    return out;
}

// --- persistence ---------------------------------------------------------

inline void save_roi_map(const std::string& path, const RoiMap& map) {
    nlohmann::json regions = nlohmann::json::array();
    for (const auto& r : map.entries()) {
        nlohmann::json px = nlohmann::json::array();
        for (const auto& p : r.pixels) px.push_back({p.row, p.col});
        regions.push_back({{"label", r.label},
                           {"class", r.activity == ActivityClass::Sleeping ? "sleeping" : "daily"},
                           {"pixels", px}});
    }
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << regions.dump(2) << "\n";
}

inline RoiMap load_roi_map(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    nlohmann::json regions = nlohmann::json::parse(is);
    RoiMap map;
    for (const auto& jr : regions) {
        RegionOfInterest roi;
        roi.label = jr.at("label").get<std::string>();
        const std::string cls = jr.at("class").get<std::string>();
        if (cls == "sleeping") {
            roi.activity = ActivityClass::Sleeping;
        } else if (cls == "daily") {
            roi.activity = ActivityClass::Daily;
        } else {
            throw std::runtime_error("roi map: unknown class '" + cls + "'");
        }
        for (const auto& jp : jr.at("pixels")) {
            PixelCoord px{jp.at(0).get<int>(), jp.at(1).get<int>()};
            if (px.row < 0 || px.row >= kRows || px.col < 0 || px.col >= kCols)
                throw std::runtime_error("roi map: pixel out of bounds");
            roi.pixels.insert(px);
        }
        if (roi.pixels.empty()) throw std::runtime_error("roi map: empty region");
        map.add(std::move(roi));
    }
    return map;
}

/// `t,timestamp,a1,a2,a3`, empty fields where a series is absent
inline void write_arrays_csv(std::ostream& os, const ActivityArrays& arrays) {
    os << "t,timestamp,a1,a2,a3\n";
    char buf[32];
    for (std::size_t t = 0; t < arrays.length(); ++t) {
        os << t << "," << arrays.sleeping.timestamp_at(t);
        for (const auto* arr : {&arrays.sleeping, &arrays.daily, &arrays.background}) {
            if (arr->values[t]) {
                std::snprintf(buf, sizeof(buf), ",%.4f", *arr->values[t]);
                os << buf;
            } else {
                os << ",";
            }
        }
        os << "\n";
    }
}

/// Mean occupied-ROI temperature while occupied: a_t^K averaged over the
/// instants the timeline labels K in {Sleeping, Daily}.
template <class TimelineT>
double person_avg_temperature(const ActivityArrays& arrays, const TimelineT& timeline) {
    if (timeline.labels.size() != arrays.length())
        throw std::invalid_argument("timeline and arrays are not aligned");
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t t = 0; t < arrays.length(); ++t) {
        const Label l = timeline.labels[t];
        const std::optional<double>* v = nullptr;
        if (l == Label::Sleeping) v = &arrays.sleeping.values[t];
        else if (l == Label::Daily) v = &arrays.daily.values[t];
        else continue;
        if (!*v) continue;
        sum += **v;
        ++n;
    }
    if (n == 0) throw std::runtime_error("no occupied samples");
    return sum / static_cast<double>(n);
}

}  // namespace tadl
