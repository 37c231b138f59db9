#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tadl/classification.hpp"
#include "tadl/core.hpp"
#include "tadl/tracking.hpp"

namespace tadl {

/// Hours per label for one local calendar day. Always sums to 24: time the
/// timeline does not cover is accounted as Missing.
struct DailySummary {
    std::string date;        // local YYYY-MM-DD
    UnixSeconds day_start = 0;  // UTC instant of local midnight
    double daily_h = 0.0;
    double sleeping_h = 0.0;
    double no_activity_h = 0.0;
    double missing_h = 0.0;

    double total() const { return daily_h + sleeping_h + no_activity_h + missing_h; }
};

struct LabelStats {
    double mean_hours = 0.0;
    double fraction = 0.0;
};

/// Whole-period behavior statistics: mean hours/day and fraction of day
/// per label.
struct PeriodStats {
    LabelStats daily;
    LabelStats sleeping;
    LabelStats no_activity;
    LabelStats missing;
};

struct BathroomVisit {
    UnixSeconds start = 0;
    int duration_min = 0;
};

struct Outing {
    UnixSeconds start = 0;
    int duration_min = 0;
};

struct SleepOnset {
    std::string night;        // local date of the evening anchoring the night
    UnixSeconds onset = 0;
    bool after_0300 = false;  // clock time in [03:00, 12:00)
};

struct TemperatureAnomaly {
    UnixSeconds start = 0;
    int duration_min = 0;
    double min_temp = 0.0;   // coldest occupied sample inside the interval
    double day_mean = 0.0;   // that day's occupied mean it is measured against
};

struct TemperatureReport {
    std::optional<double> period_avg;  // absent when never occupied
    std::optional<double> mean_gap;    // absent when no day has both classes
    std::vector<TemperatureAnomaly> anomalies;
};

/// Per-label totals for one local calendar day, clipped at day boundaries.
inline DailySummary daily_summary(const std::vector<Segment>& segments,
                                  UnixSeconds day_start, int tz_offset_min) {
    DailySummary out;
    out.day_start = day_start;
    out.date = format_local_date(day_start, tz_offset_min);
    const UnixSeconds day_end = day_start + 86400;
    double covered = 0.0;
    for (const auto& s : segments) {
        const UnixSeconds a = std::max(s.start, day_start);
        const UnixSeconds b = std::min(s.end(), day_end);
        if (b <= a) continue;
        const double h = static_cast<double>(b - a) / 3600.0;
        covered += h;
        switch (s.label) {
            case Label::Daily: out.daily_h += h; break;
            case Label::Sleeping: out.sleeping_h += h; break;
            case Label::NoActivity: out.no_activity_h += h; break;
            case Label::Missing: out.missing_h += h; break;
        }
    }
    out.missing_h += 24.0 - covered;  // uncovered time counts as missing data
    return out;
}

/// Summaries for every local day the timeline touches, in order.
inline std::vector<DailySummary> summarize_days(const std::vector<Segment>& segments,
                                                int tz_offset_min) {
    std::vector<DailySummary> out;
    if (segments.empty()) return out;
    UnixSeconds day = local_day_start(segments.front().start, tz_offset_min);
    const UnixSeconds last = segments.back().end();
    for (; day < last; day += 86400)
        out.push_back(daily_summary(segments, day, tz_offset_min));
    return out;
}

/// Mean hours per day per label across days; fraction = mean / 24.
inline PeriodStats aggregate_stats(const std::vector<DailySummary>& summaries) {
    if (summaries.empty()) throw std::invalid_argument("aggregate_stats: no summaries");
    PeriodStats s;
    const double n = static_cast<double>(summaries.size());
    for (const auto& d : summaries) {
        s.daily.mean_hours += d.daily_h;
        s.sleeping.mean_hours += d.sleeping_h;
        s.no_activity.mean_hours += d.no_activity_h;
        s.missing.mean_hours += d.missing_h;
    }
    for (LabelStats* ls : {&s.daily, &s.sleeping, &s.no_activity, &s.missing}) {
        ls->mean_hours /= n;
        ls->fraction = ls->mean_hours / 24.0;
    }
    return s;
}

namespace detail {

inline bool occupied(Label l) { return l == Label::Sleeping || l == Label::Daily; }

inline bool is_bathroom_visit(const std::vector<Segment>& segments, std::size_t i,
                              const MonitoringConfig& cfg) {
    const auto& s = segments[i];
    if (s.label != Label::NoActivity) return false;
    if (i == 0 || i + 1 == segments.size()) return false;
    if (s.duration > static_cast<std::int64_t>(cfg.bathroom_max_min) * 60) return false;
    const auto& prev = segments[i - 1];
    const auto& next = segments[i + 1];
    const std::int64_t neighbor_min = static_cast<std::int64_t>(cfg.visit_neighbor_min) * 60;
    return occupied(prev.label) && prev.duration >= neighbor_min &&
           occupied(next.label) && next.duration >= neighbor_min;
}

}  // namespace detail

/// Short no-activity gaps wedged between two long stretches of occupancy.
inline std::vector<BathroomVisit> infer_bathroom_visits(const std::vector<Segment>& segments,
                                                        const MonitoringConfig& cfg = {}) {
    std::vector<BathroomVisit> out;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (detail::is_bathroom_visit(segments, i, cfg))
            out.push_back({segments[i].start,
                           static_cast<int>(segments[i].duration / 60)});
    }
    return out;
}

/// Long no-activity stretches that do not qualify as bathroom visits: the
/// person is out of the room.
inline std::vector<Outing> infer_outings(const std::vector<Segment>& segments,
                                         const MonitoringConfig& cfg = {}) {
    std::vector<Outing> out;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const auto& s = segments[i];
        if (s.label != Label::NoActivity) continue;
        if (s.duration <= static_cast<std::int64_t>(cfg.outing_min_min) * 60) continue;
        if (detail::is_bathroom_visit(segments, i, cfg)) continue;
        out.push_back({s.start, static_cast<int>(s.duration / 60)});
    }
    return out;
}

struct SleepReport {
    std::vector<SleepOnset> onsets;
    bool night_owl = false;
    std::optional<double> median_onset_min;  // minutes past local midnight, may be negative
};

/// Sleep onset per night: the first Sleeping segment of at least two hours
/// beginning after 20:00 local and before noon the next day. The person is a
/// night owl when the median onset falls after midnight.
inline SleepReport sleep_onsets(const std::vector<Segment>& segments,
                                const MonitoringConfig& cfg = {}) {
    SleepReport rep;
    if (segments.empty()) return rep;
    const UnixSeconds first_day =
        local_day_start(segments.front().start, cfg.tz_offset_min);
    const UnixSeconds last = segments.back().end();
    std::vector<double> offsets;  // minutes relative to local midnight of the next day
    for (UnixSeconds day = first_day; day < last; day += 86400) {
        const UnixSeconds window_lo = day + 20 * 3600;
        const UnixSeconds window_hi = day + 86400 + 12 * 3600;
        const UnixSeconds midnight = day + 86400;
        for (const auto& s : segments) {
            if (s.label != Label::Sleeping) continue;
            if (s.duration < 120 * 60) continue;
            if (s.start <= window_lo || s.start >= window_hi) continue;
            SleepOnset onset;
            onset.night = format_local_date(day, cfg.tz_offset_min);
            onset.onset = s.start;
            const double min_past_midnight =
                static_cast<double>(s.start - midnight) / 60.0;
            onset.after_0300 = min_past_midnight >= 180.0 && min_past_midnight < 720.0;
            rep.onsets.push_back(onset);
            offsets.push_back(min_past_midnight);
            break;
        }
    }
    if (!offsets.empty()) {
        std::sort(offsets.begin(), offsets.end());
        const std::size_t n = offsets.size();
        const double median = n % 2 == 1 ? offsets[n / 2]
                                         : (offsets[n / 2 - 1] + offsets[n / 2]) / 2.0;
        rep.median_onset_min = median;
        rep.night_owl = median > static_cast<double>(cfg.night_owl_cutoff_min);
    }
    return rep;
}

namespace detail {

// occupied-ROI temperature at instant t, absent when not occupied
inline std::optional<double> occupied_temp(const ActivityArrays& arrays,
                                           const ActivityTimeline& tl, std::size_t t) {
    if (tl.labels[t] == Label::Sleeping) return arrays.sleeping.values[t];
    if (tl.labels[t] == Label::Daily) return arrays.daily.values[t];
    return std::nullopt;
}

}  // namespace detail

/// Whole-period temperature findings: the person's average while occupied,
/// the mean daily sleeping/daily gap, and sustained drops below the day's
/// occupied mean.
inline TemperatureReport temperature_report(const ActivityArrays& arrays,
                                            const ActivityTimeline& tl,
                                            const MonitoringConfig& cfg = {}) {
    if (tl.labels.size() != arrays.length())
        throw std::invalid_argument("timeline and arrays are not aligned");
    TemperatureReport rep;

    try {
        rep.period_avg = person_avg_temperature(arrays, tl);
    } catch (const std::runtime_error&) {
        rep.period_avg = std::nullopt;
    }

    // bucket instants by local day
    std::map<UnixSeconds, std::vector<std::size_t>> days;
    for (std::size_t t = 0; t < tl.labels.size(); ++t)
        days[local_day_start(tl.timestamp_at(t), cfg.tz_offset_min)].push_back(t);

    double gap_sum = 0.0;
    int gap_days = 0;
    for (const auto& [day, instants] : days) {
        double s_sum = 0.0, d_sum = 0.0;
        int s_n = 0, d_n = 0;
        double occ_sum = 0.0;
        int occ_n = 0;
        for (std::size_t t : instants) {
            if (tl.labels[t] == Label::Sleeping && arrays.sleeping.values[t]) {
                s_sum += *arrays.sleeping.values[t];
                ++s_n;
            } else if (tl.labels[t] == Label::Daily && arrays.daily.values[t]) {
                d_sum += *arrays.daily.values[t];
                ++d_n;
            }
            if (auto v = detail::occupied_temp(arrays, tl, t)) {
                occ_sum += *v;
                ++occ_n;
            }
        }
        if (s_n > 0 && d_n > 0) {
            gap_sum += std::abs(s_sum / s_n - d_sum / d_n);
            ++gap_days;
        }
        if (occ_n == 0) continue;

        // sustained drops below this day's occupied mean
        const double day_mean = occ_sum / occ_n;
        const double cutoff = day_mean - cfg.anomaly_delta;
        const std::int64_t min_dur = static_cast<std::int64_t>(cfg.anomaly_min_minutes) * 60;
        std::size_t run_start = 0;
        int run_len = 0;
        double run_min = 0.0;
        auto flush = [&](std::size_t end_t) {
            if (run_len > 0 &&
                static_cast<std::int64_t>(run_len) * tl.period >= min_dur) {
                rep.anomalies.push_back({tl.timestamp_at(run_start),
                                         static_cast<int>(run_len * tl.period / 60),
                                         run_min, day_mean});
            }
            (void)end_t;
            run_len = 0;
        };
        for (std::size_t t : instants) {
            const auto v = detail::occupied_temp(arrays, tl, t);
            if (v && *v < cutoff) {
                if (run_len == 0) {
                    run_start = t;
                    run_min = *v;
                }
                run_min = std::min(run_min, *v);
                ++run_len;
            } else {
                flush(t);
            }
        }
        flush(instants.back() + 1);
    }
    if (gap_days > 0) rep.mean_gap = gap_sum / gap_days;
    return rep;
}

// --- report emitters -------------------------------------------------------

inline void write_table1_csv(std::ostream& os, const std::vector<DailySummary>& days) {
    char buf[64];
    os << "date,daily_h,sleeping_h,no_activity_h,missing_h\n";
    for (const auto& d : days) {
        std::snprintf(buf, sizeof(buf), "%s,%.2f,%.2f,%.2f,%.2f", d.date.c_str(),
                      d.daily_h, d.sleeping_h, d.no_activity_h, d.missing_h);
        os << buf << "\n";
    }
}

inline void write_table2_csv(std::ostream& os, const PeriodStats& stats) {
    char buf[64];
    os << "activity_type,mean_hours,fraction\n";
    const std::pair<const char*, const LabelStats*> rows[] = {
        {"daily", &stats.daily},
        {"sleeping", &stats.sleeping},
        {"no_activity", &stats.no_activity},
        {"missing", &stats.missing},
    };
    for (const auto& [name, ls] : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%.6f,%.9f", name, ls->mean_hours, ls->fraction);
        os << buf << "\n";
    }
}

inline void write_table3_csv(std::ostream& os, const std::vector<BathroomVisit>& visits,
                             int tz_offset_min) {
    os << "date,start,duration_min\n";
    for (const auto& v : visits) {
        os << format_local_date(v.start, tz_offset_min) << ","
           << format_local_clock(v.start, tz_offset_min) << "," << v.duration_min << "\n";
    }
}

inline std::string findings_text(const PeriodStats& stats, const SleepReport& sleep,
                                 const std::vector<Outing>& outings,
                                 const TemperatureReport& temps, int tz_offset_min) {
    std::ostringstream os;
    char buf[128];
    os << "== behavior findings ==\n";
    std::snprintf(buf, sizeof(buf),
                  "mean hours/day: daily %.2f, sleeping %.2f, no-activity %.2f, missing %.2f\n",
                  stats.daily.mean_hours, stats.sleeping.mean_hours,
                  stats.no_activity.mean_hours, stats.missing.mean_hours);
    os << buf;

    os << "night-owl: " << (sleep.night_owl ? "yes" : "no");
    if (sleep.median_onset_min) {
        std::snprintf(buf, sizeof(buf), " (median onset %+.0f min from midnight)",
                      *sleep.median_onset_min);
        os << buf;
    }
    os << "\n";
    for (const auto& o : sleep.onsets) {
        os << "  onset night " << o.night << ": "
           << format_local_clock(o.onset, tz_offset_min)
           << (o.after_0300 ? " (after 03:00)" : "") << "\n";
    }

    os << "outings: " << outings.size() << "\n";
    for (const auto& o : outings) {
        os << "  " << format_local_date(o.start, tz_offset_min) << " "
           << format_local_clock(o.start, tz_offset_min) << " for " << o.duration_min
           << " min\n";
    }

    if (temps.period_avg) {
        std::snprintf(buf, sizeof(buf), "person average temperature: %.2f C\n",
                      *temps.period_avg);
        os << buf;
    }
    if (temps.mean_gap) {
        std::snprintf(buf, sizeof(buf), "mean sleeping/daily temperature gap: %.2f C\n",
                      *temps.mean_gap);
        os << buf;
    }
    os << "temperature anomalies: " << temps.anomalies.size() << "\n";
    for (const auto& a : temps.anomalies) {
        std::snprintf(buf, sizeof(buf), "  %s %s for %d min (min %.2f C, day mean %.2f C)\n",
                      format_local_date(a.start, tz_offset_min).c_str(),
                      format_local_clock(a.start, tz_offset_min).c_str(), a.duration_min,
                      a.min_temp, a.day_mean);
        os << buf;
    }
    return os.str();
}

}  // namespace tadl
