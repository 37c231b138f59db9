#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tadl/classification.hpp"
#include "tadl/core.hpp"
#include "tadl/time.hpp"

namespace tadl {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Posture { Upright, Lying };

struct SceneLocation {
    double row = 0.0;
    double col = 0.0;
    ActivityClass activity = ActivityClass::Daily;
};

/// Synthetic room standing in for the physical sensor: an ambient plane, a
/// person modeled as a Gaussian heat blob, and i.i.d. per-pixel noise.
struct Scene {
    double ambient = 22.0;
    double noise_sigma = 0.3;
    double skin_proxy = 32.0;     // blob peak; the person's apparent temperature
    double sigma_upright = 1.0;   // confined footprint
    double sigma_lying = 2.2;     // wider, scattered footprint
    std::uint64_t seed = 1;
    std::int64_t period = 60;
    UnixSeconds start = 0;
    UnixSeconds end = 0;
    std::map<std::string, SceneLocation> locations;

    void validate() const {
        if (skin_proxy <= ambient) throw ConfigError("skin_proxy must exceed ambient");
        if (sigma_lying <= sigma_upright)
            throw ConfigError("sigma_lying must exceed sigma_upright");
        if (period <= 0) throw ConfigError("period must be > 0");
        if (end <= start) throw ConfigError("scene end must follow start");
        if (noise_sigma < 0) throw ConfigError("noise_sigma must be >= 0");
    }
};

struct ScheduleEntry {
    enum class Kind { Present, Outage };
    Kind kind = Kind::Present;
    UnixSeconds start = 0;
    UnixSeconds end = 0;
    std::string location;  // Present only
    Posture posture = Posture::Upright;
    double temp_offset = 0.0;
};

struct Schedule {
    std::vector<ScheduleEntry> entries;  // kept sorted by start

    void validate(const Scene& scene) const {
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const auto& e = entries[i];
            if (e.end <= e.start) throw ConfigError("schedule interval with no duration");
            if (e.start < scene.start || e.end > scene.end)
                throw ConfigError("schedule interval outside scene range");
            if (i > 0 && e.start < entries[i - 1].end)
                throw ConfigError("schedule intervals overlap");
            if (e.kind == ScheduleEntry::Kind::Present &&
                scene.locations.find(e.location) == scene.locations.end())
                throw ConfigError("schedule references unknown location: " + e.location);
        }
    }

    const ScheduleEntry* at(UnixSeconds t) const {
        auto it = std::upper_bound(entries.begin(), entries.end(), t,
                                   [](UnixSeconds v, const ScheduleEntry& e) {
                                       return v < e.start;
                                   });
        if (it == entries.begin()) return nullptr;
        --it;
        return t < it->end ? &*it : nullptr;
    }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline double unit_double(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

// Box-Muller on a splitmix64 stream: stable across platforms, unlike
// std::normal_distribution.
class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t seed) : state_(seed) {}

    double next() {
        constexpr double two_pi = 6.283185307179586;
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = unit_double(state_);
        while (u1 <= 0.0) u1 = unit_double(state_);
        const double u2 = unit_double(state_);
        const double mag = std::sqrt(-2.0 * std::log(u1));
        spare_ = mag * std::sin(two_pi * u2);
        have_spare_ = true;
        return mag * std::cos(two_pi * u2);
    }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline std::uint64_t frame_noise_seed(std::uint64_t scene_seed, UnixSeconds ts) {
    std::uint64_t s = scene_seed ^ (static_cast<std::uint64_t>(ts) * 0x2545F4914F6CDD1Dull);
    return splitmix64(s);
}

}  // namespace detail

/// Render the scene at one instant: ambient plane, plus the person's blob
/// when the schedule places them somewhere, plus seeded per-pixel noise.
inline ThermalFrame render_frame(const Scene& scene, const Schedule& schedule,
                                 UnixSeconds instant) {
    ThermalFrame f = make_frame(instant, scene.ambient);
    const ScheduleEntry* e = schedule.at(instant);
    if (e && e->kind == ScheduleEntry::Kind::Present) {
        const SceneLocation& loc = scene.locations.at(e->location);
        const double sigma =
            e->posture == Posture::Lying ? scene.sigma_lying : scene.sigma_upright;
        const double peak = scene.skin_proxy + e->temp_offset - scene.ambient;
        for (int r = 0; r < kRows; ++r) {
            for (int c = 0; c < kCols; ++c) {
                const double dr = r - loc.row;
                const double dc = c - loc.col;
                f.at(r, c) += peak * std::exp(-(dr * dr + dc * dc) / (2.0 * sigma * sigma));
            }
        }
    }
    if (scene.noise_sigma > 0.0) {
        detail::GaussianStream noise(detail::frame_noise_seed(scene.seed, instant));
        for (double& p : f.pixels) p += scene.noise_sigma * noise.next();
    }
    return f;
}

/// Clean capture with the person placed at a location: what the operator
/// records during ROI calibration.
inline ThermalFrame reference_frame(const Scene& scene, const std::string& location,
                                    Posture posture, UnixSeconds instant = 0) {
    Scene clean = scene;
    clean.noise_sigma = 0.0;
    Schedule sched;
    clean.start = instant;
    clean.end = instant + clean.period;
    sched.entries.push_back({ScheduleEntry::Kind::Present, instant, instant + clean.period,
                             location, posture, 0.0});
    return render_frame(clean, sched, instant);
}

struct SimulationRun {
    std::vector<ThermalFrame> frames;     // outage instants are simply missing
    ActivityTimeline ground_truth;        // per grid instant, Missing during outages
};

/// One frame per grid instant over [scene.start, scene.end), skipping
/// scheduled outages, with the matching ground-truth label stream.
inline SimulationRun run_simulation(const Scene& scene, const Schedule& schedule) {
    scene.validate();
    schedule.validate(scene);
    SimulationRun out;
    out.ground_truth.start = scene.start;
    out.ground_truth.period = scene.period;
    const auto n = static_cast<std::size_t>((scene.end - scene.start) / scene.period);
    out.frames.reserve(n);
    out.ground_truth.labels.reserve(n);
    for (std::size_t t = 0; t < n; ++t) {
        const UnixSeconds instant = scene.start + static_cast<std::int64_t>(t) * scene.period;
        const ScheduleEntry* e = schedule.at(instant);
        if (e && e->kind == ScheduleEntry::Kind::Outage) {
            out.ground_truth.labels.push_back(Label::Missing);
            continue;
        }
        Label gt = Label::NoActivity;
        if (e) gt = to_label(scene.locations.at(e->location).activity);
        out.ground_truth.labels.push_back(gt);
        out.frames.push_back(render_frame(scene, schedule, instant));
    }
    return out;
}

// --- scene/schedule text config ---------------------------------------------

namespace detail {

inline std::vector<std::string> tokens(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

[[noreturn]] inline void config_fail(std::size_t lineno, const std::string& what) {
    throw ConfigError("line " + std::to_string(lineno) + ": " + what);
}

inline double parse_double(const std::string& s, std::size_t lineno) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("junk");
        return v;
    } catch (const std::exception&) {
        config_fail(lineno, "bad number '" + s + "'");
    }
}

inline UnixSeconds parse_time(const std::string& s, std::size_t lineno) {
    try {
        return parse_timestamp(s);
    } catch (const std::exception& e) {
        config_fail(lineno, e.what());
    }
}

}  // namespace detail

/// Text format: `key = value` scalars, `location NAME = ROW,COL CLASS` lines,
/// `interval START END LOCATION POSTURE [OFFSET]` and `outage START END`
/// lines. `#` starts a comment. Errors carry the offending line number.
inline std::pair<Scene, Schedule> parse_scene_config(std::istream& is) {
    Scene scene;
    Schedule schedule;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        auto tok = detail::tokens(line);
        if (tok.empty()) continue;

        if (tok[0] == "location") {
            // location bed = 3,3 sleeping
            if (tok.size() != 5 || tok[2] != "=")
                detail::config_fail(lineno, "expected: location NAME = ROW,COL CLASS");
            const auto comma = tok[3].find(',');
            if (comma == std::string::npos)
                detail::config_fail(lineno, "expected ROW,COL coordinates");
            SceneLocation loc;
            loc.row = detail::parse_double(tok[3].substr(0, comma), lineno);
            loc.col = detail::parse_double(tok[3].substr(comma + 1), lineno);
            if (loc.row < 0 || loc.row > kRows - 1 || loc.col < 0 || loc.col > kCols - 1)
                detail::config_fail(lineno, "location outside the 16x12 grid");
            if (tok[4] == "sleeping") loc.activity = ActivityClass::Sleeping;
            else if (tok[4] == "daily") loc.activity = ActivityClass::Daily;
            else detail::config_fail(lineno, "location class must be sleeping or daily");
            scene.locations[tok[1]] = loc;
        } else if (tok[0] == "interval") {
            // interval START END LOCATION POSTURE [OFFSET]
            if (tok.size() != 5 && tok.size() != 6)
                detail::config_fail(lineno, "expected: interval START END LOCATION POSTURE [OFFSET]");
            ScheduleEntry e;
            e.kind = ScheduleEntry::Kind::Present;
            e.start = detail::parse_time(tok[1], lineno);
            e.end = detail::parse_time(tok[2], lineno);
            e.location = tok[3];
            if (tok[4] == "upright") e.posture = Posture::Upright;
            else if (tok[4] == "lying") e.posture = Posture::Lying;
            else detail::config_fail(lineno, "posture must be upright or lying");
            if (tok.size() == 6) e.temp_offset = detail::parse_double(tok[5], lineno);
            schedule.entries.push_back(e);
        } else if (tok[0] == "outage") {
            if (tok.size() != 3) detail::config_fail(lineno, "expected: outage START END");
            ScheduleEntry e;
            e.kind = ScheduleEntry::Kind::Outage;
            e.start = detail::parse_time(tok[1], lineno);
            e.end = detail::parse_time(tok[2], lineno);
            schedule.entries.push_back(e);
        } else if (tok.size() >= 3 && tok[1] == "=") {
            const std::string& key = tok[0];
            const std::string& val = tok[2];
            if (key == "ambient") scene.ambient = detail::parse_double(val, lineno);
            else if (key == "noise_sigma") scene.noise_sigma = detail::parse_double(val, lineno);
            else if (key == "skin_proxy") scene.skin_proxy = detail::parse_double(val, lineno);
            else if (key == "sigma_upright") scene.sigma_upright = detail::parse_double(val, lineno);
            else if (key == "sigma_lying") scene.sigma_lying = detail::parse_double(val, lineno);
            else if (key == "seed") scene.seed = static_cast<std::uint64_t>(
                         std::strtoull(val.c_str(), nullptr, 10));
            else if (key == "period") scene.period = static_cast<std::int64_t>(
                         detail::parse_double(val, lineno));
            else if (key == "start") scene.start = detail::parse_time(val, lineno);
            else if (key == "end") scene.end = detail::parse_time(val, lineno);
            else detail::config_fail(lineno, "unknown key '" + key + "'");
        } else {
            detail::config_fail(lineno, "unrecognized directive '" + tok[0] + "'");
        }
    }
    std::sort(schedule.entries.begin(), schedule.entries.end(),
              [](const ScheduleEntry& a, const ScheduleEntry& b) { return a.start < b.start; });
    scene.validate();
    schedule.validate(scene);
    return {scene, schedule};
}

inline std::pair<Scene, Schedule> parse_scene_config(const std::string& text) {
    std::istringstream is(text);
    return parse_scene_config(is);
}

inline std::pair<Scene, Schedule> load_scene_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open: " + path);
    return parse_scene_config(is);
}

}  // namespace tadl
