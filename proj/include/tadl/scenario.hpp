#pragma once

#include <string>

#include "tadl/simulator.hpp"
#include "tadl/tracking.hpp"

namespace tadl {

/// The bundled 11-day scenario (2021-04-07 .. 2021-04-17): a single person,
/// bed plus two tables, per-day hour budgets and bathroom/outing events laid
/// out so the whole pipeline can be exercised end to end. Sleeping runs
/// +1.5 C above the skin proxy and table work -1.5 C below it, giving the
/// 3 C sleeping/daily separation.
inline std::string default_scenario_text() {
    return R"(# default single-person scenario, 11 days
ambient = 22.0
noise_sigma = 0.3
skin_proxy = 32.0
sigma_upright = 1.0
sigma_lying = 2.2
seed = 42
period = 60
start = 2021-04-07T00:00
end = 2021-04-18T00:00

location bed = 3,3 sleeping
location work_table = 8,12 daily
location dining_table = 3,12 daily

# day 7: sleep till late morning, one long afternoon bathroom break
interval 2021-04-07T00:00 2021-04-07T11:30 bed lying +1.5
interval 2021-04-07T11:30 2021-04-07T14:00 work_table upright -1.5
interval 2021-04-07T15:00 2021-04-07T19:00 work_table upright -1.5
interval 2021-04-07T19:00 2021-04-07T20:00 dining_table upright -1.5
interval 2021-04-07T20:00 2021-04-08T01:00 work_table upright -1.5

# day 8: short night (to bed after 03:00), long sensor outage, evening out
interval 2021-04-08T01:30 2021-04-08T03:30 work_table upright -1.5
interval 2021-04-08T03:30 2021-04-08T05:30 bed lying +1.5
outage   2021-04-08T05:30 2021-04-08T14:30
interval 2021-04-08T17:30 2021-04-08T21:00 work_table upright -1.5

# day 9: long sleep, out for work during the day
interval 2021-04-09T00:30 2021-04-09T01:30 bed lying +1.5
interval 2021-04-09T02:00 2021-04-09T10:00 bed lying +1.5
interval 2021-04-09T10:00 2021-04-09T10:30 dining_table upright -1.5
interval 2021-04-09T19:30 2021-04-09T21:30 work_table upright -1.5
interval 2021-04-09T21:30 2021-04-09T22:30 bed lying +1.5
interval 2021-04-09T22:30 2021-04-10T00:30 work_table upright -1.5

# day 10: two night/noon bathroom breaks, outage, evening break
interval 2021-04-10T00:30 2021-04-10T07:00 bed lying +1.5
interval 2021-04-10T07:30 2021-04-10T13:00 bed lying +1.5
interval 2021-04-10T13:30 2021-04-10T15:30 work_table upright -1.5
outage   2021-04-10T15:30 2021-04-10T20:30
interval 2021-04-10T20:30 2021-04-10T21:30 dining_table upright -1.5
interval 2021-04-10T22:30 2021-04-11T00:30 work_table upright -1.5

# day 11: short sleep, outage, evening errand and a 90-minute break
interval 2021-04-11T00:30 2021-04-11T05:30 bed lying +1.5
outage   2021-04-11T06:00 2021-04-11T14:00
interval 2021-04-11T14:00 2021-04-11T17:30 work_table upright -1.5
interval 2021-04-11T18:00 2021-04-11T19:00 dining_table upright -1.5
interval 2021-04-11T21:30 2021-04-11T22:30 work_table upright -1.5

# day 12: night break, outage through the day, busy evening
interval 2021-04-12T00:00 2021-04-12T01:30 work_table upright -1.5
interval 2021-04-12T02:00 2021-04-12T09:30 bed lying +1.5
outage   2021-04-12T09:30 2021-04-12T17:30
interval 2021-04-12T17:30 2021-04-12T18:30 dining_table upright -1.5
interval 2021-04-12T19:00 2021-04-12T21:00 work_table upright -1.5
interval 2021-04-12T22:00 2021-04-12T23:30 work_table upright -1.5
outage   2021-04-12T23:30 2021-04-13T00:30

# day 13: morning break, afternoon nap, out for work, late outage
interval 2021-04-13T00:30 2021-04-13T01:00 work_table upright -1.5
interval 2021-04-13T01:00 2021-04-13T08:00 bed lying +1.5
interval 2021-04-13T08:00 2021-04-13T09:30 dining_table upright -1.5
interval 2021-04-13T10:00 2021-04-13T13:00 bed lying +1.5
interval 2021-04-13T19:30 2021-04-13T21:30 work_table upright -1.5
outage   2021-04-13T21:30 2021-04-14T00:00

# day 14: thirteen hours in bed, long desk stretch into the night
interval 2021-04-14T00:00 2021-04-14T00:15 work_table upright -1.5
interval 2021-04-14T00:15 2021-04-14T13:15 bed lying +1.5
interval 2021-04-14T13:15 2021-04-14T14:15 dining_table upright -1.5
interval 2021-04-14T14:45 2021-04-15T03:00 work_table upright -1.5

# day 15: to bed after 03:00, out for work in the afternoon
interval 2021-04-15T03:30 2021-04-15T13:00 bed lying +1.5
interval 2021-04-15T13:00 2021-04-15T14:00 dining_table upright -1.5
interval 2021-04-15T21:00 2021-04-16T00:30 work_table upright -1.5

# day 16: long sleep, out for work, long desk evening
interval 2021-04-16T00:30 2021-04-16T12:00 bed lying +1.5
interval 2021-04-16T12:00 2021-04-16T14:00 work_table upright -1.5
interval 2021-04-16T18:30 2021-04-17T03:15 work_table upright -1.5

# day 17: to bed after 03:00, noon break, monitoring tails off in an outage
interval 2021-04-17T03:15 2021-04-17T09:45 bed lying +1.5
interval 2021-04-17T09:45 2021-04-17T12:30 dining_table upright -1.5
interval 2021-04-17T13:30 2021-04-17T15:00 bed lying +1.5
interval 2021-04-17T15:00 2021-04-17T18:30 work_table upright -1.5
outage   2021-04-17T18:30 2021-04-18T00:00
)";
}

inline std::pair<Scene, Schedule> default_scenario() {
    return parse_scene_config(default_scenario_text());
}

/// ROI map matching the default scenario, calibrated from clean reference
/// captures at each location. A high threshold keeps the regions tight
/// around each hot spot.
inline RoiMap default_scenario_roi_map(const Scene& scene, double delta = 2.0) {
    RoiMap map;
    for (const auto& [name, loc] : scene.locations) {
        const Posture posture =
            loc.activity == ActivityClass::Sleeping ? Posture::Lying : Posture::Upright;
        map.add(calibrate_roi(reference_frame(scene, name, posture, scene.start),
                              scene.ambient, delta, loc.activity, name));
    }
    return map;
}

}  // namespace tadl
