#pragma once

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace tadl {

// Unix seconds, UTC. All analytics render wall-clock times by adding a fixed
// configurable offset (tz_offset_min); there is no DST handling.
using UnixSeconds = std::int64_t;

struct CivilDateTime {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31
    int hour = 0;
    int minute = 0;
    int second = 0;
};

// days since 1970-01-01 for a proleptic Gregorian civil date
inline std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

inline UnixSeconds to_unix(const CivilDateTime& c) {
    return days_from_civil(c.year, c.month, c.day) * 86400 + c.hour * 3600 +
           c.minute * 60 + c.second;
}

inline CivilDateTime from_unix(UnixSeconds t) {
    std::int64_t days = t / 86400;
    std::int64_t rem = t % 86400;
    if (rem < 0) {
        rem += 86400;
        days -= 1;
    }
    CivilDateTime c;
    civil_from_days(days, c.year, c.month, c.day);
    c.hour = static_cast<int>(rem / 3600);
    c.minute = static_cast<int>((rem % 3600) / 60);
    c.second = static_cast<int>(rem % 60);
    return c;
}

// "YYYY-MM-DDTHH:MM:SSZ"
inline std::string format_utc(UnixSeconds t) {
    const CivilDateTime c = from_unix(t);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", c.year, c.month,
                  c.day, c.hour, c.minute, c.second);
    return buf;
}

inline std::string format_local_date(UnixSeconds t, int tz_offset_min) {
    const CivilDateTime c = from_unix(t + static_cast<std::int64_t>(tz_offset_min) * 60);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", c.year, c.month, c.day);
    return buf;
}

inline std::string format_local_clock(UnixSeconds t, int tz_offset_min) {
    const CivilDateTime c = from_unix(t + static_cast<std::int64_t>(tz_offset_min) * 60);
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%02d:%02d", c.hour, c.minute);
    return buf;
}

// midnight (local) of the local day containing t, returned as UTC seconds
inline UnixSeconds local_day_start(UnixSeconds t, int tz_offset_min) {
    const std::int64_t off = static_cast<std::int64_t>(tz_offset_min) * 60;
    std::int64_t local = t + off;
    std::int64_t days = local / 86400;
    if (local % 86400 < 0) days -= 1;
    return days * 86400 - off;
}

// Accepts "YYYY-MM-DD", "YYYY-MM-DDTHH:MM", "YYYY-MM-DDTHH:MM:SS"
// (a trailing 'Z' and a ' ' separator are tolerated). Throws on anything else.
inline UnixSeconds parse_timestamp(const std::string& s) {
    CivilDateTime c;
    char sep = 0;
    int n = std::sscanf(s.c_str(), "%d-%d-%d%c%d:%d:%d", &c.year, &c.month, &c.day, &sep,
                        &c.hour, &c.minute, &c.second);
    if (n != 3 && n != 6 && n != 7)
        throw std::runtime_error("bad timestamp: '" + s + "'");
    if (n >= 6 && sep != 'T' && sep != ' ')
        throw std::runtime_error("bad timestamp separator: '" + s + "'");
    if (c.month < 1 || c.month > 12 || c.day < 1 || c.day > 31 || c.hour < 0 ||
        c.hour > 23 || c.minute < 0 || c.minute > 59 || c.second < 0 || c.second > 60)
        throw std::runtime_error("timestamp field out of range: '" + s + "'");
    return to_unix(c);
}

}  // namespace tadl
