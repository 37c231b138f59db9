#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

#include "tadl/core.hpp"
#include "tadl/time.hpp"

#include "helpers.hpp"

using namespace tadl;

TEST_CASE("validate_frame accepts a uniform in-range frame") {
    REQUIRE(!validate_frame(make_frame(0, 22.0)).has_value());
}

TEST_CASE("validate_frame rejects a short frame as WrongLength") {
    ThermalFrame f = make_frame(0, 22.0);
    f.pixels.pop_back();
    REQUIRE(validate_frame(f) == FrameError::WrongLength);
}

TEST_CASE("validate_frame rejects out-of-envelope pixels") {
    ThermalFrame f = make_frame(0, 22.0);
    f.pixels[17] = 400.0;
    REQUIRE(validate_frame(f) == FrameError::OutOfRange);
    f.pixels[17] = -41.0;
    REQUIRE(validate_frame(f) == FrameError::OutOfRange);
}

TEST_CASE("validate_frame rejects non-finite pixels") {
    ThermalFrame f = make_frame(0, 22.0);
    f.pixels[0] = std::numeric_limits<double>::quiet_NaN();
    REQUIRE(validate_frame(f) == FrameError::NonFinite);
    f.pixels[0] = std::numeric_limits<double>::infinity();
    REQUIRE(validate_frame(f) == FrameError::NonFinite);
}

TEST_CASE("validate_frame agrees with a mutation generator") {
    // mutate valid frames in controlled ways; validate must accept exactly
    // the unmutated ones
    std::mt19937_64 rng(101);
    for (int i = 0; i < 200; ++i) {
        ThermalFrame f = testutil::random_frame(rng, i);
        REQUIRE(!validate_frame(f).has_value());
        const int mutation = static_cast<int>(rng() % 3);
        std::size_t px = rng() % f.pixels.size();
        switch (mutation) {
            case 0:
                f.pixels.resize(f.pixels.size() - 1 - rng() % 10);
                REQUIRE(validate_frame(f) == FrameError::WrongLength);
                break;
            case 1:
                f.pixels[px] = (rng() % 2) ? 300.01 : -40.01;
                REQUIRE(validate_frame(f) == FrameError::OutOfRange);
                break;
            default:
                f.pixels[px] = std::numeric_limits<double>::quiet_NaN();
                REQUIRE(validate_frame(f) == FrameError::NonFinite);
                break;
        }
    }
}

TEST_CASE("frame_stats on uniform and near-uniform frames") {
    const FrameStats u = frame_stats(make_frame(0, 22.0));
    REQUIRE(u.min == 22.0);
    REQUIRE(u.max == 22.0);
    REQUIRE(u.mean == 22.0);

    ThermalFrame f = make_frame(0, 22.0);
    f.pixels[50] = 32.0;
    const FrameStats s = frame_stats(f);
    REQUIRE(s.min == 22.0);
    REQUIRE(s.max == 32.0);
    REQUIRE_THAT(s.mean, Catch::Matchers::WithinAbs((191.0 * 22.0 + 32.0) / 192.0, 1e-12));
}

TEST_CASE("frame_stats on an alternating frame") {
    ThermalFrame f;
    for (int i = 0; i < kPixelCount; ++i) f.pixels.push_back(i % 2 ? 24.0 : 20.0);
    const FrameStats s = frame_stats(f);
    REQUIRE(s.min == 20.0);
    REQUIRE(s.max == 24.0);
    REQUIRE_THAT(s.mean, Catch::Matchers::WithinAbs(22.0, 1e-12));
}

TEST_CASE("frame_stats ordering holds for random frames") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        const FrameStats s = frame_stats(testutil::random_frame(rng, i));
        REQUIRE(s.min <= s.mean);
        REQUIRE(s.mean <= s.max);
    }
}

TEST_CASE("frame CSV writes one row with 193 fields per frame") {
    std::ostringstream os;
    write_frames_csv(os, {make_frame(1617753600, 22.0)});
    std::istringstream is(os.str());
    std::string header, row, extra;
    REQUIRE(std::getline(is, header));
    REQUIRE(header.rfind("timestamp,p0,p1,", 0) == 0);
    REQUIRE(std::getline(is, row));
    REQUIRE(!std::getline(is, extra));
    REQUIRE(std::count(row.begin(), row.end(), ',') == 192);
    REQUIRE(row.rfind("1617753600,22.00,", 0) == 0);
}

TEST_CASE("frame CSV round-trips 1000 random frames within quantization") {
    std::mt19937_64 rng(42);
    std::vector<ThermalFrame> frames;
    for (int i = 0; i < 1000; ++i)
        frames.push_back(testutil::random_frame(rng, 1617753600 + 60 * i, -39.9, 299.9));
    std::ostringstream os;
    write_frames_csv(os, frames);
    std::istringstream is(os.str());
    const auto back = read_frames_csv(is);
    REQUIRE(back.size() == frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
        REQUIRE(back[i].timestamp == frames[i].timestamp);
        for (int p = 0; p < kPixelCount; ++p)
            REQUIRE_THAT(back[i].pixels[p],
                         Catch::Matchers::WithinAbs(frames[i].pixels[p], 0.01));
    }
}

TEST_CASE("frame CSV: empty input is an empty stream, not an error") {
    std::istringstream is("");
    REQUIRE(read_frames_csv(is).empty());
}

TEST_CASE("frame CSV rejects malformed rows with a line number") {
    std::istringstream is("timestamp,p0\n123,not_a_number\n");
    REQUIRE_THROWS_AS(read_frames_csv(is), CsvError);

    std::ostringstream os;
    write_frames_csv(os, {make_frame(100, 22.0)});
    std::string text = os.str() + "50";  // second row, fewer fields
    std::istringstream is2(text);
    REQUIRE_THROWS_WITH(read_frames_csv(is2),
                        Catch::Matchers::ContainsSubstring("line 3"));
}

TEST_CASE("frame CSV rejects non-monotonic timestamps") {
    std::vector<ThermalFrame> frames = {make_frame(100, 22.0), make_frame(100, 23.0)};
    std::ostringstream os;
    REQUIRE_THROWS_AS(write_frames_csv(os, frames), CsvError);

    std::ostringstream ok;
    write_frames_csv(ok, {make_frame(200, 22.0)});
    std::ostringstream ok2;
    write_frames_csv(ok2, {make_frame(100, 22.0)});
    // splice the 200-row before the 100-row
    std::string spliced = ok.str();
    std::istringstream second(ok2.str());
    std::string header, row;
    std::getline(second, header);
    std::getline(second, row);
    spliced += row + "\n";
    std::istringstream is(spliced);
    REQUIRE_THROWS_AS(read_frames_csv(is), CsvError);
}

TEST_CASE("civil time conversions round-trip") {
    REQUIRE(to_unix({1970, 1, 1, 0, 0, 0}) == 0);
    REQUIRE(to_unix({2021, 4, 7, 0, 0, 0}) == 1617753600);
    for (UnixSeconds t : {0L, 1617753600L, 1617753600L + 86399L, -86400L, 4102444800L}) {
        REQUIRE(to_unix(from_unix(t)) == t);
    }
    REQUIRE(format_utc(1617753600) == "2021-04-07T00:00:00Z");
    REQUIRE(parse_timestamp("2021-04-07T00:00:00") == 1617753600);
    REQUIRE(parse_timestamp("2021-04-07T00:00") == 1617753600);
    REQUIRE(parse_timestamp("2021-04-07") == 1617753600);
    REQUIRE_THROWS(parse_timestamp("yesterday"));
    REQUIRE_THROWS(parse_timestamp("2021-13-07"));
}

TEST_CASE("local day helpers respect the timezone offset") {
    const UnixSeconds t = 1617753600 + 2 * 3600;  // 02:00 UTC on the 7th
    REQUIRE(local_day_start(t, 0) == 1617753600);
    REQUIRE(format_local_date(t, 0) == "2021-04-07");
    REQUIRE(format_local_clock(t, 0) == "02:00");
    // with -180 min the local clock is the previous day 23:00
    REQUIRE(format_local_date(t, -180) == "2021-04-06");
    REQUIRE(local_day_start(t, -180) == 1617753600 - 86400 + 180 * 60);
    REQUIRE(format_local_clock(t, 90) == "03:30");
}
