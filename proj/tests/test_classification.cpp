#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <sstream>

#include "tadl/classification.hpp"

#include "helpers.hpp"

using namespace tadl;

namespace {

std::vector<Label> random_labels(std::mt19937_64& rng, std::size_t n) {
    std::vector<Label> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(static_cast<Label>(rng() % 4));  // includes Missing
    return out;
}

ActivityTimeline tl_of(std::vector<Label> labels) {
    return ActivityTimeline{0, 60, std::move(labels)};
}

}  // namespace

TEST_CASE("classify_sample: basic rule outcomes") {
    REQUIRE(classify_sample(31.0, 22.0, 22.0, 2.0) == Label::Sleeping);
    REQUIRE(classify_sample(std::nullopt, std::nullopt, 22.0, 2.0) == Label::Missing);
    REQUIRE(classify_sample(30.0, 31.0, 22.0, 2.0) == Label::Daily);  // argmax
    REQUIRE(classify_sample(22.5, 22.5, 22.0, 2.0) == Label::NoActivity);
    REQUIRE(classify_sample(31.0, 31.0, 22.0, 2.0) == Label::Sleeping);  // tie
    REQUIRE(classify_sample(std::nullopt, 30.0, 22.0, 2.0) == Label::Daily);
    REQUIRE(classify_sample(30.0, std::nullopt, 22.0, 2.0) == Label::Sleeping);
    REQUIRE(classify_sample(21.0, 23.9, 22.0, 2.0) == Label::NoActivity);
}

TEST_CASE("classify_sample is invariant under a common temperature shift") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> temp(20.0, 35.0);
    std::uniform_real_distribution<double> shift(-30.0, 30.0);
    for (int i = 0; i < 500; ++i) {
        const double a1 = temp(rng), a2 = temp(rng), ambient = temp(rng);
        const double c = shift(rng);
        REQUIRE(classify_sample(a1, a2, ambient, 2.0) ==
                classify_sample(a1 + c, a2 + c, ambient + c, 2.0));
    }
}

TEST_CASE("smooth with window 1 is the identity") {
    std::mt19937_64 rng(22);
    const auto labels = random_labels(rng, 200);
    REQUIRE(smooth(labels, 1) == labels);
}

TEST_CASE("smooth flips an isolated dissenter") {
    using enum Label;
    const std::vector<Label> in = {Sleeping, Sleeping, Daily, Sleeping, Sleeping};
    REQUIRE(smooth(in, 5) ==
            std::vector<Label>{Sleeping, Sleeping, Sleeping, Sleeping, Sleeping});
}

TEST_CASE("smooth preserves clean transitions") {
    using enum Label;
    const std::vector<Label> in = {Sleeping, Sleeping, Sleeping, Sleeping, Daily,
                                   Daily,    Daily,    Daily,    Daily};
    REQUIRE(smooth(in, 5) == in);
}

TEST_CASE("smooth never moves Missing and never invents labels") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const auto in = random_labels(rng, 300);
        const auto out = smooth(in, 5);
        REQUIRE(out.size() == in.size());
        std::set<Label> present_in(in.begin(), in.end());
        for (std::size_t i = 0; i < in.size(); ++i) {
            if (in[i] == Label::Missing) REQUIRE(out[i] == Label::Missing);
            if (out[i] == Label::Missing) REQUIRE(in[i] == Label::Missing);
            REQUIRE(present_in.count(out[i]) == 1);
        }
        std::set<Label> present_out(out.begin(), out.end());
        REQUIRE(present_out.size() <= present_in.size());
    }
}

TEST_CASE("smooth rejects even windows") {
    REQUIRE_THROWS_AS(smooth(std::vector<Label>{Label::Daily}, 4), std::invalid_argument);
}

TEST_CASE("segment produces maximal runs that tile the timeline") {
    using enum Label;
    const auto tl = tl_of({Sleeping, Sleeping, Daily, Daily, Daily, NoActivity});
    const auto segs = segment(tl);
    REQUIRE(segs.size() == 3);
    REQUIRE(segs[0].label == Sleeping);
    REQUIRE(segs[0].start == 0);
    REQUIRE(segs[0].minutes() == 2.0);
    REQUIRE(segs[1].label == Daily);
    REQUIRE(segs[1].minutes() == 3.0);
    REQUIRE(segs[2].label == NoActivity);
    REQUIRE(segs[2].minutes() == 1.0);

    std::int64_t total = 0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        REQUIRE(segs[i].duration > 0);
        if (i > 0) {
            REQUIRE(segs[i].label != segs[i - 1].label);
            REQUIRE(segs[i].start == segs[i - 1].end());
        }
        total += segs[i].duration;
    }
    REQUIRE(total == 6 * 60);
}

TEST_CASE("a constant timeline is one segment") {
    const auto segs = segment(tl_of(std::vector<Label>(100, Label::Sleeping)));
    REQUIRE(segs.size() == 1);
    REQUIRE(segs[0].minutes() == 100.0);
}

TEST_CASE("expanding segments reproduces the label list exactly") {
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 20; ++trial) {
        const auto tl = tl_of(random_labels(rng, 500));
        const auto back = expand(segment(tl), tl.period);
        REQUIRE(back.labels == tl.labels);
        REQUIRE(back.start == tl.start);
    }
}

TEST_CASE("ambient series tracks the trailing background median") {
    ActivityArrays arrays;
    arrays.sleeping = {ActivityClass::Sleeping, 0, 60, {}};
    arrays.daily = {ActivityClass::Daily, 0, 60, {}};
    arrays.background = {ActivityClass::NoActivity, 0, 60, {}};
    for (int i = 0; i < 120; ++i) {
        arrays.sleeping.values.push_back(22.0);
        arrays.daily.values.push_back(22.0);
        arrays.background.values.push_back(i < 60 ? 20.0 : 24.0);
    }
    MonitoringConfig cfg;
    const auto amb = ambient_series(arrays, cfg);
    REQUIRE(amb.size() == 120);
    REQUIRE(amb[0] == 20.0);
    REQUIRE(amb[59] == 20.0);
    // after the step, the window straddles both levels until it fills up
    REQUIRE(amb[119] == 24.0);
    REQUIRE(amb[60] == 20.0);  // 59 old samples vs 1 new; median stays low
}

TEST_CASE("ambient series falls back to the configured constant") {
    ActivityArrays arrays;
    arrays.sleeping = {ActivityClass::Sleeping, 0, 60, {std::nullopt, 30.0}};
    arrays.daily = {ActivityClass::Daily, 0, 60, {std::nullopt, 22.0}};
    arrays.background = {ActivityClass::NoActivity, 0, 60, {std::nullopt, std::nullopt}};
    MonitoringConfig cfg;
    cfg.ambient_baseline = 21.5;
    const auto amb = ambient_series(arrays, cfg);
    REQUIRE(amb[0] == 21.5);
    REQUIRE(amb[1] == 21.5);
}

TEST_CASE("classify_timeline marks Missing exactly where arrays are absent") {
    ActivityArrays arrays;
    arrays.sleeping = {ActivityClass::Sleeping, 0, 60, {31.0, std::nullopt, 22.0}};
    arrays.daily = {ActivityClass::Daily, 0, 60, {22.0, std::nullopt, 30.0}};
    arrays.background = {ActivityClass::NoActivity, 0, 60, {22.0, std::nullopt, 22.0}};
    MonitoringConfig cfg;
    const auto tl = classify_timeline(arrays, cfg);
    REQUIRE(tl.labels ==
            std::vector<Label>{Label::Sleeping, Label::Missing, Label::Daily});
}

TEST_CASE("timeline csv round-trips") {
    using enum Label;
    const auto tl = tl_of({Sleeping, Daily, Missing, NoActivity, Daily});
    std::ostringstream os;
    write_timeline_csv(os, tl);
    std::istringstream is(os.str());
    const auto back = read_timeline_csv(is);
    REQUIRE(back.labels == tl.labels);
    REQUIRE(back.start == tl.start);
    REQUIRE(back.period == tl.period);
}

TEST_CASE("segments csv lists label, start and duration") {
    using enum Label;
    const auto segs = segment(tl_of({Sleeping, Sleeping, Daily}));
    std::ostringstream os;
    write_segments_csv(os, segs);
    REQUIRE(os.str() ==
            "label,start,duration_min\n"
            "sleeping,1970-01-01T00:00:00Z,2.00\n"
            "daily,1970-01-01T00:02:00Z,1.00\n");
}
