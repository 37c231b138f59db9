#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "tadl/imaging.hpp"

#include "helpers.hpp"

using namespace tadl;

namespace {

// independent re-implementation of the corner-aligned bilinear mapping,
// kept deliberately separate from the library path
double oracle_bilinear(const ThermalFrame& f, double row, double col) {
    const int r0 = std::clamp(static_cast<int>(std::floor(row)), 0, kRows - 2);
    const int c0 = std::clamp(static_cast<int>(std::floor(col)), 0, kCols - 2);
    const double fr = row - r0;
    const double fc = col - c0;
    return f.at(r0, c0) * (1 - fr) * (1 - fc) + f.at(r0, c0 + 1) * (1 - fr) * fc +
           f.at(r0 + 1, c0) * fr * (1 - fc) + f.at(r0 + 1, c0 + 1) * fr * fc;
}

}  // namespace

TEST_CASE("interpolating a constant frame yields a constant image") {
    const auto img = interpolate(make_frame(0, 25.0));
    REQUIRE(img.rows == 128);
    REQUIRE(img.cols == 176);
    REQUIRE(img.pixels.size() == 128u * 176u);
    for (double p : img.pixels) REQUIRE(p == 25.0);
}

TEST_CASE("interpolation of a left/right split is bounded and monotone") {
    ThermalFrame f;
    for (int r = 0; r < kRows; ++r)
        for (int c = 0; c < kCols; ++c) f.pixels.push_back(c < kCols / 2 ? 20.0 : 30.0);
    const auto img = interpolate(f);
    for (double p : img.pixels) {
        REQUIRE(p >= 20.0);
        REQUIRE(p <= 30.0);
    }
    for (int r = 0; r < img.rows; ++r)
        for (int c = 1; c < img.cols; ++c) REQUIRE(img.at(r, c) >= img.at(r, c - 1));
}

TEST_CASE("interpolation is bounded by source min/max on random frames") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const auto f = testutil::random_frame(rng, i);
        const auto s = frame_stats(f);
        const auto img = interpolate(f);
        for (double p : img.pixels) {
            REQUIRE(p >= s.min - 1e-12);
            REQUIRE(p <= s.max + 1e-12);
        }
    }
}

TEST_CASE("the interpolant reproduces all 192 source-aligned positions") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 50; ++i) {
        const auto f = testutil::random_frame(rng, i);
        for (int r = 0; r < kRows; ++r)
            for (int c = 0; c < kCols; ++c)
                REQUIRE_THAT(bilinear_sample(f, r, c),
                             Catch::Matchers::WithinAbs(f.at(r, c), 1e-9));
    }
}

TEST_CASE("destination pixels that land on source grid points match exactly") {
    // with the corner-aligned mapping, rows {0,127} land on source rows
    // {0,11} and columns {0,35,70,105,140,175} on source columns 0,3,..,15
    std::mt19937_64 rng(13);
    const auto f = testutil::random_frame(rng, 0);
    const auto img = interpolate(f);
    for (int dr : {0, 127}) {
        for (int dc = 0; dc <= 175; dc += 35) {
            const int sr = dr == 0 ? 0 : 11;
            const int sc = dc * (kCols - 1) / 175;
            REQUIRE_THAT(img.at(dr, dc), Catch::Matchers::WithinAbs(f.at(sr, sc), 1e-9));
        }
    }
}

TEST_CASE("interpolation agrees with an independent oracle everywhere") {
    std::mt19937_64 rng(14);
    const auto f = testutil::random_frame(rng, 0);
    const auto img = interpolate(f);
    const double row_scale = static_cast<double>(kRows - 1) / (kInterpRows - 1);
    const double col_scale = static_cast<double>(kCols - 1) / (kInterpCols - 1);
    for (int r = 0; r < img.rows; r += 7) {
        for (int c = 0; c < img.cols; c += 5) {
            REQUIRE_THAT(img.at(r, c),
                         Catch::Matchers::WithinAbs(
                             oracle_bilinear(f, r * row_scale, c * col_scale), 1e-9));
        }
    }
}

TEST_CASE("interpolation is pointwise linear in the source") {
    std::mt19937_64 rng(15);
    const auto a = testutil::random_frame(rng, 0);
    const auto b = testutil::random_frame(rng, 0);
    const double alpha = 0.3, beta = 1.7;
    ThermalFrame mix;
    for (int i = 0; i < kPixelCount; ++i)
        mix.pixels.push_back(alpha * a.pixels[i] + beta * b.pixels[i]);
    const auto ia = interpolate(a);
    const auto ib = interpolate(b);
    const auto im = interpolate(mix);
    for (std::size_t i = 0; i < im.pixels.size(); ++i)
        REQUIRE_THAT(im.pixels[i], Catch::Matchers::WithinAbs(
                                       alpha * ia.pixels[i] + beta * ib.pixels[i], 1e-9));
}

TEST_CASE("locate_person: nothing above threshold returns none") {
    REQUIRE(!locate_person(make_frame(0, 22.0), 22.0, 2.0).has_value());
}

TEST_CASE("locate_person: single hot pixel is its own centroid") {
    ThermalFrame f = make_frame(0, 22.0);
    f.at(6, 10) = 33.0;
    const auto loc = locate_person(f, 22.0, 2.0);
    REQUIRE(loc.has_value());
    REQUIRE(loc->row == 6.0);
    REQUIRE(loc->col == 10.0);
    REQUIRE(loc->peak_temp == 33.0);
    REQUIRE(loc->support == 1);
}

TEST_CASE("locate_person centroid tracks a Gaussian blob") {
    const auto f = testutil::blob_frame(0, 22.0, 33.0, 6.0, 10.0, 1.5);
    const auto loc = locate_person(f, 22.0, 2.0);
    REQUIRE(loc.has_value());

    // brute-force weighted centroid over all 192 pixels
    double wsum = 0, rsum = 0, csum = 0;
    for (int r = 0; r < kRows; ++r) {
        for (int c = 0; c < kCols; ++c) {
            if (f.at(r, c) < 24.0) continue;
            wsum += f.at(r, c);
            rsum += f.at(r, c) * r;
            csum += f.at(r, c) * c;
        }
    }
    REQUIRE_THAT(loc->row, Catch::Matchers::WithinAbs(rsum / wsum, 1e-12));
    REQUIRE_THAT(loc->col, Catch::Matchers::WithinAbs(csum / wsum, 1e-12));
    REQUIRE(std::abs(loc->row - 6.0) < 0.5);
    REQUIRE(std::abs(loc->col - 10.0) < 0.5);
}

TEST_CASE("locate_person centroid shifts with a whole-pixel translation") {
    const auto a = testutil::blob_frame(0, 22.0, 33.0, 4.0, 6.0, 1.2);
    const auto b = testutil::blob_frame(0, 22.0, 33.0, 5.0, 7.0, 1.2);
    const auto la = locate_person(a, 22.0, 2.0);
    const auto lb = locate_person(b, 22.0, 2.0);
    REQUIRE(la.has_value());
    REQUIRE(lb.has_value());
    REQUIRE_THAT(lb->row - la->row, Catch::Matchers::WithinAbs(1.0, 1e-9));
    REQUIRE_THAT(lb->col - la->col, Catch::Matchers::WithinAbs(1.0, 1e-9));
}

TEST_CASE("thermal_spread: single hot pixel has zero radius") {
    ThermalFrame f = make_frame(0, 22.0);
    f.at(3, 3) = 30.0;
    const auto sp = thermal_spread(f, 22.0, 2.0);
    REQUIRE(sp.has_value());
    REQUIRE(sp->area == 1);
    REQUIRE(sp->rms_radius == 0.0);
}

TEST_CASE("thermal_spread: uniform frame has no spread") {
    REQUIRE(!thermal_spread(make_frame(0, 22.0), 22.0, 2.0).has_value());
}

TEST_CASE("thermal_spread grows with blob sigma") {
    // second-moment oracle: the footprint's RMS radius must increase
    // strictly along the sigma grid
    double prev = -1.0;
    for (double sigma : {0.5, 1.0, 1.5, 2.0, 2.5}) {
        const auto f = testutil::blob_frame(0, 22.0, 33.0, 6.0, 8.0, sigma);
        const auto sp = thermal_spread(f, 22.0, 2.0);
        REQUIRE(sp.has_value());
        REQUIRE(sp->rms_radius > prev);
        prev = sp->rms_radius;
    }
}

TEST_CASE("write_pgm emits a parsable grayscale image") {
    testutil::TempDir dir("pgm");
    const auto img = interpolate(testutil::blob_frame(0, 22.0, 33.0, 6.0, 8.0, 2.0));
    const auto path = dir.file("frame.pgm");
    write_pgm(path, img);
    std::ifstream in(path, std::ios::binary);
    std::string magic;
    int w = 0, h = 0, maxval = 0;
    in >> magic >> w >> h >> maxval;
    REQUIRE(magic == "P5");
    REQUIRE(w == 176);
    REQUIRE(h == 128);
    REQUIRE(maxval == 255);
    in.get();  // single whitespace after the header
    std::vector<char> data(static_cast<std::size_t>(w) * h);
    in.read(data.data(), static_cast<std::streamsize>(data.size()));
    REQUIRE(in.gcount() == static_cast<std::streamsize>(data.size()));
}
