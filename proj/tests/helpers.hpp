#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "tadl/core.hpp"

namespace testutil {

inline tadl::ThermalFrame random_frame(std::mt19937_64& rng, tadl::UnixSeconds ts,
                                       double lo = 15.0, double hi = 35.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    tadl::ThermalFrame f;
    f.timestamp = ts;
    f.pixels.reserve(tadl::kPixelCount);
    for (int i = 0; i < tadl::kPixelCount; ++i) f.pixels.push_back(dist(rng));
    return f;
}

/// ambient plane with a Gaussian blob, no noise
inline tadl::ThermalFrame blob_frame(tadl::UnixSeconds ts, double ambient, double peak,
                                     double row, double col, double sigma) {
    tadl::ThermalFrame f = tadl::make_frame(ts, ambient);
    for (int r = 0; r < tadl::kRows; ++r) {
        for (int c = 0; c < tadl::kCols; ++c) {
            const double d2 = (r - row) * (r - row) + (c - col) * (c - col);
            f.at(r, c) += (peak - ambient) * std::exp(-d2 / (2.0 * sigma * sigma));
        }
    }
    return f;
}

/// unique scratch directory under the system temp dir, wiped on destruction
class TempDir {
  public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<unsigned> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("tadl_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }
    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
};

}  // namespace testutil
