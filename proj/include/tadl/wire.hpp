#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>
#include <variant>
#include <vector>

#include "tadl/core.hpp"

namespace tadl {

using Bytes = std::vector<std::uint8_t>;

// CRC-32 (IEEE 802.3, reflected, poly 0xEDB88320), standard check value:
// crc32("123456789") == 0xCBF43926.
inline std::uint32_t crc32(const std::uint8_t* data, std::size_t len) {
    static const auto table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    std::uint32_t crc = 0xFFFFFFFFu;
    for (std::size_t i = 0; i < len; ++i)
        crc = table[(crc ^ data[i]) & 0xFFu] ^ (crc >> 8);
    return crc ^ 0xFFFFFFFFu;
}

inline std::uint32_t crc32(const Bytes& b) { return crc32(b.data(), b.size()); }

inline constexpr std::array<std::uint8_t, 4> kWireMagic = {'T', 'A', 'D', 'L'};
inline constexpr std::uint8_t kWireVersion = 1;
inline constexpr std::uint8_t kMsgFrame = 0;
inline constexpr std::uint8_t kMsgAck = 1;

// magic(4) version(1) type(1) seq(4) timestamp(8) rows(1) cols(1)
// payload(192 x int16 centi-degC) crc(4), all little-endian
inline constexpr std::size_t kFrameMessageSize = 4 + 1 + 1 + 4 + 8 + 1 + 1 + 2 * kPixelCount + 4;
// magic(4) version(1) type(1) seq(4) crc(4)
inline constexpr std::size_t kAckMessageSize = 4 + 1 + 1 + 4 + 4;
static_assert(kFrameMessageSize == 408);
static_assert(kAckMessageSize == 14);

struct FrameMessage {
    std::uint32_t seq = 0;
    ThermalFrame frame;
};

struct AckMessage {
    std::uint32_t seq = 0;
};

enum class DecodeError {
    BadMagic,
    BadVersion,
    BadLength,
    BadCrc,
};

inline const char* decode_error_name(DecodeError e) {
    switch (e) {
        case DecodeError::BadMagic: return "BadMagic";
        case DecodeError::BadVersion: return "BadVersion";
        case DecodeError::BadLength: return "BadLength";
        case DecodeError::BadCrc: return "BadCrc";
    }
    return "?";
}

// decoded message or the first failed check
using DecodeResult = std::variant<FrameMessage, AckMessage, DecodeError>;

namespace detail {

inline void put_u32(Bytes& b, std::uint32_t v) {
    b.push_back(static_cast<std::uint8_t>(v));
    b.push_back(static_cast<std::uint8_t>(v >> 8));
    b.push_back(static_cast<std::uint8_t>(v >> 16));
    b.push_back(static_cast<std::uint8_t>(v >> 24));
}

inline void put_i64(Bytes& b, std::int64_t v) {
    const auto u = static_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) b.push_back(static_cast<std::uint8_t>(u >> (8 * i)));
}

inline std::uint32_t get_u32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) |
           (static_cast<std::uint32_t>(p[3]) << 24);
}

inline std::int64_t get_i64(const std::uint8_t* p) {
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return static_cast<std::int64_t>(u);
}

}  // namespace detail

/// Temperatures travel as int16 centi-degrees, rounded half away from zero,
/// so the wire round-trips to exactly +-0.01 degC.
inline std::int16_t to_centi(double deg_c) {
    return static_cast<std::int16_t>(std::lround(deg_c * 100.0));
}

inline double from_centi(std::int16_t centi) { return centi / 100.0; }

inline Bytes encode_frame_message(const ThermalFrame& frame, std::uint32_t seq) {
    if (frame.pixels.size() != static_cast<std::size_t>(kPixelCount))
        throw std::invalid_argument("encode: frame has wrong pixel count");
    Bytes b;
    b.reserve(kFrameMessageSize);
    b.insert(b.end(), kWireMagic.begin(), kWireMagic.end());
    b.push_back(kWireVersion);
    b.push_back(kMsgFrame);
    detail::put_u32(b, seq);
    detail::put_i64(b, frame.timestamp);
    b.push_back(static_cast<std::uint8_t>(kRows));
    b.push_back(static_cast<std::uint8_t>(kCols));
    for (double p : frame.pixels) {
        const auto c = static_cast<std::uint16_t>(to_centi(p));
        b.push_back(static_cast<std::uint8_t>(c));
        b.push_back(static_cast<std::uint8_t>(c >> 8));
    }
    detail::put_u32(b, crc32(b));
    return b;
}

inline Bytes encode_ack(std::uint32_t seq) {
    Bytes b;
    b.reserve(kAckMessageSize);
    b.insert(b.end(), kWireMagic.begin(), kWireMagic.end());
    b.push_back(kWireVersion);
    b.push_back(kMsgAck);
    detail::put_u32(b, seq);
    detail::put_u32(b, crc32(b));
    return b;
}

inline DecodeResult decode_message(const Bytes& b) {
    if (b.size() < kWireMagic.size()) return DecodeError::BadLength;
    if (!std::equal(kWireMagic.begin(), kWireMagic.end(), b.begin()))
        return DecodeError::BadMagic;
    if (b.size() < 6) return DecodeError::BadLength;
    if (b[4] != kWireVersion) return DecodeError::BadVersion;
    const std::uint8_t type = b[5];
    const std::size_t expect = type == kMsgFrame   ? kFrameMessageSize
                               : type == kMsgAck   ? kAckMessageSize
                                                   : 0;
    if (expect == 0 || b.size() != expect) return DecodeError::BadLength;
    const std::uint32_t want = detail::get_u32(b.data() + b.size() - 4);
    if (crc32(b.data(), b.size() - 4) != want) return DecodeError::BadCrc;

    if (type == kMsgAck) return AckMessage{detail::get_u32(b.data() + 6)};

    FrameMessage msg;
    msg.seq = detail::get_u32(b.data() + 6);
    msg.frame.timestamp = detail::get_i64(b.data() + 10);
    // rows/cols bytes (18, 19) are covered by the CRC; geometry is fixed
    msg.frame.pixels.reserve(kPixelCount);
    const std::uint8_t* p = b.data() + 20;
    for (int i = 0; i < kPixelCount; ++i, p += 2) {
        const auto raw = static_cast<std::uint16_t>(p[0] | (p[1] << 8));
        msg.frame.pixels.push_back(from_centi(static_cast<std::int16_t>(raw)));
    }
    return msg;
}

}  // namespace tadl
