#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>

#include <arpa/inet.h>
#include <fcntl.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include "tadl/wire.hpp"

namespace tadl {

/// One direction of an unreliable datagram link. Datagrams may be dropped,
/// duplicated or reordered, never silently corrupted (the CRC catches that).
class DatagramChannel {
  public:
    virtual ~DatagramChannel() = default;
    virtual void send(const Bytes& datagram) = 0;
    /// non-blocking; nullopt when nothing is pending
    virtual std::optional<Bytes> receive() = 0;
};

struct FaultModel {
    double loss = 0.0;       // independent drop probability per send
    double duplicate = 0.0;  // probability a sent datagram is queued twice
    double reorder = 0.0;    // probability a datagram is swapped with the previous one
};

/// In-process lossy link between two endpoints, deterministic for a seed.
class SimulatedLink {
  public:
    explicit SimulatedLink(std::uint64_t seed, FaultModel a_to_b = {}, FaultModel b_to_a = {})
        : rng_(seed ? seed : 0x9E3779B97F4A7C15ull),
          a_(*this, q_ab_, q_ba_, a_to_b),
          b_(*this, q_ba_, q_ab_, b_to_a) {}

    DatagramChannel& endpoint_a() { return a_; }
    DatagramChannel& endpoint_b() { return b_; }

    std::size_t in_flight() const { return q_ab_.size() + q_ba_.size(); }

  private:
    // splitmix64; portable and plenty for a fault model
    double next_unit() {
        rng_ += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = rng_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        z ^= z >> 31;
        return static_cast<double>(z >> 11) * 0x1.0p-53;
    }

    class Endpoint : public DatagramChannel {
      public:
        Endpoint(SimulatedLink& link, std::deque<Bytes>& out, std::deque<Bytes>& in,
                 FaultModel faults)
            : link_(link), out_(out), in_(in), faults_(faults) {}

        void send(const Bytes& datagram) override {
            if (link_.next_unit() < faults_.loss) return;
            out_.push_back(datagram);
            if (faults_.duplicate > 0 && link_.next_unit() < faults_.duplicate)
                out_.push_back(datagram);
            if (faults_.reorder > 0 && out_.size() >= 2 &&
                link_.next_unit() < faults_.reorder)
                std::swap(out_[out_.size() - 1], out_[out_.size() - 2]);
        }

        std::optional<Bytes> receive() override {
            if (in_.empty()) return std::nullopt;
            Bytes b = std::move(in_.front());
            in_.pop_front();
            return b;
        }

      private:
        SimulatedLink& link_;
        std::deque<Bytes>& out_;
        std::deque<Bytes>& in_;
        FaultModel faults_;
    };

    std::uint64_t rng_;
    std::deque<Bytes> q_ab_;
    std::deque<Bytes> q_ba_;
    Endpoint a_;
    Endpoint b_;
};

struct ChannelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// UDP binding: one wire message per datagram. A node endpoint is created
/// with a destination; a server endpoint binds a port and replies to
/// whichever peer sent the last datagram (single-node deployment).
class UdpChannel : public DatagramChannel {
  public:
    static UdpChannel connect(const std::string& host, std::uint16_t port) {
        UdpChannel c;
        c.peer_.sin_family = AF_INET;
        c.peer_.sin_port = htons(port);
        if (inet_pton(AF_INET, host.c_str(), &c.peer_.sin_addr) != 1)
            throw ChannelError("bad address: " + host);
        c.have_peer_ = true;
        c.open_socket(0);
        return c;
    }

    static UdpChannel listen(std::uint16_t port) {
        UdpChannel c;
        c.open_socket(port);
        return c;
    }

    UdpChannel(UdpChannel&& other) noexcept { *this = std::move(other); }
    UdpChannel& operator=(UdpChannel&& other) noexcept {
        if (this != &other) {
            close_socket();
            fd_ = other.fd_;
            peer_ = other.peer_;
            have_peer_ = other.have_peer_;
            other.fd_ = -1;
        }
        return *this;
    }
    UdpChannel(const UdpChannel&) = delete;
    UdpChannel& operator=(const UdpChannel&) = delete;
    ~UdpChannel() override { close_socket(); }

    void send(const Bytes& datagram) override {
        if (!have_peer_) return;  // nobody to talk to yet
        ::sendto(fd_, datagram.data(), datagram.size(), 0,
                 reinterpret_cast<const sockaddr*>(&peer_), sizeof(peer_));
    }

    std::optional<Bytes> receive() override {
        Bytes buf(2048);
        sockaddr_in from{};
        socklen_t from_len = sizeof(from);
        const ssize_t n = ::recvfrom(fd_, buf.data(), buf.size(), MSG_DONTWAIT,
                                     reinterpret_cast<sockaddr*>(&from), &from_len);
        if (n < 0) return std::nullopt;
        peer_ = from;
        have_peer_ = true;
        buf.resize(static_cast<std::size_t>(n));
        return buf;
    }

    /// block up to timeout_ms for readability (event-loop helper)
    bool wait_readable(int timeout_ms) const {
        fd_set rfds;
        FD_ZERO(&rfds);
        FD_SET(fd_, &rfds);
        timeval tv{timeout_ms / 1000, (timeout_ms % 1000) * 1000};
        return ::select(fd_ + 1, &rfds, nullptr, nullptr, &tv) > 0;
    }

  private:
    UdpChannel() = default;

    void open_socket(std::uint16_t bind_port) {
        fd_ = ::socket(AF_INET, SOCK_DGRAM, 0);
        if (fd_ < 0) throw ChannelError("cannot create UDP socket");
        sockaddr_in addr{};
        addr.sin_family = AF_INET;
        addr.sin_addr.s_addr = htonl(INADDR_ANY);
        addr.sin_port = htons(bind_port);
        if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
            close_socket();
            throw ChannelError("cannot bind UDP port " + std::to_string(bind_port));
        }
    }

    void close_socket() {
        if (fd_ >= 0) ::close(fd_);
        fd_ = -1;
    }

    int fd_ = -1;
    sockaddr_in peer_{};
    bool have_peer_ = false;
};

}  // namespace tadl
