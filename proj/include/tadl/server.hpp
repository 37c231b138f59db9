#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tadl/channel.hpp"
#include "tadl/core.hpp"
#include "tadl/wire.hpp"

namespace tadl {

struct StoreError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Server-side frame store: an append-only file of wire frame messages.
/// Reopening rescans the file, so deduplication survives restarts.
class FrameStore {
  public:
    explicit FrameStore(std::string path) : path_(std::move(path)) {
        std::ifstream in(path_, std::ios::binary);
        if (in) {
            Bytes buf(kFrameMessageSize);
            while (in.read(reinterpret_cast<char*>(buf.data()),
                           static_cast<std::streamsize>(buf.size()))) {
                auto res = decode_message(buf);
                auto* msg = std::get_if<FrameMessage>(&res);
                if (!msg) throw StoreError("corrupt entry in store: " + path_);
                seqs_.insert(msg->seq);
                frames_.push_back(msg->frame);
            }
            if (in.gcount() != 0) throw StoreError("truncated entry in store: " + path_);
        }
        out_.open(path_, std::ios::binary | std::ios::app);
        if (!out_) throw StoreError("cannot open store: " + path_);
    }

    bool contains(std::uint32_t seq) const { return seqs_.count(seq) != 0; }

    /// at-most-once insert; returns false for a duplicate seq
    bool insert(const FrameMessage& msg, const Bytes& wire) {
        if (!seqs_.insert(msg.seq).second) return false;
        out_.write(reinterpret_cast<const char*>(wire.data()),
                   static_cast<std::streamsize>(wire.size()));
        out_.flush();
        if (!out_) throw StoreError("store write failed: " + path_);
        frames_.push_back(msg.frame);
        return true;
    }

    const std::set<std::uint32_t>& seqs() const { return seqs_; }
    std::size_t size() const { return seqs_.size(); }

    /// frames ordered by timestamp regardless of arrival order
    std::vector<ThermalFrame> read_frames() const {
        std::vector<ThermalFrame> out = frames_;
        std::stable_sort(out.begin(), out.end(),
                         [](const ThermalFrame& a, const ThermalFrame& b) {
                             return a.timestamp < b.timestamp;
                         });
        return out;
    }

  private:
    std::string path_;
    std::set<std::uint32_t> seqs_;
    std::vector<ThermalFrame> frames_;
    std::ofstream out_;
};

/// Ingest side of the transport: verify, deduplicate, persist, ack.
/// At-least-once delivery in, exactly-once storage out. Every validly
/// decoded frame is acked, duplicates included; garbage is counted and
/// dropped without an ack.
class IngestServer {
  public:
    struct Counters {
        std::uint64_t received = 0;
        std::uint64_t stored = 0;
        std::uint64_t duplicates = 0;
        std::uint64_t decode_errors = 0;
    };

    IngestServer(FrameStore& store, DatagramChannel& channel)
        : store_(store), channel_(channel) {}

    /// drain everything currently pending on the channel
    void poll() {
        while (auto datagram = channel_.receive()) handle(*datagram);
    }

    void handle(const Bytes& datagram) {
        ++counters_.received;
        auto res = decode_message(datagram);
        if (std::holds_alternative<DecodeError>(res)) {
            ++counters_.decode_errors;
            return;
        }
        if (auto* msg = std::get_if<FrameMessage>(&res)) {
            if (store_.insert(*msg, datagram)) {
                ++counters_.stored;
            } else {
                ++counters_.duplicates;
            }
            channel_.send(encode_ack(msg->seq));
        }
        // acks arriving here are ignored; the server only receives frames
    }

    const Counters& counters() const { return counters_; }

  private:
    FrameStore& store_;
    DatagramChannel& channel_;
    Counters counters_;
};

/// Load frames from either store flavor: the binary wire-message store or
/// the canonical frame CSV, decided by sniffing the file's first bytes.
inline std::vector<ThermalFrame> load_frames_any(const std::string& path) {
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw StoreError("cannot open: " + path);
    char head[4] = {};
    probe.read(head, 4);
    const bool binary = probe.gcount() == 4 && head[0] == 'T' && head[1] == 'A' &&
                        head[2] == 'D' && head[3] == 'L';
    probe.close();
    if (binary) return FrameStore(path).read_frames();
    return read_frames_csv(path);
}

}  // namespace tadl
