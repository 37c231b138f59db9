#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "tadl/channel.hpp"
#include "tadl/journal.hpp"
#include "tadl/wire.hpp"

namespace tadl {

struct NodeConfig {
    std::int64_t initial_timeout_ms = 2000;  // retransmit timeout
    std::int64_t max_timeout_ms = 60000;     // backoff cap
};

/// Edge-node sender with confirmable-message semantics: journal first, then
/// transmit; retransmit unacked entries oldest-first with exponential
/// backoff until a matching ack arrives. Driven by an explicit clock so the
/// whole exchange is deterministic under test.
class EdgeNode {
  public:
    EdgeNode(Journal& journal, DatagramChannel& channel, NodeConfig cfg = {})
        : journal_(journal), channel_(channel), cfg_(cfg) {
        // replayed unacked entries are due immediately
        for (std::uint32_t seq : journal_.unacked())
            pending_[seq] = PendingState{0, cfg_.initial_timeout_ms};
        if (journal_.size() > 0) next_seq_ = journal_.max_seq() + 1;
    }

    /// Journal the frame (durably) and schedule its first transmission.
    std::uint32_t capture(const ThermalFrame& frame) {
        const std::uint32_t seq = next_seq_++;
        journal_.append(seq, encode_frame_message(frame, seq));
        pending_[seq] = PendingState{0, cfg_.initial_timeout_ms};
        return seq;
    }

    /// Process incoming acks and (re)transmit every due unacked entry.
    void poll(std::int64_t now_ms) {
        while (auto datagram = channel_.receive()) {
            auto res = decode_message(*datagram);
            if (auto* ack = std::get_if<AckMessage>(&res)) {
                journal_.mark_acked(ack->seq);
                pending_.erase(ack->seq);
            }
            // anything else on the return path is ignored
        }
        for (auto& [seq, state] : pending_) {  // map order = oldest first
            if (state.deadline_ms > now_ms) continue;
            channel_.send(journal_.message(seq));
            ++transmissions_;
            state.deadline_ms = now_ms + state.timeout_ms;
            state.timeout_ms = std::min(state.timeout_ms * 2, cfg_.max_timeout_ms);
        }
    }

    bool drained() const { return pending_.empty(); }
    std::size_t pending_count() const { return pending_.size(); }
    std::uint64_t transmissions() const { return transmissions_; }
    std::uint32_t next_seq() const { return next_seq_; }

  private:
    struct PendingState {
        std::int64_t deadline_ms = 0;
        std::int64_t timeout_ms = 0;
    };

    Journal& journal_;
    DatagramChannel& channel_;
    NodeConfig cfg_;
    std::map<std::uint32_t, PendingState> pending_;
    std::uint32_t next_seq_ = 0;
    std::uint64_t transmissions_ = 0;
};

}  // namespace tadl
