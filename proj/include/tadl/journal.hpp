#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "tadl/wire.hpp"

namespace tadl {

struct JournalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct JournalFullError : JournalError {
    JournalFullError() : JournalError("journal full of unacked entries") {}
};

/// Durable store-and-forward log on the edge node: every captured frame is
/// appended (and flushed) before its first transmission, so a crash loses
/// nothing. The journal file is the concatenation of wire frame messages; a
/// sidecar index (`<path>.ack`, one u32 LE seq per entry) records acks.
/// Reopening replays both files and reconstructs exactly the unacked set.
class Journal {
  public:
    explicit Journal(std::string path, std::size_t max_entries = 0)
        : path_(std::move(path)), ack_path_(path_ + ".ack"), max_entries_(max_entries) {
        replay();
        data_.open(path_, std::ios::binary | std::ios::app);
        if (!data_) throw JournalError("cannot open journal: " + path_);
        acks_.open(ack_path_, std::ios::binary | std::ios::app);
        if (!acks_) throw JournalError("cannot open ack index: " + ack_path_);
    }

    /// Append one frame message. Returns only after the bytes are flushed.
    void append(std::uint32_t seq, const Bytes& message) {
        if (!entries_.empty() && seq <= entries_.rbegin()->first)
            throw JournalError("journal seq must be strictly increasing");
        if (max_entries_ > 0 && entries_.size() >= max_entries_) {
            prune_acked();
            if (entries_.size() >= max_entries_) throw JournalFullError();
        }
        data_.write(reinterpret_cast<const char*>(message.data()),
                    static_cast<std::streamsize>(message.size()));
        data_.flush();
        if (!data_) throw JournalError("journal write failed");
        entries_[seq] = Entry{message, false};
    }

    void mark_acked(std::uint32_t seq) {
        auto it = entries_.find(seq);
        if (it == entries_.end() || it->second.acked) return;
        it->second.acked = true;
        std::uint8_t raw[4] = {static_cast<std::uint8_t>(seq),
                               static_cast<std::uint8_t>(seq >> 8),
                               static_cast<std::uint8_t>(seq >> 16),
                               static_cast<std::uint8_t>(seq >> 24)};
        acks_.write(reinterpret_cast<const char*>(raw), 4);
        acks_.flush();
    }

    bool is_acked(std::uint32_t seq) const {
        auto it = entries_.find(seq);
        return it != entries_.end() && it->second.acked;
    }

    /// unacked entries, oldest first
    std::vector<std::uint32_t> unacked() const {
        std::vector<std::uint32_t> out;
        for (const auto& [seq, e] : entries_) {
            if (!e.acked) out.push_back(seq);
        }
        return out;
    }

    const Bytes& message(std::uint32_t seq) const {
        auto it = entries_.find(seq);
        if (it == entries_.end()) throw JournalError("unknown journal seq");
        return it->second.message;
    }

    std::size_t size() const { return entries_.size(); }

    /// largest journaled seq; meaningless when empty
    std::uint32_t max_seq() const {
        return entries_.empty() ? 0 : entries_.rbegin()->first;
    }

    std::size_t acked_count() const {
        std::size_t n = 0;
        for (const auto& [seq, e] : entries_) n += e.acked ? 1 : 0;
        return n;
    }

  private:
    struct Entry {
        Bytes message;
        bool acked = false;
    };

    void replay() {
        std::ifstream in(path_, std::ios::binary);
        if (in) {
            Bytes buf(kFrameMessageSize);
            while (in.read(reinterpret_cast<char*>(buf.data()),
                           static_cast<std::streamsize>(buf.size()))) {
                auto res = decode_message(buf);
                auto* msg = std::get_if<FrameMessage>(&res);
                if (!msg) throw JournalError("corrupt journal entry in " + path_);
                entries_[msg->seq] = Entry{buf, false};
            }
            if (in.gcount() != 0) throw JournalError("truncated journal entry in " + path_);
        }
        std::ifstream ain(ack_path_, std::ios::binary);
        if (ain) {
            std::uint8_t raw[4];
            while (ain.read(reinterpret_cast<char*>(raw), 4)) {
                const std::uint32_t seq = detail::get_u32(raw);
                auto it = entries_.find(seq);
                if (it != entries_.end()) it->second.acked = true;
            }
        }
    }

    // rewrite both files keeping unacked entries plus the newest acked ones
    void prune_acked() {
        if (acked_count() == 0) return;
        // drop oldest acked entries until a quarter of the capacity is free
        std::size_t to_free = std::max<std::size_t>(1, max_entries_ / 4);
        for (auto it = entries_.begin(); it != entries_.end() && to_free > 0;) {
            if (it->second.acked) {
                it = entries_.erase(it);
                --to_free;
            } else {
                ++it;
            }
        }
        data_.close();
        acks_.close();
        const std::string tmp_data = path_ + ".tmp";
        const std::string tmp_acks = ack_path_ + ".tmp";
        {
            std::ofstream d(tmp_data, std::ios::binary | std::ios::trunc);
            std::ofstream a(tmp_acks, std::ios::binary | std::ios::trunc);
            for (const auto& [seq, e] : entries_) {
                d.write(reinterpret_cast<const char*>(e.message.data()),
                        static_cast<std::streamsize>(e.message.size()));
                if (e.acked) {
                    std::uint8_t raw[4] = {static_cast<std::uint8_t>(seq),
                                           static_cast<std::uint8_t>(seq >> 8),
                                           static_cast<std::uint8_t>(seq >> 16),
                                           static_cast<std::uint8_t>(seq >> 24)};
                    a.write(reinterpret_cast<const char*>(raw), 4);
                }
            }
        }
        std::filesystem::rename(tmp_data, path_);
        std::filesystem::rename(tmp_acks, ack_path_);
        data_.open(path_, std::ios::binary | std::ios::app);
        acks_.open(ack_path_, std::ios::binary | std::ios::app);
        if (!data_ || !acks_) throw JournalError("journal prune failed");
    }

    std::string path_;
    std::string ack_path_;
    std::size_t max_entries_;
    std::map<std::uint32_t, Entry> entries_;
    std::ofstream data_;
    std::ofstream acks_;
};

}  // namespace tadl
