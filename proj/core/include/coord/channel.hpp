#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "coord/packet.hpp"
#include "coord/rng.hpp"

namespace coord {

// Simulated broadcast medium parameters. Latencies are seconds.
struct ChannelConfig {
    double loss_probability = 0.1;
    double latency_mean = 0.1;
    double latency_jitter = 0.05;  // uniform, +/- around the mean
    std::uint64_t seed = 0;

    bool operator==(const ChannelConfig&) const = default;
};

struct Delivery {
    int recipient = -1;
    int sender = -1;
    double sent_at = 0.0;
    double delivered_at = 0.0;
    Packet packet;
};

// Lossy, latent broadcast channel owned by the simulation loop. Every
// accepted packet fans out to all teammates; each copy is independently
// dropped or delayed. Identical (seed, send trace) produces an identical
// delivery trace.
class Channel {
public:
    struct Stats {
        int packets_broadcast = 0;
        int copies_enqueued = 0;
        int copies_dropped = 0;
        int copies_delivered = 0;
    };

    Channel() : Channel(ChannelConfig{}, 1) {}
    Channel(const ChannelConfig& config, int team_size)
        : config_(config), team_size_(team_size), rng_(Rng::fork(config.seed, 0x6368616eULL)) {}

    void broadcast(const Packet& packet, int sender, double now) {
        ++stats_.packets_broadcast;
        for (int recipient = 0; recipient < team_size_; ++recipient) {
            if (recipient == sender) continue;
            ++stats_.copies_enqueued;
            if (rng_.bernoulli(config_.loss_probability)) {
                ++stats_.copies_dropped;
                continue;
            }
            double latency = config_.latency_mean;
            if (config_.latency_jitter > 0.0) {
                latency += rng_.uniform(-config_.latency_jitter, config_.latency_jitter);
            }
            if (latency < 0.0) latency = 0.0;
            in_flight_.push_back({recipient, sender, now, now + latency, packet, seq_++});
        }
    }

    // Pops everything due by `now`, ordered by delivery time with
    // sender-id (then enqueue order) tie-breaks.
    std::vector<Delivery> step(double now) {
        std::vector<InFlight> due;
        std::erase_if(in_flight_, [&](const InFlight& f) {
            if (f.delivery.delivered_at <= now) {
                due.push_back(f);
                return true;
            }
            return false;
        });
        std::sort(due.begin(), due.end(), [](const InFlight& a, const InFlight& b) {
            if (a.delivery.delivered_at != b.delivery.delivered_at) {
                return a.delivery.delivered_at < b.delivery.delivered_at;
            }
            if (a.delivery.sender != b.delivery.sender) return a.delivery.sender < b.delivery.sender;
            return a.seq < b.seq;
        });
        std::vector<Delivery> out;
        out.reserve(due.size());
        for (const InFlight& f : due) {
            out.push_back(f.delivery);
            ++stats_.copies_delivered;
        }
        return out;
    }

    std::size_t in_flight() const { return in_flight_.size(); }
    const Stats& stats() const { return stats_; }

private:
    struct InFlight {
        Delivery delivery;
        std::uint64_t seq;

        InFlight(int recipient, int sender, double sent_at, double delivered_at, const Packet& p,
                 std::uint64_t s)
            : delivery{recipient, sender, sent_at, delivered_at, p}, seq(s) {}
    };

    ChannelConfig config_;
    int team_size_;
    Rng rng_;
    std::uint64_t seq_ = 0;
    std::vector<InFlight> in_flight_;
    Stats stats_;
};

}  // namespace coord
