#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "coord/model.hpp"

namespace coord {

enum class EventKind : std::uint8_t {
    BallFound = 0,
    BallLost = 1,
    SelfStateChanged = 2,
    RoleCommitment = 3,
    ObstacleAlert = 4,
};
inline constexpr int kEventKindCount = 5;

const char* to_string(EventKind kind);

// Obstacle entry as carried on the wire: position, axis angle, interest
// length and confidence, plus the sender-local track id.
struct PayloadObstacle {
    Point2 position;
    double axis_theta = 0.0;
    double interest_length = 0.0;
    double confidence = 0.0;
    int id = 0;
};

// Maximum obstacle entries per packet; higher-confidence entries win.
inline constexpr int kMaxPayloadObstacles = 9;

// An asynchronous broadcast carrying a compact summary of the sender's
// local model. Every kind shares the same payload so any received event
// refreshes the sender's teammate model.
struct Event {
    EventKind kind = EventKind::SelfStateChanged;
    int sender = -1;
    double timestamp = 0.0;
    AgentPose pose;
    Point2 ball_position;
    Point2 ball_velocity;
    double ball_confidence = 0.0;
    std::vector<PayloadObstacle> obstacles;
    bool truncated = false;  // obstacle list cut to kMaxPayloadObstacles
    bool saturated = false;  // some field clipped to its fixed-point range
};

// Builds an event summarizing lm; obstacle entries are the (at most)
// kMaxPayloadObstacles highest-confidence tracks.
Event make_event(EventKind kind, int sender, double timestamp, const LocalModel& lm);

// Stateful per-agent event trigger. Decides when a broadcast is worth one
// of the team's packets: salient world changes, rate-limited per kind and
// gated by the remaining prorated budget.
class EventDetector {
public:
    EventDetector(int agent_id, const WorldModelParams& params);

    struct TickInput {
        const LocalModel* lm = nullptr;
        const DistributedWorldModel* dwm = nullptr;  // previous tick's fusion
        bool ball_observed = false;                  // fresh ball observation this tick
        std::optional<int> committed_role;           // locally computed role, task id
        double now = 0.0;
        int remaining_budget = 0;
        int total_budget = 1;
        double match_length = 1.0;
    };

    // Candidate events for this tick, in a fixed kind order. The caller
    // must report which were actually accepted by the budget via
    // note_sent so cooldowns and reference states only advance on real
    // transmissions.
    std::vector<Event> step(const TickInput& in);
    void note_sent(const Event& event);

private:
    bool cooldown_ok(EventKind kind, double now) const;

    int agent_id_;
    WorldModelParams params_;
    std::array<double, kEventKindCount> last_sent_;
    std::optional<AgentPose> last_broadcast_pose_;
    std::optional<int> last_committed_role_;
    std::optional<int> pending_role_;
    std::optional<Point2> pending_alert_;
    double prev_own_ball_confidence_ = 0.0;
    std::vector<Point2> alerted_obstacles_;
};

}  // namespace coord
