#include "coord/events.hpp"

#include <algorithm>
#include <cmath>

namespace coord {

const char* to_string(EventKind kind) {
    switch (kind) {
        case EventKind::BallFound: return "BallFound";
        case EventKind::BallLost: return "BallLost";
        case EventKind::SelfStateChanged: return "SelfStateChanged";
        case EventKind::RoleCommitment: return "RoleCommitment";
        case EventKind::ObstacleAlert: return "ObstacleAlert";
    }
    return "Unknown";
}

Event make_event(EventKind kind, int sender, double timestamp, const LocalModel& lm) {
    Event e;
    e.kind = kind;
    e.sender = sender;
    e.timestamp = timestamp;
    e.pose = lm.self;
    e.ball_position = lm.ball.position;
    e.ball_velocity = lm.ball.velocity;
    e.ball_confidence = lm.ball.confidence;

    std::vector<int> order(lm.obstacles.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (lm.obstacles[a].confidence != lm.obstacles[b].confidence) {
            return lm.obstacles[a].confidence > lm.obstacles[b].confidence;
        }
        return lm.obstacles[a].id < lm.obstacles[b].id;
    });
    if (order.size() > static_cast<std::size_t>(kMaxPayloadObstacles)) {
        order.resize(kMaxPayloadObstacles);
        e.truncated = true;
    }
    for (int i : order) {
        const ObstacleEstimate& o = lm.obstacles[i];
        e.obstacles.push_back({o.centroid, std::atan2(o.axis_direction.y, o.axis_direction.x),
                               o.interest_length, o.confidence, o.id});
    }
    return e;
}

EventDetector::EventDetector(int agent_id, const WorldModelParams& params)
    : agent_id_(agent_id), params_(params) {
    last_sent_.fill(-1e18);
}

bool EventDetector::cooldown_ok(EventKind kind, double now) const {
    return now - last_sent_[static_cast<int>(kind)] >= params_.event_cooldown;
}

std::vector<Event> EventDetector::step(const TickInput& in) {
    std::vector<Event> out;
    const LocalModel& lm = *in.lm;
    const DistributedWorldModel& dwm = *in.dwm;

    const double own_ball_conf = lm.ball.confidence;
    const double prev_conf = prev_own_ball_confidence_;
    prev_own_ball_confidence_ = own_ball_conf;

    // the first locally computed role is the shared initial assignment;
    // only changes after that are worth announcing
    const bool role_changed =
        in.committed_role && last_committed_role_ && *in.committed_role != *last_committed_role_;
    if (in.committed_role && !last_committed_role_) last_committed_role_ = in.committed_role;

    // hard budget gate plus the prorated reserve: stop volunteering
    // packets once the remaining send rate falls under the reserve
    // fraction of the nominal rate
    if (in.remaining_budget <= 0) return out;
    const double nominal_rate = static_cast<double>(in.total_budget) / in.match_length;
    const double time_left = in.match_length - in.now;
    if (time_left > 0.0) {
        const double remaining_rate = static_cast<double>(in.remaining_budget) / time_left;
        if (remaining_rate < params_.budget_reserve * nominal_rate) return out;
    }

    auto propose = [&](EventKind kind) {
        if (cooldown_ok(kind, in.now)) out.push_back(make_event(kind, agent_id_, in.now, lm));
    };

    // BallFound: we see the ball while the team-level estimate is lost
    if (in.ball_observed && dwm.ball.confidence < params_.theta_lost) {
        propose(EventKind::BallFound);
    }

    // BallLost: our own confident estimate just expired
    if (prev_conf >= params_.theta_lost && own_ball_conf < params_.theta_lost && !in.ball_observed) {
        propose(EventKind::BallLost);
    }

    // SelfStateChanged: pose drifted from what the team last heard
    if (!last_broadcast_pose_ ||
        distance(lm.self.position, last_broadcast_pose_->position) > params_.d_pose) {
        propose(EventKind::SelfStateChanged);
    }

    if (role_changed) {
        pending_role_ = in.committed_role;
        propose(EventKind::RoleCommitment);
    }

    // ObstacleAlert: a fused obstacle newly appeared near the ball
    if (dwm.ball.confidence > 0.0) {
        for (const ObstacleEstimate& o : dwm.obstacles) {
            if (distance(o.centroid, dwm.ball.position) > params_.r_alert) continue;
            bool known = false;
            for (const Point2& seen : alerted_obstacles_) {
                if (distance(seen, o.centroid) <= params_.dbscan_eps) {
                    known = true;
                    break;
                }
            }
            if (!known) {
                pending_alert_ = o.centroid;
                propose(EventKind::ObstacleAlert);
                break;
            }
        }
    }
    return out;
}

void EventDetector::note_sent(const Event& event) {
    last_sent_[static_cast<int>(event.kind)] = event.timestamp;
    last_broadcast_pose_ = event.pose;
    if (event.kind == EventKind::RoleCommitment && pending_role_) {
        last_committed_role_ = pending_role_;
        pending_role_.reset();
    }
    if (event.kind == EventKind::ObstacleAlert && pending_alert_) {
        alerted_obstacles_.push_back(*pending_alert_);
        pending_alert_.reset();
    }
}

}  // namespace coord
