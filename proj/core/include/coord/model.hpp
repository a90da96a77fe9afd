#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "coord/point.hpp"

namespace coord {

// Tracked ball state. last_observed_position keeps the filtered position
// at the previous observation so velocity can be re-estimated by finite
// differences when the next one arrives.
struct BallEstimate {
    Point2 position;
    Point2 velocity;
    Mat2 covariance = Mat2::identity(1.0);  // position covariance, m^2
    double confidence = 0.0;                // [0, 1]
    double last_observed = -1.0;            // sim time, -1 when never observed
    Point2 last_observed_position;

    bool operator==(const BallEstimate&) const = default;
};

// Tracked obstacle with an oriented area of interest: a segment of length
// interest_length starting at the last observed centroid (anchor) along
// axis_direction. Unobserved prediction is confined to that segment.
struct ObstacleEstimate {
    Point2 centroid;
    Point2 velocity;
    Point2 axis_direction{1.0, 0.0};  // unit vector
    double interest_length = 0.0;     // meters
    double confidence = 0.0;          // [0, 1]
    double last_observed = -1.0;
    Point2 anchor;                    // centroid at last observation
    int id = -1;

    bool operator==(const ObstacleEstimate&) const = default;
};

struct AgentPose {
    Point2 position;
    double heading = 0.0;  // radians, (-pi, pi]
    double confidence = 0.0;

    bool operator==(const AgentPose&) const = default;
};

// An agent's instantaneous belief about the world.
struct LocalModel {
    AgentPose self;
    BallEstimate ball;
    std::vector<ObstacleEstimate> obstacles;
    double timestamp = 0.0;
    int next_track_id = 0;

    bool operator==(const LocalModel&) const = default;
};

// What an agent believes a specific teammate believes; advanced by
// prediction between events.
struct TeammateLocalModel {
    int teammate_id = -1;
    LocalModel model;
    double last_event_time = -1.0;

    bool operator==(const TeammateLocalModel&) const = default;
};

// Fused team-level estimate each agent reconstructs locally.
struct DistributedWorldModel {
    BallEstimate ball;
    std::vector<ObstacleEstimate> obstacles;              // clustered, eps-separated
    std::vector<std::pair<int, AgentPose>> agents;        // sorted by agent id
    double timestamp = 0.0;

    bool operator==(const DistributedWorldModel&) const = default;

    const AgentPose* agent_pose(int id) const {
        for (const auto& [aid, pose] : agents) {
            if (aid == id) return &pose;
        }
        return nullptr;
    }
};

struct ObstacleObservation {
    Point2 position;
    std::optional<double> axis_theta;  // observed area-of-interest direction
};

// One agent's sensor output for one tick.
struct ObservationSet {
    std::optional<Point2> ball;
    std::vector<ObstacleObservation> obstacles;
    std::optional<AgentPose> self_pose;
};

// Every tunable of the belief layer. Defaults keep a 20-minute,
// 1200-packet match feasible.
struct WorldModelParams {
    double friction = 0.4;               // ball deceleration, m/s^2
    double process_noise = 0.05;         // covariance growth, m^2/s
    double confidence_decay = 0.1;       // 1/s
    double confidence_refresh = 0.5;     // pull toward 1 on observation
    double gate_radius = 1.0;            // obstacle association gate, m
    double obstacle_gain = 0.5;          // correction blend for matched tracks
    double axis_gain = 0.3;              // axis blend for observed directions
    double initial_track_confidence = 0.5;
    double track_drop_confidence = 0.05;
    double default_interest_length = 1.2;  // m, interest length is not sensed
    double observation_sigma = 0.15;       // ball measurement noise, m
    double event_covariance = 0.09;        // covariance assigned to event ball data, m^2
    double dbscan_eps = 0.8;               // m
    int dbscan_min_pts = 1;
    double outlier_sigma = 3.0;          // ball fusion outlier threshold
    double theta_lost = 0.3;             // DWM ball confidence for BallFound/BallLost
    double d_pose = 0.5;                 // pose deviation triggering SelfStateChanged, m
    double r_alert = 2.0;                // obstacle-near-ball alert radius, m
    double event_cooldown = 1.0;         // per-kind, s
    double budget_reserve = 0.1;         // fraction of the nominal send rate kept back

    bool operator==(const WorldModelParams&) const = default;
};

}  // namespace coord
