#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coord/assignment.hpp"
#include "coord/channel.hpp"
#include "coord/model.hpp"
#include "coord/point.hpp"

namespace coord {

// One patrolling opponent: anchored to its area-of-interest segment and
// oscillating along it.
struct OpponentConfig {
    Point2 anchor;
    double axis_theta = 0.0;       // radians
    double interest_length = 1.5;  // meters
    double patrol_amplitude = -1.0;  // meters; <0 means "use interest_length"
    double patrol_period = 8.0;      // seconds
    double patrol_phase = 0.0;       // radians

    bool operator==(const OpponentConfig&) const = default;
};

struct SensorConfig {
    double range = 6.0;                  // meters
    double fov = 2.0943951023931953;     // radians (120 deg)
    double sigma = 0.15;                 // base position noise, m
    double sigma_distance_factor = 1.0;  // noise grows to sigma*(1+factor) at full range
    double p_miss = 0.1;                 // chance a visible ball goes unseen
    double p_false_positive = 0.02;      // chance per tick of one phantom obstacle
    double pose_sigma = 0.05;            // self-localization noise, m
    double heading_sigma = 0.02;         // radians
    double p_axis = 0.7;                 // chance an obstacle's axis is estimated
    double axis_sigma = 0.15;            // radians

    bool operator==(const SensorConfig&) const = default;
};

// Ground-truth motion tunables.
struct MotionConfig {
    double agent_speed = 0.5;              // m/s
    double agent_turn_rate = 2.0;          // rad/s
    double collision_stop_distance = 0.3;  // m
    double ball_restitution = 0.8;         // border bounce energy factor
    double kick_speed_min = 1.0;           // m/s
    double kick_speed_max = 2.5;
    double kick_interval_min = 2.0;        // s between possession kicks
    double kick_interval_max = 6.0;
    double kick_radius = 0.4;              // agent-within triggers a kick
    double force_kick_interval = 8.0;      // s; keeps the ball moving regardless

    bool operator==(const MotionConfig&) const = default;
};

// Complete experiment description. Every field has a default, so an empty
// file is a valid scenario.
struct ScenarioConfig {
    BoundingBox field{{-4.5, -3.0}, {4.5, 3.0}};
    int team_size = 7;
    std::vector<Task> tasks;               // defaults to the 10-role set
    std::vector<OpponentConfig> opponents; // defaults to 5 patrol opponents
    std::vector<AgentPose> initial_poses;  // defaults to a spread formation
    Point2 ball_start;
    ChannelConfig channel;
    int budget = 1200;
    double match_length = 1200.0;  // seconds
    double tick = 0.05;            // seconds
    double coordination_period = 0.25;
    int overlap_threshold = 2;     // agents on one role that count as overlap
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    SensorConfig sensor;
    MotionConfig motion;
    WorldModelParams world_model;
    CoordinationConfig coordination;

    bool operator==(const ScenarioConfig&) const = default;
};

// Fills tasks/opponents/poses that were left empty and validates every
// constraint; throws ConfigError with the offending key or rule.
void finalize_config(ScenarioConfig& config);

// The built-in defaults (finalized).
ScenarioConfig default_config();

// 2-minute CI variant: budget and match length shrink together so the
// nominal packet rate is unchanged.
void apply_desk_preset(ScenarioConfig& config);

// Reads a JSON scenario file. Unknown keys are rejected by name; missing
// keys fall back to defaults; an empty file means "all defaults". Throws
// ConfigError on parse or validation problems.
ScenarioConfig parse_config(const std::string& path);
ScenarioConfig parse_config_text(const std::string& text, const std::string& origin = "<string>");

// Canonical serialization (sorted keys); parse(serialize(c)) == c.
std::string serialize_config(const ScenarioConfig& config);

// FNV-1a over the canonical serialization; manifest/reproducibility key.
std::uint64_t config_hash(const ScenarioConfig& config);

}  // namespace coord
