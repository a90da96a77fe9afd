#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coord/model.hpp"
#include "coord/rng.hpp"
#include "coord/scenario.hpp"

namespace coord {

// The four experiment arms: fixed-rate state sharing, event-based
// communication, and event-based with point-Voronoi or ELVD corrections.
enum class ExperimentMode { FixedRate, EventBased, EventVD, EventELVD };
inline constexpr ExperimentMode kAllModes[] = {ExperimentMode::FixedRate,
                                               ExperimentMode::EventBased, ExperimentMode::EventVD,
                                               ExperimentMode::EventELVD};

const char* to_string(ExperimentMode mode);
std::optional<ExperimentMode> parse_mode(const std::string& name);

struct OpponentState {
    Point2 anchor;
    double axis_theta = 0.0;
    double interest_length = 0.0;
    double patrol_amplitude = 0.0;
    double patrol_period = 1.0;
    double patrol_phase = 0.0;
    Point2 centroid;
    Point2 velocity;
};

struct GroundTruthAgent {
    AgentPose pose;
    Point2 target;     // actuation goal set by the coordination layer
    int role = -1;     // task id the agent believes it holds
};

// Deterministic ground-truth world state.
struct GroundTruth {
    std::vector<GroundTruthAgent> agents;
    std::vector<OpponentState> opponents;
    Point2 ball_position;
    Point2 ball_velocity;
    double time = 0.0;
    double kick_ready_at = 0.0;    // possession kicks allowed from here on
    double forced_kick_at = 0.0;   // a kick happens at this time regardless
};

GroundTruth make_ground_truth(const ScenarioConfig& config);

// One tick of world dynamics: ball friction and border bounces, seeded
// kicks (possession-triggered or forced), sinusoidal opponent patrol
// confined to the area of interest, and capped-speed agent steering that
// stops short of other entities.
GroundTruth step_world(const GroundTruth& gt, double dt, Rng& rng, const ScenarioConfig& config);

// Range- and FOV-limited noisy sensing with misses and false positives.
ObservationSet sense(const GroundTruth& gt, int agent_index, Rng& rng,
                     const ScenarioConfig& config);

struct RoleTableRow {
    int tick = 0;
    double time = 0.0;
    std::vector<int> roles;  // per agent, task id or -1
};

struct RoleMetrics {
    int task_id = -1;
    std::string name;
    double overlap_seconds = 0.0;
    double overlaps_per_minute = 0.0;
};

struct MetricsRecord {
    ExperimentMode mode = ExperimentMode::FixedRate;
    std::uint64_t seed = 0;
    double match_length = 0.0;
    double tick = 0.0;
    int team_size = 0;
    std::vector<RoleMetrics> roles;       // priority order
    std::vector<RoleTableRow> role_table;
    int packets_attempted = 0;
    int packets_accepted = 0;
    int packets_rejected_budget = 0;
    int copies_enqueued = 0;
    int copies_dropped = 0;
    int copies_delivered = 0;
    int decode_failures = 0;
    int assignment_switches = 0;
};

// Per-role overlap time: dt summed over ticks where at least `threshold`
// agents hold the same role, plus the per-minute rate.
std::vector<RoleMetrics> role_overlap_metric(const std::vector<RoleTableRow>& table, double dt,
                                             int threshold, std::span<const Task> tasks,
                                             double match_length);

struct PacketTraceEntry {
    bool delivered = false;  // false: send record, true: delivery record
    double sent_at = 0.0;
    double delivered_at = 0.0;
    int sender = -1;
    int recipient = -1;  // -1 for send records
    std::string hex;
};

// Runs one full match; pure function of (config, mode, seed). The
// optional trace collects one entry per accepted send and per delivery.
MetricsRecord run_match(const ScenarioConfig& config, ExperimentMode mode, std::uint64_t seed,
                        std::vector<PacketTraceEntry>* trace = nullptr);

struct ModeSummaryRow {
    int task_id = -1;
    std::string role;
    ExperimentMode mode = ExperimentMode::FixedRate;
    double mean_overlap_per_minute = 0.0;
    double stddev_overlap_per_minute = 0.0;
};

struct CompareSummary {
    std::vector<ModeSummaryRow> rows;  // role-major (priority order), mode-minor
    double striker_event_mean = 0.0;   // EventBased mean on the priority-0 role
    double striker_elvd_mean = 0.0;    // EventELVD mean on the priority-0 role
    double striker_reduction_percent = 0.0;
};

// All four modes over the given seeds. Runs are independent and may
// execute in parallel; aggregation order is canonical (seed, then mode).
CompareSummary compare_modes(const ScenarioConfig& config, std::span<const std::uint64_t> seeds);

}  // namespace coord
