#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coord/model.hpp"
#include "coord/point.hpp"
#include "coord/voronoi.hpp"

namespace coord {

struct Task {
    int id = -1;
    Point2 target;
    int priority_rank = 0;  // 0 = highest priority, unique within a set
    std::string kind;

    bool operator==(const Task&) const = default;
};

enum class ContextMode { Offensive, Defensive, Contested };

const char* to_string(ContextMode mode);

// Utility weights for one context mode.
struct ContextParams {
    double w_distance = 1.0;  // distance-kernel weight
    double w_ball = 2.0;      // ball-proximity weight (priority-0 task)
    double w_context = 0.3;   // half-of-field bonus weight
    double sigma_distance = 3.0;
    double sigma_ball = 2.0;

    bool operator==(const ContextParams&) const = default;
};

struct Context {
    ContextMode mode = ContextMode::Contested;
    ContextParams params;
};

// Agent-task utilities: N rows (agents, ordered by id) x M columns
// (tasks). Entries are non-negative and finite.
struct UtilityMatrix {
    std::vector<int> agents;
    std::vector<int> tasks;
    std::vector<double> values;  // row-major

    double at(int row, int col) const { return values[static_cast<std::size_t>(row) * tasks.size() + col]; }
    double& at(int row, int col) { return values[static_cast<std::size_t>(row) * tasks.size() + col]; }
    int rows() const { return static_cast<int>(agents.size()); }
    int cols() const { return static_cast<int>(tasks.size()); }
};

// Perfect matching agents -> tasks.
struct Assignment {
    std::vector<std::pair<int, int>> pairs;  // (agent_id, task_id)

    std::optional<int> task_of(int agent_id) const {
        for (const auto& [a, t] : pairs) {
            if (a == agent_id) return t;
        }
        return std::nullopt;
    }
};

// Diagram flavor used by the coordination pipeline.
enum class DiagramMode { None, PointVoronoi, Elvd };

// Everything the assignment pipeline needs beyond the world model.
struct CoordinationConfig {
    DiagramMode diagram_mode = DiagramMode::None;
    BoundingBox field{{-4.5, -3.0}, {4.5, 3.0}};
    double elvd_resolution = 10.0;       // cells/m for the match-time diagrams
    double alpha = 0.5;                  // weight-correction falloff, 1/m
    double beta = 0.5;                   // task offset cap toward nodes, m
    double lambda = 0.5;                 // utility blend of the normalized correction
    bool pin_priority_zero = true;       // keep the highest-priority task through filtering
    bool dynamic_striker_target = true;  // priority-0 target follows the fused ball
    std::vector<Point2> fallback_anchors{{0.0, 0.0}, {-2.5, 0.0}, {2.5, 0.0}};
    ContextParams offensive;
    ContextParams defensive;
    ContextParams contested;
    double context_confidence = 0.5;     // ball confidence needed to leave Contested

    bool operator==(const CoordinationConfig&) const = default;
};

// Deterministic context rule: Offensive if the fused ball sits in the
// opponent half (+x) with enough confidence, Defensive for the own half,
// Contested otherwise.
Context context_select(const DistributedWorldModel& dwm, const CoordinationConfig& config);

// Utility of every (agent, task) pair under the given context:
//   w_d * exp(-||pos_i - target_j|| / sigma_d)
// + w_b * exp(-||pos_i - ball||   / sigma_b)   (priority-0 task only)
// + w_c * [task target in the context's preferred half]
UtilityMatrix compute_uem(const DistributedWorldModel& dwm, std::span<const Task> tasks,
                          const Context& ctx, const CoordinationConfig& config);

// The n tasks whose targets are closest to a diagram node, ties broken by
// priority rank then id; result sorted by priority. When the diagram has
// no nodes the fallback anchor points stand in for them.
std::vector<Task> filter_tasks(std::span<const Task> tasks, const VoronoiDiagram* diagram, int n,
                               std::span<const Point2> fallback_anchors);

// Moves each task target up to beta toward its nearest node and scales
// every utility column by (1 + lambda * What(target)), What being the
// weight correction normalized to [0, 1]. Entries never go negative and
// targets never move past their node.
std::pair<UtilityMatrix, std::vector<Task>> refine_uem(const UtilityMatrix& uem,
                                                       std::span<const Task> tasks,
                                                       const VoronoiDiagram* diagram,
                                                       std::span<const ObstacleEstimate> obstacles,
                                                       double alpha, double beta, double lambda);

// Priority-greedy matching: tasks in priority order each take the
// unassigned agent of maximal utility, ties to the lowest agent index.
// Requires a square matrix (ContractError otherwise) and tasks sorted by
// priority rank.
Assignment assign(const UtilityMatrix& uem, std::span<const Task> tasks);

struct CoordinationResult {
    Assignment assignment;
    Context context;
    std::vector<Task> tasks;  // filtered, refined targets, priority order
    std::optional<VoronoiDiagram> diagram;
};

// Full pipeline: context -> UEM over all tasks -> diagram (per mode) ->
// N-of-M filter -> refinement -> greedy assignment. Pure function of its
// inputs.
CoordinationResult coordinate(const DistributedWorldModel& dwm, std::span<const Task> all_tasks,
                              const CoordinationConfig& config);

}  // namespace coord
