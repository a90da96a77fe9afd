#include "coord/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coord/errors.hpp"
#include "coord/weight.hpp"

namespace coord {

namespace {

std::vector<Task> sorted_by_priority(std::span<const Task> tasks) {
    std::vector<Task> out(tasks.begin(), tasks.end());
    std::sort(out.begin(), out.end(), [](const Task& a, const Task& b) {
        if (a.priority_rank != b.priority_rank) return a.priority_rank < b.priority_rank;
        return a.id < b.id;
    });
    return out;
}

double nearest_reference_distance(Point2 target, const VoronoiDiagram* diagram,
                                  std::span<const Point2> fallback_anchors) {
    double best = std::numeric_limits<double>::infinity();
    if (diagram && !diagram->nodes.empty()) {
        for (const VoronoiNode& n : diagram->nodes) best = std::min(best, distance(target, n.position));
        return best;
    }
    for (const Point2& a : fallback_anchors) best = std::min(best, distance(target, a));
    return std::isfinite(best) ? best : 0.0;
}

}  // namespace

const char* to_string(ContextMode mode) {
    switch (mode) {
        case ContextMode::Offensive: return "Offensive";
        case ContextMode::Defensive: return "Defensive";
        case ContextMode::Contested: return "Contested";
    }
    return "Unknown";
}

Context context_select(const DistributedWorldModel& dwm, const CoordinationConfig& config) {
    Context ctx;
    if (dwm.ball.confidence >= config.context_confidence) {
        if (dwm.ball.position.x > 0.0) {
            ctx.mode = ContextMode::Offensive;
            ctx.params = config.offensive;
            return ctx;
        }
        if (dwm.ball.position.x < 0.0) {
            ctx.mode = ContextMode::Defensive;
            ctx.params = config.defensive;
            return ctx;
        }
    }
    ctx.mode = ContextMode::Contested;
    ctx.params = config.contested;
    return ctx;
}

UtilityMatrix compute_uem(const DistributedWorldModel& dwm, std::span<const Task> tasks,
                          const Context& ctx, const CoordinationConfig& config) {
    (void)config;
    if (dwm.agents.empty()) throw DegenerateInputError("compute_uem: no agents in world model");
    if (tasks.empty()) throw DegenerateInputError("compute_uem: no tasks");

    UtilityMatrix uem;
    uem.agents.reserve(dwm.agents.size());
    for (const auto& [id, pose] : dwm.agents) uem.agents.push_back(id);
    uem.tasks.reserve(tasks.size());
    for (const Task& t : tasks) uem.tasks.push_back(t.id);
    uem.values.assign(dwm.agents.size() * tasks.size(), 0.0);

    const bool ball_known = dwm.ball.confidence > 0.0;
    for (int i = 0; i < uem.rows(); ++i) {
        const Point2 pos = dwm.agents[i].second.position;
        for (int j = 0; j < uem.cols(); ++j) {
            const Task& task = tasks[j];
            double u = ctx.params.w_distance *
                       std::exp(-distance(pos, task.target) / ctx.params.sigma_distance);
            if (task.priority_rank == 0 && ball_known) {
                u += ctx.params.w_ball *
                     std::exp(-distance(pos, dwm.ball.position) / ctx.params.sigma_ball);
            }
            const bool preferred_half = (ctx.mode == ContextMode::Offensive && task.target.x > 0.0) ||
                                        (ctx.mode == ContextMode::Defensive && task.target.x < 0.0);
            if (preferred_half) u += ctx.params.w_context;
            uem.at(i, j) = u;
        }
    }
    return uem;
}

std::vector<Task> filter_tasks(std::span<const Task> tasks, const VoronoiDiagram* diagram, int n,
                               std::span<const Point2> fallback_anchors) {
    std::vector<Task> ordered = sorted_by_priority(tasks);
    if (n >= static_cast<int>(ordered.size())) return ordered;

    struct Ranked {
        double dist;
        Task task;
    };
    std::vector<Ranked> ranked;
    ranked.reserve(ordered.size());
    for (const Task& t : ordered) {
        ranked.push_back({nearest_reference_distance(t.target, diagram, fallback_anchors), t});
    }
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        if (a.task.priority_rank != b.task.priority_rank) return a.task.priority_rank < b.task.priority_rank;
        return a.task.id < b.task.id;
    });

    std::vector<Task> selected;
    selected.reserve(n);
    for (int k = 0; k < n; ++k) selected.push_back(ranked[k].task);
    return sorted_by_priority(selected);
}

std::pair<UtilityMatrix, std::vector<Task>> refine_uem(const UtilityMatrix& uem,
                                                       std::span<const Task> tasks,
                                                       const VoronoiDiagram* diagram,
                                                       std::span<const ObstacleEstimate> obstacles,
                                                       double alpha, double beta, double lambda) {
    if (uem.cols() != static_cast<int>(tasks.size())) {
        throw ContractError("refine_uem: utility matrix columns do not match the task list");
    }

    UtilityMatrix refined = uem;
    std::vector<Task> moved(tasks.begin(), tasks.end());

    const bool have_nodes = diagram && !diagram->nodes.empty();
    for (std::size_t j = 0; j < moved.size(); ++j) {
        if (have_nodes && beta > 0.0) {
            const auto node = diagram->nearest_node(moved[j].target);
            const Point2 node_pos = diagram->nodes[*node].position;
            const double d = distance(moved[j].target, node_pos);
            if (d > 0.0) {
                moved[j].target += (node_pos - moved[j].target) * (std::min(beta, d) / d);
            }
        }
        if (lambda != 0.0 && !obstacles.empty()) {
            const double normalizer = 2.0 * static_cast<double>(obstacles.size());
            const double w_hat = weight_correction(moved[j].target, obstacles, alpha) / normalizer;
            const double factor = std::max(0.0, 1.0 + lambda * w_hat);
            for (int i = 0; i < refined.rows(); ++i) {
                refined.at(i, static_cast<int>(j)) *= factor;
            }
        }
    }
    return {std::move(refined), std::move(moved)};
}

Assignment assign(const UtilityMatrix& uem, std::span<const Task> tasks) {
    if (uem.rows() != uem.cols()) {
        throw ContractError("assign: utility matrix must be square");
    }
    if (uem.cols() != static_cast<int>(tasks.size())) {
        throw ContractError("assign: task list does not match matrix columns");
    }

    const int n = uem.rows();
    std::vector<bool> taken(n, false);
    Assignment result;
    result.pairs.reserve(n);
    for (int j = 0; j < n; ++j) {  // tasks arrive in priority order
        int best_row = -1;
        double best_u = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            if (taken[i]) continue;
            if (uem.at(i, j) > best_u) {
                best_u = uem.at(i, j);
                best_row = i;
            }
        }
        taken[best_row] = true;
        result.pairs.emplace_back(uem.agents[best_row], tasks[j].id);
    }
    std::sort(result.pairs.begin(), result.pairs.end());
    return result;
}

CoordinationResult coordinate(const DistributedWorldModel& dwm, std::span<const Task> all_tasks,
                              const CoordinationConfig& config) {
    CoordinationResult result;
    result.context = context_select(dwm, config);

    std::vector<Task> tasks = sorted_by_priority(all_tasks);
    if (config.dynamic_striker_target && !tasks.empty() && tasks.front().priority_rank == 0 &&
        dwm.ball.confidence > 0.0) {
        tasks.front().target = config.field.clamp(dwm.ball.position);
    }

    UtilityMatrix uem = compute_uem(dwm, tasks, result.context, config);

    // diagram per mode; fewer than two usable sites means no diagram and
    // the landmark anchors drive the filter instead
    if (config.diagram_mode == DiagramMode::PointVoronoi) {
        std::vector<Point2> sites;
        for (const ObstacleEstimate& o : dwm.obstacles) {
            if (config.field.contains(o.centroid)) sites.push_back(o.centroid);
        }
        if (sites.size() >= 2) result.diagram = point_voronoi(sites, config.field);
    } else if (config.diagram_mode == DiagramMode::Elvd) {
        std::vector<EllipticalSite> sites;
        for (const ObstacleEstimate& o : dwm.obstacles) {
            if (!config.field.contains(o.centroid)) continue;
            const Point2 f1 = o.centroid + o.axis_direction * o.interest_length;
            sites.push_back({o.centroid, config.field.clamp(f1), o.id});
        }
        if (sites.size() >= 2) {
            result.diagram = elvd(sites, config.field, config.elvd_resolution);
        }
    }
    const VoronoiDiagram* diagram = result.diagram ? &*result.diagram : nullptr;

    const int n = std::min(static_cast<int>(dwm.agents.size()), static_cast<int>(tasks.size()));
    std::vector<Task> filtered;
    if (config.pin_priority_zero && !tasks.empty() && n >= 1) {
        std::vector<Task> rest(tasks.begin() + 1, tasks.end());
        filtered = filter_tasks(rest, diagram, n - 1, config.fallback_anchors);
        filtered.insert(filtered.begin(), tasks.front());
    } else {
        filtered = filter_tasks(tasks, diagram, n, config.fallback_anchors);
    }

    // restrict the utility matrix to the filtered columns
    UtilityMatrix square;
    square.agents = uem.agents;
    for (const Task& t : filtered) square.tasks.push_back(t.id);
    square.values.resize(static_cast<std::size_t>(uem.rows()) * filtered.size());
    for (std::size_t j = 0; j < filtered.size(); ++j) {
        int src = -1;
        for (int c = 0; c < uem.cols(); ++c) {
            if (uem.tasks[c] == filtered[j].id) {
                src = c;
                break;
            }
        }
        for (int i = 0; i < uem.rows(); ++i) {
            square.values[static_cast<std::size_t>(i) * filtered.size() + j] = uem.at(i, src);
        }
    }

    const double beta = config.diagram_mode == DiagramMode::None ? 0.0 : config.beta;
    const double lambda = config.diagram_mode == DiagramMode::Elvd ? config.lambda : 0.0;
    auto [refined, refined_tasks] =
        refine_uem(square, filtered, diagram, dwm.obstacles, config.alpha, beta, lambda);

    result.assignment = assign(refined, refined_tasks);
    result.tasks = std::move(refined_tasks);
    return result;
}

}  // namespace coord
