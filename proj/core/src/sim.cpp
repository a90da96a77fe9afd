#include "coord/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "coord/assignment.hpp"
#include "coord/budget.hpp"
#include "coord/channel.hpp"
#include "coord/errors.hpp"
#include "coord/events.hpp"
#include "coord/packet.hpp"
#include "coord/world_model.hpp"

namespace coord {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double patrol_offset(const OpponentState& o, double t) {
    return o.patrol_amplitude * 0.5 *
           (1.0 + std::sin(kTwoPi * t / o.patrol_period + o.patrol_phase));
}

double patrol_speed(const OpponentState& o, double t) {
    return o.patrol_amplitude * 0.5 * (kTwoPi / o.patrol_period) *
           std::cos(kTwoPi * t / o.patrol_period + o.patrol_phase);
}

bool in_field_of_view(const AgentPose& pose, Point2 target, double range, double fov) {
    const Point2 rel = target - pose.position;
    const double d = rel.norm();
    if (d > range) return false;
    if (d < 1e-9) return true;
    const double bearing = wrap_angle(std::atan2(rel.y, rel.x) - pose.heading);
    return std::abs(bearing) <= fov * 0.5;
}

std::string hex_encode(const Packet& packet) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(2 * packet.raw.size());
    for (std::uint8_t b : packet.raw) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0F]);
    }
    return out;
}

}  // namespace

const char* to_string(ExperimentMode mode) {
    switch (mode) {
        case ExperimentMode::FixedRate: return "fixed-rate";
        case ExperimentMode::EventBased: return "event-based";
        case ExperimentMode::EventVD: return "event-vd";
        case ExperimentMode::EventELVD: return "event-elvd";
    }
    return "unknown";
}

std::optional<ExperimentMode> parse_mode(const std::string& name) {
    for (ExperimentMode m : kAllModes) {
        if (name == to_string(m)) return m;
    }
    return std::nullopt;
}

GroundTruth make_ground_truth(const ScenarioConfig& config) {
    GroundTruth gt;
    gt.agents.reserve(config.team_size);
    for (int i = 0; i < config.team_size; ++i) {
        GroundTruthAgent a;
        a.pose = config.initial_poses[i];
        a.target = a.pose.position;
        gt.agents.push_back(a);
    }
    gt.opponents.reserve(config.opponents.size());
    for (const OpponentConfig& oc : config.opponents) {
        OpponentState o;
        o.anchor = oc.anchor;
        o.axis_theta = oc.axis_theta;
        o.interest_length = oc.interest_length;
        o.patrol_amplitude = oc.patrol_amplitude;
        o.patrol_period = oc.patrol_period;
        o.patrol_phase = oc.patrol_phase;
        o.centroid = o.anchor + from_angle(o.axis_theta) * patrol_offset(o, 0.0);
        o.velocity = from_angle(o.axis_theta) * patrol_speed(o, 0.0);
        gt.opponents.push_back(o);
    }
    gt.ball_position = config.ball_start;
    gt.ball_velocity = {};
    gt.time = 0.0;
    gt.kick_ready_at = 0.0;
    gt.forced_kick_at = config.motion.force_kick_interval;
    return gt;
}

GroundTruth step_world(const GroundTruth& gt, double dt, Rng& rng, const ScenarioConfig& config) {
    GroundTruth next = gt;
    const double now = gt.time + dt;
    next.time = now;
    const MotionConfig& mc = config.motion;

    // --- ball: rolling friction, then border reflection ---
    {
        const double mu = config.world_model.friction;
        const double speed = next.ball_velocity.norm();
        if (speed > 0.0) {
            double travel, new_speed;
            if (mu <= 0.0) {
                travel = speed * dt;
                new_speed = speed;
            } else if (speed <= mu * dt) {
                travel = speed * speed / (2.0 * mu);
                new_speed = 0.0;
            } else {
                travel = speed * dt - 0.5 * mu * dt * dt;
                new_speed = speed - mu * dt;
            }
            const Point2 dir = next.ball_velocity / speed;
            next.ball_position += dir * travel;
            next.ball_velocity = dir * new_speed;
        }
        const BoundingBox& f = config.field;
        if (next.ball_position.x < f.min.x) {
            next.ball_position.x = f.min.x + (f.min.x - next.ball_position.x);
            next.ball_velocity.x = -next.ball_velocity.x * mc.ball_restitution;
        } else if (next.ball_position.x > f.max.x) {
            next.ball_position.x = f.max.x - (next.ball_position.x - f.max.x);
            next.ball_velocity.x = -next.ball_velocity.x * mc.ball_restitution;
        }
        if (next.ball_position.y < f.min.y) {
            next.ball_position.y = f.min.y + (f.min.y - next.ball_position.y);
            next.ball_velocity.y = -next.ball_velocity.y * mc.ball_restitution;
        } else if (next.ball_position.y > f.max.y) {
            next.ball_position.y = f.max.y - (next.ball_position.y - f.max.y);
            next.ball_velocity.y = -next.ball_velocity.y * mc.ball_restitution;
        }
        next.ball_position = f.clamp(next.ball_position);
    }

    // --- kicks: possession-triggered once the cooldown passed, or forced
    // so a stalled match still has dynamism ---
    {
        bool possession = false;
        for (const GroundTruthAgent& a : gt.agents) {
            if (distance(a.pose.position, gt.ball_position) <= mc.kick_radius) {
                possession = true;
                break;
            }
        }
        const bool forced = now >= next.forced_kick_at;
        if (forced || (possession && now >= next.kick_ready_at)) {
            const double angle = rng.uniform(0.0, kTwoPi);
            const double speed = rng.uniform(mc.kick_speed_min, mc.kick_speed_max);
            next.ball_velocity = from_angle(angle) * speed;
            next.kick_ready_at = now + rng.uniform(mc.kick_interval_min, mc.kick_interval_max);
            next.forced_kick_at = now + mc.force_kick_interval;
        }
    }

    // --- opponents: confined sinusoidal patrol along the axis ---
    for (OpponentState& o : next.opponents) {
        const Point2 axis = from_angle(o.axis_theta);
        o.centroid = o.anchor + axis * patrol_offset(o, now);
        o.velocity = axis * patrol_speed(o, now);
    }

    // --- agents: steer toward targets, stop near any entity ---
    for (std::size_t i = 0; i < next.agents.size(); ++i) {
        GroundTruthAgent& a = next.agents[i];
        const Point2 to_target = a.target - a.pose.position;
        const double d = to_target.norm();
        if (d < 1e-9) continue;

        const double desired_heading = std::atan2(to_target.y, to_target.x);
        const double dh = wrap_angle(desired_heading - a.pose.heading);
        const double max_turn = mc.agent_turn_rate * dt;
        a.pose.heading = wrap_angle(a.pose.heading + std::clamp(dh, -max_turn, max_turn));

        const double step_len = std::min(mc.agent_speed * dt, d);
        const Point2 candidate = a.pose.position + to_target * (step_len / d);

        bool blocked = false;
        for (std::size_t j = 0; j < gt.agents.size() && !blocked; ++j) {
            if (j == i) continue;
            blocked = distance(candidate, gt.agents[j].pose.position) < mc.collision_stop_distance;
        }
        for (const OpponentState& o : gt.opponents) {
            if (blocked) break;
            blocked = distance(candidate, o.centroid) < mc.collision_stop_distance;
        }
        if (!blocked && distance(candidate, gt.ball_position) < mc.collision_stop_distance) {
            blocked = true;
        }
        if (!blocked) a.pose.position = config.field.clamp(candidate);
    }
    return next;
}

ObservationSet sense(const GroundTruth& gt, int agent_index, Rng& rng,
                     const ScenarioConfig& config) {
    if (agent_index < 0 || agent_index >= static_cast<int>(gt.agents.size())) {
        throw ContractError("sense: agent index out of range");
    }
    const SensorConfig& sc = config.sensor;
    const AgentPose& true_pose = gt.agents[agent_index].pose;
    ObservationSet obs;

    auto position_noise = [&](Point2 p) {
        const double d = distance(p, true_pose.position);
        const double sigma = sc.sigma * (1.0 + sc.sigma_distance_factor * d / sc.range);
        return Point2{p.x + rng.normal(0.0, sigma), p.y + rng.normal(0.0, sigma)};
    };

    AgentPose self = true_pose;
    self.position.x += rng.normal(0.0, sc.pose_sigma);
    self.position.y += rng.normal(0.0, sc.pose_sigma);
    self.heading = wrap_angle(self.heading + rng.normal(0.0, sc.heading_sigma));
    self.confidence = 0.95;
    obs.self_pose = self;

    if (in_field_of_view(true_pose, gt.ball_position, sc.range, sc.fov) &&
        !rng.bernoulli(sc.p_miss)) {
        obs.ball = position_noise(gt.ball_position);
    }

    for (const OpponentState& o : gt.opponents) {
        if (!in_field_of_view(true_pose, o.centroid, sc.range, sc.fov)) continue;
        ObstacleObservation oo;
        oo.position = position_noise(o.centroid);
        if (rng.bernoulli(sc.p_axis)) {
            oo.axis_theta = wrap_angle(o.axis_theta + rng.normal(0.0, sc.axis_sigma));
        }
        obs.obstacles.push_back(oo);
    }

    if (rng.bernoulli(sc.p_false_positive)) {
        ObstacleObservation phantom;
        phantom.position = {rng.uniform(config.field.min.x, config.field.max.x),
                            rng.uniform(config.field.min.y, config.field.max.y)};
        obs.obstacles.push_back(phantom);
    }
    return obs;
}

std::vector<RoleMetrics> role_overlap_metric(const std::vector<RoleTableRow>& table, double dt,
                                             int threshold, std::span<const Task> tasks,
                                             double match_length) {
    std::vector<Task> ordered(tasks.begin(), tasks.end());
    std::sort(ordered.begin(), ordered.end(), [](const Task& a, const Task& b) {
        if (a.priority_rank != b.priority_rank) return a.priority_rank < b.priority_rank;
        return a.id < b.id;
    });

    std::vector<RoleMetrics> metrics;
    metrics.reserve(ordered.size());
    const double minutes = match_length / 60.0;
    for (const Task& t : ordered) {
        RoleMetrics rm;
        rm.task_id = t.id;
        rm.name = t.kind.empty() ? ("task-" + std::to_string(t.id)) : t.kind;
        for (const RoleTableRow& row : table) {
            int holders = 0;
            for (int role : row.roles) {
                if (role == t.id) ++holders;
            }
            if (holders >= threshold) rm.overlap_seconds += dt;
        }
        rm.overlaps_per_minute = minutes > 0.0 ? rm.overlap_seconds / minutes : 0.0;
        metrics.push_back(std::move(rm));
    }
    return metrics;
}

MetricsRecord run_match(const ScenarioConfig& config, ExperimentMode mode, std::uint64_t seed,
                        std::vector<PacketTraceEntry>* trace) {
    const int n = config.team_size;
    const double dt = config.tick;
    const int total_ticks = static_cast<int>(std::llround(config.match_length / dt));
    const int coord_ticks =
        std::max(1, static_cast<int>(std::llround(config.coordination_period / dt)));
    const WorldModelParams& wm = config.world_model;

    CoordinationConfig coordination = config.coordination;
    coordination.field = config.field;
    switch (mode) {
        case ExperimentMode::FixedRate:
        case ExperimentMode::EventBased: coordination.diagram_mode = DiagramMode::None; break;
        case ExperimentMode::EventVD: coordination.diagram_mode = DiagramMode::PointVoronoi; break;
        case ExperimentMode::EventELVD: coordination.diagram_mode = DiagramMode::Elvd; break;
    }

    Rng world_rng = Rng::fork(seed, 1);
    std::vector<Rng> sense_rng;
    sense_rng.reserve(n);
    for (int i = 0; i < n; ++i) sense_rng.push_back(Rng::fork(seed, 100 + i));

    ChannelConfig channel_config = config.channel;
    channel_config.seed = seed ^ 0x6368616eULL;
    Channel channel(channel_config, n);
    BudgetTracker budget(config.budget, config.match_length);

    GroundTruth gt = make_ground_truth(config);

    // initial beliefs: the kickoff formation and ball placement are known
    // to everybody, so every teammate model starts from the same state
    std::vector<LocalModel> initial(n);
    for (int i = 0; i < n; ++i) {
        LocalModel& lm = initial[i];
        lm.self = config.initial_poses[i];
        lm.ball.position = config.ball_start;
        lm.ball.velocity = {};
        lm.ball.covariance = Mat2::identity(0.01);
        lm.ball.confidence = 0.9;
        lm.ball.last_observed = 0.0;
        lm.ball.last_observed_position = config.ball_start;
        lm.timestamp = 0.0;
    }

    struct AgentRuntime {
        LocalModel lm;
        std::vector<TeammateLocalModel> tlms;  // ordered by teammate id, includes self
        DistributedWorldModel dwm;
        EventDetector detector;
        std::optional<int> role;
        std::vector<Task> tasks;  // refined tasks from the last coordination
        bool ball_observed = false;

        AgentRuntime(int id, const WorldModelParams& params) : detector(id, params) {}
    };

    std::vector<AgentRuntime> agents;
    agents.reserve(n);
    for (int i = 0; i < n; ++i) {
        AgentRuntime rt(i, wm);
        rt.lm = initial[i];
        for (int j = 0; j < n; ++j) rt.tlms.push_back({j, initial[j], -1.0});
        rt.dwm = fuse(rt.lm, i, rt.tlms, wm);
        agents.push_back(std::move(rt));
    }

    MetricsRecord metrics;
    metrics.mode = mode;
    metrics.seed = seed;
    metrics.match_length = config.match_length;
    metrics.tick = dt;
    metrics.team_size = n;
    metrics.role_table.reserve(total_ticks);

    // fixed-rate schedule: the budget spread evenly over the match,
    // senders round-robin
    const double slot_interval =
        config.budget > 0 ? config.match_length / config.budget : config.match_length;
    int next_slot = 0;

    auto send_packet = [&](const Event& event, AgentRuntime& sender_rt, double now) {
        ++metrics.packets_attempted;
        if (!budget.try_send(now)) {
            ++metrics.packets_rejected_budget;
            return false;
        }
        const Packet packet = encode_packet(event);
        channel.broadcast(packet, event.sender, now);
        ++metrics.packets_accepted;
        if (trace) trace->push_back({false, now, 0.0, event.sender, -1, hex_encode(packet)});

        // loopback: the sender's own self-model tracks exactly what the
        // team heard (quantized), keeping coordination consensus-safe
        DecodeFailure failure;
        if (auto decoded = decode_packet(packet.raw, &failure)) {
            TeammateLocalModel& self_tlm = sender_rt.tlms[event.sender];
            self_tlm = update_teammate_model(self_tlm, decoded, 0.0, wm);
        }
        return true;
    };

    for (int tick_index = 0; tick_index < total_ticks; ++tick_index) {
        const double now = (tick_index + 1) * dt;

        gt = step_world(gt, dt, world_rng, config);

        for (int i = 0; i < n; ++i) {
            const ObservationSet obs = sense(gt, i, sense_rng[i], config);
            agents[i].ball_observed = obs.ball.has_value();
            agents[i].lm = update_local(agents[i].lm, obs, dt, wm);
        }

        // teammate models advance by prediction before any event lands
        for (AgentRuntime& rt : agents) {
            for (TeammateLocalModel& tlm : rt.tlms) {
                tlm = update_teammate_model(tlm, std::nullopt, dt, wm);
            }
        }

        // --- communication ---
        const int remaining_before_tick = budget.remaining();
        if (mode == ExperimentMode::FixedRate) {
            while (next_slot < config.budget && next_slot * slot_interval <= now) {
                const int sender = next_slot % n;
                const Event event =
                    make_event(EventKind::SelfStateChanged, sender, now, agents[sender].lm);
                send_packet(event, agents[sender], now);
                ++next_slot;
            }
        } else {
            for (int i = 0; i < n; ++i) {
                EventDetector::TickInput in;
                in.lm = &agents[i].lm;
                in.dwm = &agents[i].dwm;  // previous tick's fusion
                in.ball_observed = agents[i].ball_observed;
                in.committed_role = agents[i].role;
                in.now = now;
                in.remaining_budget = remaining_before_tick;
                in.total_budget = config.budget;
                in.match_length = config.match_length;
                for (const Event& event : agents[i].detector.step(in)) {
                    if (send_packet(event, agents[i], now)) {
                        agents[i].detector.note_sent(event);
                    }
                }
            }
        }

        for (const Delivery& delivery : channel.step(now)) {
            if (trace) {
                trace->push_back({true, delivery.sent_at, delivery.delivered_at, delivery.sender,
                                  delivery.recipient, hex_encode(delivery.packet)});
            }
            DecodeFailure failure;
            const auto event = decode_packet(delivery.packet.raw, &failure);
            if (!event) {
                ++metrics.decode_failures;
                continue;
            }
            AgentRuntime& rt = agents[delivery.recipient];
            TeammateLocalModel& tlm = rt.tlms[event->sender];
            tlm = update_teammate_model(tlm, event, 0.0, wm);
        }

        for (int i = 0; i < n; ++i) {
            agents[i].dwm = fuse(agents[i].lm, i, agents[i].tlms, wm);
        }

        if (tick_index % coord_ticks == 0) {
            for (int i = 0; i < n; ++i) {
                const CoordinationResult result = coordinate(agents[i].dwm, config.tasks, coordination);
                const std::optional<int> new_role = result.assignment.task_of(i);
                if (agents[i].role && new_role && *agents[i].role != *new_role) {
                    ++metrics.assignment_switches;
                }
                agents[i].role = new_role;
                agents[i].tasks = result.tasks;
                if (new_role) {
                    for (const Task& t : result.tasks) {
                        if (t.id == *new_role) {
                            gt.agents[i].target = t.target;
                            break;
                        }
                    }
                }
                gt.agents[i].role = new_role.value_or(-1);
            }
        }

        RoleTableRow row;
        row.tick = tick_index;
        row.time = now;
        row.roles.reserve(n);
        for (int i = 0; i < n; ++i) row.roles.push_back(agents[i].role.value_or(-1));
        metrics.role_table.push_back(std::move(row));
    }

    metrics.roles = role_overlap_metric(metrics.role_table, dt, config.overlap_threshold,
                                        config.tasks, config.match_length);
    const Channel::Stats& cs = channel.stats();
    metrics.copies_enqueued = cs.copies_enqueued;
    metrics.copies_dropped = cs.copies_dropped;
    metrics.copies_delivered = cs.copies_delivered;
    return metrics;
}

CompareSummary compare_modes(const ScenarioConfig& config, std::span<const std::uint64_t> seeds) {
    if (seeds.empty()) throw ConfigError("compare_modes: need at least one seed");

    struct RunKey {
        std::size_t seed_index;
        std::size_t mode_index;
    };
    std::vector<RunKey> keys;
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        for (std::size_t m = 0; m < 4; ++m) keys.push_back({s, m});
    }

    std::vector<MetricsRecord> results(keys.size());
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = std::min<unsigned>(hw, keys.size());
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t k = cursor.fetch_add(1);
                if (k >= keys.size()) return;
                const RunKey key = keys[k];
                results[k] =
                    run_match(config, kAllModes[key.mode_index], seeds[key.seed_index], nullptr);
            }
        });
    }
    for (std::thread& t : pool) t.join();

    // canonical aggregation: rows ordered by task priority then mode
    std::vector<Task> ordered(config.tasks);
    std::sort(ordered.begin(), ordered.end(), [](const Task& a, const Task& b) {
        if (a.priority_rank != b.priority_rank) return a.priority_rank < b.priority_rank;
        return a.id < b.id;
    });

    CompareSummary summary;
    for (const Task& task : ordered) {
        for (std::size_t m = 0; m < 4; ++m) {
            std::vector<double> rates;
            rates.reserve(seeds.size());
            for (std::size_t s = 0; s < seeds.size(); ++s) {
                const MetricsRecord& record = results[s * 4 + m];
                for (const RoleMetrics& rm : record.roles) {
                    if (rm.task_id == task.id) {
                        rates.push_back(rm.overlaps_per_minute);
                        break;
                    }
                }
            }
            double mean = 0.0;
            for (double r : rates) mean += r;
            mean /= static_cast<double>(rates.size());
            double var = 0.0;
            for (double r : rates) var += (r - mean) * (r - mean);
            var = rates.size() > 1 ? var / static_cast<double>(rates.size() - 1) : 0.0;

            ModeSummaryRow row;
            row.task_id = task.id;
            row.role = task.kind.empty() ? ("task-" + std::to_string(task.id)) : task.kind;
            row.mode = kAllModes[m];
            row.mean_overlap_per_minute = mean;
            row.stddev_overlap_per_minute = std::sqrt(var);
            summary.rows.push_back(std::move(row));

            if (task.priority_rank == 0) {
                if (kAllModes[m] == ExperimentMode::EventBased) summary.striker_event_mean = mean;
                if (kAllModes[m] == ExperimentMode::EventELVD) summary.striker_elvd_mean = mean;
            }
        }
    }
    if (summary.striker_event_mean > 0.0) {
        summary.striker_reduction_percent = 100.0 *
                                            (summary.striker_event_mean - summary.striker_elvd_mean) /
                                            summary.striker_event_mean;
    } else {
        summary.striker_reduction_percent = 0.0;
    }
    return summary;
}

}  // namespace coord
