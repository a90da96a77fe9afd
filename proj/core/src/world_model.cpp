#include "coord/world_model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "coord/errors.hpp"

namespace coord {

namespace {

constexpr double kBallMaxSpeed = 4.0;      // sanity clamp on velocity estimates, m/s
constexpr double kObstacleMaxSpeed = 2.0;  // m/s
constexpr double kVelocityBlend = 0.25;    // EMA on finite-difference velocities

double decay(double confidence, double dt, double rate) {
    return confidence * std::exp(-rate * dt);
}

double refresh(double confidence, double pull) { return confidence + pull * (1.0 - confidence); }

Point2 clamp_speed(Point2 v, double max_speed) {
    const double s = v.norm();
    return s > max_speed ? v * (max_speed / s) : v;
}

void predict_ball(BallEstimate& ball, double dt, const WorldModelParams& p) {
    const double speed = ball.velocity.norm();
    if (speed > 0.0) {
        double travel, new_speed;
        if (p.friction <= 0.0) {
            travel = speed * dt;
            new_speed = speed;
        } else if (speed <= p.friction * dt) {
            travel = speed * speed / (2.0 * p.friction);  // rolls to a stop mid-step
            new_speed = 0.0;
        } else {
            travel = speed * dt - 0.5 * p.friction * dt * dt;
            new_speed = speed - p.friction * dt;
        }
        const Point2 dir = ball.velocity / speed;
        ball.position += dir * travel;
        ball.velocity = dir * new_speed;
    }
    ball.covariance = ball.covariance + Mat2::identity(p.process_noise * dt);
    ball.confidence = decay(ball.confidence, dt, p.confidence_decay);
}

void predict_obstacle(ObstacleEstimate& o, double dt, const WorldModelParams& p) {
    const Point2 advanced = o.centroid + o.velocity * dt;
    // confine to the area-of-interest segment [anchor, anchor + L * axis]
    const double along = std::clamp((advanced - o.anchor).dot(o.axis_direction), 0.0,
                                    std::max(o.interest_length, 0.0));
    o.centroid = o.anchor + o.axis_direction * along;
    o.confidence = decay(o.confidence, dt, p.confidence_decay);
}

struct WeightedObstacle {
    ObstacleEstimate est;
    double weight = 0.0;
};

ObstacleEstimate merge_cluster(const std::vector<WeightedObstacle>& pool,
                               const std::vector<int>& members, double& weight_out) {
    double total = 0.0;
    for (int m : members) total += std::max(pool[m].weight, 0.0);
    const bool weightless = total <= 0.0;
    if (weightless) total = static_cast<double>(members.size());

    ObstacleEstimate out;
    Point2 centroid{}, anchor{}, velocity{}, axis{};
    double interest = 0.0;
    out.confidence = 0.0;
    out.last_observed = -1.0;
    out.id = std::numeric_limits<int>::max();
    for (int m : members) {
        const double w = weightless ? 1.0 : std::max(pool[m].weight, 0.0);
        const ObstacleEstimate& e = pool[m].est;
        centroid += e.centroid * w;
        anchor += e.anchor * w;
        velocity += e.velocity * w;
        axis += e.axis_direction * w;
        interest += e.interest_length * w;
        out.confidence = std::max(out.confidence, e.confidence);
        out.last_observed = std::max(out.last_observed, e.last_observed);
        out.id = std::min(out.id, e.id);
    }
    out.centroid = centroid / total;
    out.anchor = anchor / total;
    out.velocity = velocity / total;
    out.interest_length = interest / total;
    out.axis_direction = axis.normalized();
    if (out.axis_direction == Point2{}) out.axis_direction = pool[members.front()].est.axis_direction;
    weight_out = total;
    return out;
}

}  // namespace

LocalModel predict_local(const LocalModel& prev, double dt, const WorldModelParams& params) {
    LocalModel m = prev;
    predict_ball(m.ball, dt, params);
    for (ObstacleEstimate& o : m.obstacles) predict_obstacle(o, dt, params);
    m.self.confidence = decay(m.self.confidence, dt, params.confidence_decay);
    m.timestamp = prev.timestamp + dt;
    return m;
}

void kalman_position_update(BallEstimate& ball, Point2 measurement, double obs_sigma) {
    const Mat2 innovation_cov = ball.covariance + Mat2::identity(obs_sigma * obs_sigma);
    Mat2 gain;
    if (std::abs(innovation_cov.det()) < 1e-18) {
        gain = Mat2::identity(1.0);  // covariance collapsed: trust the measurement
    } else {
        gain = ball.covariance * innovation_cov.inverse();
    }
    ball.position += gain * (measurement - ball.position);
    ball.covariance = ((Mat2::identity(1.0) - gain) * ball.covariance).symmetrized();
}

LocalModel update_local(const LocalModel& prev, const ObservationSet& obs, double dt,
                        const WorldModelParams& params) {
    LocalModel m = predict_local(prev, dt, params);
    const double now = m.timestamp;

    if (obs.self_pose) m.self = *obs.self_pose;

    if (obs.ball) {
        kalman_position_update(m.ball, *obs.ball, params.observation_sigma);
        if (m.ball.last_observed >= 0.0 && now > m.ball.last_observed) {
            const Point2 fd =
                (m.ball.position - m.ball.last_observed_position) / (now - m.ball.last_observed);
            m.ball.velocity =
                clamp_speed(m.ball.velocity + (fd - m.ball.velocity) * kVelocityBlend, kBallMaxSpeed);
        }
        m.ball.last_observed = now;
        m.ball.last_observed_position = m.ball.position;
        m.ball.confidence = refresh(m.ball.confidence, params.confidence_refresh);
    }

    std::vector<bool> matched(m.obstacles.size(), false);
    for (const ObstacleObservation& z : obs.obstacles) {
        int best = -1;
        double best_d = params.gate_radius;
        for (std::size_t t = 0; t < m.obstacles.size(); ++t) {
            if (matched[t]) continue;
            const double d = distance(z.position, m.obstacles[t].centroid);
            if (d < best_d) {
                best_d = d;
                best = static_cast<int>(t);
            }
        }
        if (best >= 0) {
            ObstacleEstimate& t = m.obstacles[best];
            const Point2 corrected =
                t.centroid + (z.position - t.centroid) * params.obstacle_gain;
            if (t.last_observed >= 0.0 && now > t.last_observed) {
                const Point2 fd = (corrected - t.anchor) / (now - t.last_observed);
                t.velocity = clamp_speed(t.velocity + (fd - t.velocity) * kVelocityBlend,
                                         kObstacleMaxSpeed);
            }
            t.centroid = corrected;
            t.anchor = corrected;
            t.last_observed = now;
            if (z.axis_theta) {
                const double current = std::atan2(t.axis_direction.y, t.axis_direction.x);
                const double blended =
                    current + params.axis_gain * wrap_angle(*z.axis_theta - current);
                t.axis_direction = from_angle(blended);
            }
            t.confidence = refresh(t.confidence, params.confidence_refresh);
            matched[best] = true;
        } else {
            ObstacleEstimate birth;
            birth.centroid = z.position;
            birth.anchor = z.position;
            birth.velocity = {};
            birth.axis_direction = z.axis_theta ? from_angle(*z.axis_theta) : Point2{1.0, 0.0};
            birth.interest_length = params.default_interest_length;
            birth.confidence = params.initial_track_confidence;
            birth.last_observed = now;
            birth.id = m.next_track_id++;
            m.obstacles.push_back(birth);
        }
    }
    std::erase_if(m.obstacles, [&](const ObstacleEstimate& o) {
        return o.confidence < params.track_drop_confidence;
    });
    return m;
}

TeammateLocalModel update_teammate_model(const TeammateLocalModel& prev,
                                         const std::optional<Event>& event, double dt,
                                         const WorldModelParams& params) {
    TeammateLocalModel out = prev;
    out.model = predict_local(prev.model, dt, params);
    const double now = out.model.timestamp;

    if (event) {
        if (event->sender != prev.teammate_id) {
            throw RoutingError("update_teammate_model: event sender " +
                               std::to_string(event->sender) + " routed to teammate model " +
                               std::to_string(prev.teammate_id));
        }
        LocalModel overlay;
        overlay.self = event->pose;
        overlay.ball.position = event->ball_position;
        overlay.ball.velocity = event->ball_velocity;
        overlay.ball.confidence = event->ball_confidence;
        overlay.ball.covariance = Mat2::identity(params.event_covariance);
        overlay.ball.last_observed = event->timestamp;
        overlay.ball.last_observed_position = event->ball_position;
        overlay.obstacles.reserve(event->obstacles.size());
        for (const PayloadObstacle& po : event->obstacles) {
            ObstacleEstimate o;
            o.centroid = po.position;
            o.anchor = po.position;
            o.axis_direction = from_angle(po.axis_theta);
            o.interest_length = po.interest_length;
            o.confidence = po.confidence;
            o.last_observed = event->timestamp;
            o.id = po.id;
            overlay.obstacles.push_back(o);
        }
        overlay.timestamp = event->timestamp;
        const double gap = now - event->timestamp;
        if (gap > 0.0) overlay = predict_local(overlay, gap, params);

        out.model.self = overlay.self;
        out.model.ball = overlay.ball;
        out.model.obstacles = overlay.obstacles;
        out.last_event_time = event->timestamp;
    }
    out.model.timestamp = now;
    return out;
}

DbscanResult dbscan(std::span<const Point2> points, double eps, int min_pts) {
    constexpr int kUnvisited = -2;
    constexpr int kNoise = -1;
    const int n = static_cast<int>(points.size());
    std::vector<int> label(n, kUnvisited);
    const double eps_sq = eps * eps;

    auto neighbors_of = [&](int i) {
        std::vector<int> out;
        for (int j = 0; j < n; ++j) {
            if (distance_sq(points[i], points[j]) <= eps_sq) out.push_back(j);
        }
        return out;
    };

    int cluster_id = 0;
    for (int i = 0; i < n; ++i) {
        if (label[i] != kUnvisited) continue;
        std::vector<int> nbrs = neighbors_of(i);
        if (static_cast<int>(nbrs.size()) < min_pts) {
            label[i] = kNoise;
            continue;
        }
        label[i] = cluster_id;
        std::deque<int> seeds(nbrs.begin(), nbrs.end());
        while (!seeds.empty()) {
            const int j = seeds.front();
            seeds.pop_front();
            if (label[j] == kNoise) label[j] = cluster_id;  // border point
            if (label[j] != kUnvisited) continue;
            label[j] = cluster_id;
            std::vector<int> jn = neighbors_of(j);
            if (static_cast<int>(jn.size()) >= min_pts) {
                seeds.insert(seeds.end(), jn.begin(), jn.end());
            }
        }
        ++cluster_id;
    }

    DbscanResult result;
    result.clusters.resize(cluster_id);
    for (int i = 0; i < n; ++i) {
        if (label[i] == kNoise) {
            result.noise.push_back(i);
        } else {
            result.clusters[label[i]].push_back(i);
        }
    }
    return result;
}

DistributedWorldModel fuse(const LocalModel& own, int own_id,
                           std::span<const TeammateLocalModel> teammates,
                           const WorldModelParams& params) {
    DistributedWorldModel dwm;
    dwm.timestamp = own.timestamp;

    // --- agent poses: teammate models, own model as fallback ---
    bool have_own = false;
    for (const TeammateLocalModel& t : teammates) {
        dwm.agents.emplace_back(t.teammate_id, t.model.self);
        have_own = have_own || t.teammate_id == own_id;
    }
    if (!have_own) dwm.agents.emplace_back(own_id, own.self);
    std::sort(dwm.agents.begin(), dwm.agents.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    // --- ball: outlier-filtered confidence-weighted average ---
    // contributions sorted by (agent id, own-before-teammate) so the
    // floating-point summation order is identical on every agent
    struct BallContribution {
        int id;
        int rank;  // 0 = own local model, 1 = teammate model
        const BallEstimate* est;
    };
    std::vector<BallContribution> balls;
    balls.push_back({own_id, 0, &own.ball});
    for (const TeammateLocalModel& t : teammates) balls.push_back({t.teammate_id, 1, &t.model.ball});
    std::sort(balls.begin(), balls.end(), [](const BallContribution& a, const BallContribution& b) {
        if (a.id != b.id) return a.id < b.id;
        return a.rank < b.rank;
    });

    double total_conf = 0.0;
    Point2 mean{};
    for (const BallContribution& c : balls) {
        total_conf += c.est->confidence;
        mean += c.est->position * c.est->confidence;
    }
    if (total_conf > 0.0) {
        mean = mean / total_conf;
        std::vector<const BallEstimate*> survivors;
        for (const BallContribution& c : balls) {
            if (c.est->confidence <= 0.0) continue;
            const double sigma = std::sqrt(std::max(0.5 * c.est->covariance.trace(), 1e-12));
            if (distance(c.est->position, mean) <= params.outlier_sigma * sigma) {
                survivors.push_back(c.est);
            }
        }
        if (survivors.empty()) {
            const BallEstimate* best = balls.front().est;
            for (const BallContribution& c : balls) {
                if (c.est->confidence > best->confidence) best = c.est;
            }
            survivors.push_back(best);
        }
        double w = 0.0;
        Point2 pos{}, vel{};
        Mat2 cov{};
        double conf = 0.0, last = -1.0;
        for (const BallEstimate* e : survivors) {
            w += e->confidence;
            pos += e->position * e->confidence;
            vel += e->velocity * e->confidence;
            cov = cov + e->covariance * e->confidence;
            conf = std::max(conf, e->confidence);
            last = std::max(last, e->last_observed);
        }
        if (w > 0.0) {
            dwm.ball.position = pos / w;
            dwm.ball.velocity = vel / w;
            dwm.ball.covariance = cov * (1.0 / w);
            dwm.ball.confidence = conf;
            dwm.ball.last_observed = last;
            dwm.ball.last_observed_position = dwm.ball.position;
        } else {
            dwm.ball = own.ball;
        }
    } else {
        dwm.ball = own.ball;  // nobody has any ball information
    }

    // --- obstacles: pooled, clustered, merged to an eps-separated fixpoint ---
    struct PoolKey {
        int source;
        int rank;
        int track;
    };
    std::vector<std::pair<PoolKey, const ObstacleEstimate*>> pool_entries;
    for (const ObstacleEstimate& o : own.obstacles) {
        pool_entries.push_back({{own_id, 0, o.id}, &o});
    }
    for (const TeammateLocalModel& t : teammates) {
        for (const ObstacleEstimate& o : t.model.obstacles) {
            pool_entries.push_back({{t.teammate_id, 1, o.id}, &o});
        }
    }
    std::sort(pool_entries.begin(), pool_entries.end(), [](const auto& a, const auto& b) {
        if (a.first.source != b.first.source) return a.first.source < b.first.source;
        if (a.first.rank != b.first.rank) return a.first.rank < b.first.rank;
        return a.first.track < b.first.track;
    });

    std::vector<WeightedObstacle> reps;
    reps.reserve(pool_entries.size());
    for (const auto& [key, est] : pool_entries) {
        reps.push_back({*est, std::max(est->confidence, 0.0)});
    }

    while (reps.size() > 1) {
        std::vector<Point2> centroids;
        centroids.reserve(reps.size());
        for (const WeightedObstacle& r : reps) centroids.push_back(r.est.centroid);
        const DbscanResult clusters = dbscan(centroids, params.dbscan_eps, params.dbscan_min_pts);

        bool any_merge = false;
        std::vector<WeightedObstacle> next;
        next.reserve(clusters.clusters.size());
        for (const std::vector<int>& members : clusters.clusters) {
            if (members.size() > 1) any_merge = true;
            WeightedObstacle merged;
            merged.est = merge_cluster(reps, members, merged.weight);
            next.push_back(std::move(merged));
        }
        for (int i : clusters.noise) next.push_back(reps[i]);
        reps = std::move(next);
        if (!any_merge) break;
    }

    std::sort(reps.begin(), reps.end(), [](const WeightedObstacle& a, const WeightedObstacle& b) {
        if (a.est.centroid.x != b.est.centroid.x) return a.est.centroid.x < b.est.centroid.x;
        if (a.est.centroid.y != b.est.centroid.y) return a.est.centroid.y < b.est.centroid.y;
        return a.est.id < b.est.id;
    });
    dwm.obstacles.reserve(reps.size());
    for (WeightedObstacle& r : reps) dwm.obstacles.push_back(std::move(r.est));
    return dwm;
}

}  // namespace coord
