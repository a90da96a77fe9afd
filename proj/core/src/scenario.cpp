#include "coord/scenario.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <json.hpp>

#include "coord/errors.hpp"

namespace coord {

namespace {

using nlohmann::json;

constexpr double kPi = 3.141592653589793238462643383279;

std::vector<Task> default_tasks() {
    return {
        {0, {2.5, 0.0}, 0, "striker"},
        {1, {1.2, 0.9}, 1, "supporter"},
        {2, {1.2, -0.9}, 2, "jolly"},
        {3, {0.0, 0.0}, 3, "midfielder"},
        {4, {2.2, 2.0}, 4, "winger_left"},
        {5, {2.2, -2.0}, 5, "winger_right"},
        {6, {-2.2, 1.1}, 6, "defender_left"},
        {7, {-2.2, -1.1}, 7, "defender_right"},
        {8, {-1.2, 0.0}, 8, "libero"},
        {9, {-4.0, 0.0}, 9, "keeper"},
    };
}

std::vector<OpponentConfig> default_opponents() {
    return {
        {{0.8, 1.0}, 3.43, 1.6, -1.0, 7.0, 0.0},
        {{0.5, -1.2}, 2.76, 1.4, -1.0, 9.0, 1.3},
        {{-0.8, 0.3}, 3.14, 1.8, -1.0, 8.0, 2.1},
        {{2.2, 0.6}, 3.93, 1.2, -1.0, 6.0, 0.7},
        {{2.0, -1.0}, 2.50, 1.5, -1.0, 10.0, 2.8},
    };
}

std::vector<AgentPose> default_formation(int n) {
    std::vector<AgentPose> poses;
    poses.reserve(n);
    poses.push_back({{-4.0, 0.0}, 0.0, 1.0});
    for (int i = 1; i < n; ++i) {
        const int row = (i - 1) / 2;
        const double side = (i % 2 == 1) ? 1.0 : -1.0;
        poses.push_back({{-3.0 + 0.8 * row, side * (1.8 - 0.4 * row)}, 0.0, 1.0});
    }
    return poses;
}

[[noreturn]] void fail(const std::string& message) { throw ConfigError(message); }

void check_keys(const json& obj, const std::string& context,
                std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed) {
            if (key == a) {
                known = true;
                break;
            }
        }
        if (!known) fail("unknown key '" + key + "' in " + context);
    }
}

double get_number(const json& obj, const char* key, double fallback, const std::string& context) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) fail("'" + std::string(key) + "' in " + context + " must be a number");
    return v.get<double>();
}

int get_int(const json& obj, const char* key, int fallback, const std::string& context) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail("'" + std::string(key) + "' in " + context + " must be an integer");
    return v.get<int>();
}

bool get_bool(const json& obj, const char* key, bool fallback, const std::string& context) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) fail("'" + std::string(key) + "' in " + context + " must be a boolean");
    return v.get<bool>();
}

Point2 get_point(const json& v, const std::string& context) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        fail(context + " must be a [x, y] number pair");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

ContextParams parse_context_params(const json& obj, const ContextParams& fallback,
                                   const std::string& context) {
    check_keys(obj, context, {"w_distance", "w_ball", "w_context", "sigma_distance", "sigma_ball"});
    ContextParams p = fallback;
    p.w_distance = get_number(obj, "w_distance", p.w_distance, context);
    p.w_ball = get_number(obj, "w_ball", p.w_ball, context);
    p.w_context = get_number(obj, "w_context", p.w_context, context);
    p.sigma_distance = get_number(obj, "sigma_distance", p.sigma_distance, context);
    p.sigma_ball = get_number(obj, "sigma_ball", p.sigma_ball, context);
    return p;
}

json context_params_json(const ContextParams& p) {
    return {{"w_distance", p.w_distance},
            {"w_ball", p.w_ball},
            {"w_context", p.w_context},
            {"sigma_distance", p.sigma_distance},
            {"sigma_ball", p.sigma_ball}};
}

void validate(const ScenarioConfig& c) {
    if (!(c.field.min.x < c.field.max.x && c.field.min.y < c.field.max.y)) {
        fail("field: min must be strictly below max in both axes");
    }
    if (c.team_size < 1) fail("team_size must be >= 1");
    if (c.team_size > 255) fail("team_size must fit the wire format (<= 255)");
    if (static_cast<int>(c.tasks.size()) < c.team_size) {
        fail("team_size (N=" + std::to_string(c.team_size) + ") must not exceed task count (M=" +
             std::to_string(c.tasks.size()) + ")");
    }
    std::set<int> ids, priorities;
    for (const Task& t : c.tasks) {
        if (!ids.insert(t.id).second) fail("tasks: duplicate id " + std::to_string(t.id));
        if (!priorities.insert(t.priority_rank).second) {
            fail("tasks: duplicate priority " + std::to_string(t.priority_rank));
        }
        if (!c.field.contains(t.target)) {
            fail("tasks: target of task " + std::to_string(t.id) + " lies outside the field");
        }
    }
    for (std::size_t i = 0; i < c.opponents.size(); ++i) {
        const OpponentConfig& o = c.opponents[i];
        if (!c.field.contains(o.anchor)) {
            fail("opponents[" + std::to_string(i) + "]: anchor lies outside the field");
        }
        if (o.interest_length < 0.0) fail("opponents: interest_length must be >= 0");
        if (o.patrol_period <= 0.0) fail("opponents: patrol_period must be > 0");
        if (o.patrol_amplitude > o.interest_length) {
            fail("opponents[" + std::to_string(i) + "]: patrol_amplitude exceeds interest_length");
        }
    }
    if (static_cast<int>(c.initial_poses.size()) != c.team_size) {
        fail("initial_poses: need exactly team_size entries (got " +
             std::to_string(c.initial_poses.size()) + ", team_size " + std::to_string(c.team_size) +
             ")");
    }
    for (const AgentPose& p : c.initial_poses) {
        BoundingBox margin{c.field.min - Point2{0.5, 0.5}, c.field.max + Point2{0.5, 0.5}};
        if (!margin.contains(p.position)) fail("initial_poses: pose outside the field margin");
    }
    if (c.budget < 0) fail("budget must be >= 0");
    if (c.match_length <= 0.0) fail("match_length must be > 0");
    if (!(c.tick > 0.0 && c.tick <= 0.1)) fail("tick must lie in (0, 0.1] seconds");
    if (c.coordination_period < c.tick) fail("coordination_period must be >= tick");
    if (c.overlap_threshold < 2) fail("overlap_threshold must be >= 2");
    if (c.seeds.empty()) fail("seeds must not be empty");
    if (c.channel.loss_probability < 0.0 || c.channel.loss_probability > 1.0) {
        fail("channel.loss_probability must lie in [0, 1]");
    }
    if (c.channel.latency_mean < 0.0 || c.channel.latency_jitter < 0.0) {
        fail("channel latencies must be >= 0");
    }
    if (c.sensor.range <= 0.0) fail("sensor.range must be > 0");
    if (!(c.sensor.fov > 0.0 && c.sensor.fov <= 2.0 * kPi + 1e-9)) {
        fail("sensor.fov must lie in (0, 2*pi] radians");
    }
    for (double p : {c.sensor.p_miss, c.sensor.p_false_positive, c.sensor.p_axis}) {
        if (p < 0.0 || p > 1.0) fail("sensor probabilities must lie in [0, 1]");
    }
    if (c.world_model.dbscan_eps <= 0.0) fail("world_model.dbscan_eps must be > 0");
    if (c.world_model.dbscan_min_pts < 1) fail("world_model.dbscan_min_pts must be >= 1");
    if (c.coordination.alpha <= 0.0) fail("coordination.alpha must be > 0");
    if (c.coordination.beta < 0.0) fail("coordination.beta must be >= 0");
    if (c.coordination.elvd_resolution < 10.0) {
        fail("coordination.elvd_resolution must be >= 10 cells/m");
    }
    if (c.motion.kick_speed_max < c.motion.kick_speed_min ||
        c.motion.kick_interval_max < c.motion.kick_interval_min) {
        fail("motion: kick ranges must have max >= min");
    }
}

}  // namespace

void finalize_config(ScenarioConfig& config) {
    if (config.tasks.empty()) config.tasks = default_tasks();
    if (config.opponents.empty()) config.opponents = default_opponents();
    if (config.initial_poses.empty()) config.initial_poses = default_formation(config.team_size);
    for (OpponentConfig& o : config.opponents) {
        if (o.patrol_amplitude < 0.0) o.patrol_amplitude = o.interest_length;
    }
    validate(config);
}

ScenarioConfig default_config() {
    ScenarioConfig c;
    finalize_config(c);
    return c;
}

void apply_desk_preset(ScenarioConfig& config) {
    config.match_length = 120.0;
    config.budget = 120;
}

ScenarioConfig parse_config_text(const std::string& text, const std::string& origin) {
    // an empty (or whitespace-only) file is the all-defaults scenario
    bool blank = true;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            blank = false;
            break;
        }
    }
    json root;
    if (blank) {
        root = json::object();
    } else {
        try {
            root = json::parse(text);
        } catch (const json::parse_error& e) {
            fail(origin + ": " + e.what());
        }
    }
    if (!root.is_object()) fail(origin + ": top level must be a JSON object");

    check_keys(root, origin,
               {"field", "team_size", "tasks", "opponents", "initial_poses", "ball", "channel",
                "budget", "match_length", "tick", "coordination_period", "overlap_threshold",
                "seeds", "sensor", "motion", "world_model", "coordination"});

    ScenarioConfig c;

    if (root.contains("field")) {
        const json& f = root.at("field");
        check_keys(f, "field", {"min_x", "min_y", "max_x", "max_y"});
        c.field.min = {get_number(f, "min_x", c.field.min.x, "field"),
                       get_number(f, "min_y", c.field.min.y, "field")};
        c.field.max = {get_number(f, "max_x", c.field.max.x, "field"),
                       get_number(f, "max_y", c.field.max.y, "field")};
    }
    c.team_size = get_int(root, "team_size", c.team_size, origin);
    if (root.contains("ball")) c.ball_start = get_point(root.at("ball"), "ball");
    c.budget = get_int(root, "budget", c.budget, origin);
    c.match_length = get_number(root, "match_length", c.match_length, origin);
    c.tick = get_number(root, "tick", c.tick, origin);
    c.coordination_period = get_number(root, "coordination_period", c.coordination_period, origin);
    c.overlap_threshold = get_int(root, "overlap_threshold", c.overlap_threshold, origin);

    if (root.contains("seeds")) {
        const json& s = root.at("seeds");
        if (!s.is_array()) fail("'seeds' must be an array of integers");
        c.seeds.clear();
        for (const json& v : s) {
            if (!v.is_number_integer()) fail("'seeds' must be an array of integers");
            c.seeds.push_back(v.get<std::uint64_t>());
        }
    }

    if (root.contains("tasks")) {
        const json& arr = root.at("tasks");
        if (!arr.is_array()) fail("'tasks' must be an array");
        c.tasks.clear();
        for (const json& t : arr) {
            check_keys(t, "tasks[]", {"id", "kind", "target", "priority"});
            Task task;
            task.id = get_int(t, "id", -1, "tasks[]");
            task.kind = t.contains("kind") ? t.at("kind").get<std::string>() : std::string{};
            if (!t.contains("target")) fail("tasks[]: missing 'target'");
            task.target = get_point(t.at("target"), "tasks[].target");
            task.priority_rank = get_int(t, "priority", 0, "tasks[]");
            c.tasks.push_back(std::move(task));
        }
    }

    if (root.contains("opponents")) {
        const json& arr = root.at("opponents");
        if (!arr.is_array()) fail("'opponents' must be an array");
        c.opponents.clear();
        for (const json& o : arr) {
            check_keys(o, "opponents[]",
                       {"anchor", "axis_theta", "interest_length", "patrol_amplitude",
                        "patrol_period", "patrol_phase"});
            OpponentConfig opp;
            if (!o.contains("anchor")) fail("opponents[]: missing 'anchor'");
            opp.anchor = get_point(o.at("anchor"), "opponents[].anchor");
            opp.axis_theta = get_number(o, "axis_theta", 0.0, "opponents[]");
            opp.interest_length = get_number(o, "interest_length", 1.5, "opponents[]");
            opp.patrol_amplitude = get_number(o, "patrol_amplitude", -1.0, "opponents[]");
            opp.patrol_period = get_number(o, "patrol_period", 8.0, "opponents[]");
            opp.patrol_phase = get_number(o, "patrol_phase", 0.0, "opponents[]");
            c.opponents.push_back(opp);
        }
    }

    if (root.contains("initial_poses")) {
        const json& arr = root.at("initial_poses");
        if (!arr.is_array()) fail("'initial_poses' must be an array");
        c.initial_poses.clear();
        for (const json& p : arr) {
            check_keys(p, "initial_poses[]", {"position", "heading"});
            AgentPose pose;
            if (!p.contains("position")) fail("initial_poses[]: missing 'position'");
            pose.position = get_point(p.at("position"), "initial_poses[].position");
            pose.heading = get_number(p, "heading", 0.0, "initial_poses[]");
            pose.confidence = 1.0;
            c.initial_poses.push_back(pose);
        }
    }

    if (root.contains("channel")) {
        const json& ch = root.at("channel");
        check_keys(ch, "channel", {"loss_probability", "latency_mean", "latency_jitter"});
        c.channel.loss_probability =
            get_number(ch, "loss_probability", c.channel.loss_probability, "channel");
        c.channel.latency_mean = get_number(ch, "latency_mean", c.channel.latency_mean, "channel");
        c.channel.latency_jitter =
            get_number(ch, "latency_jitter", c.channel.latency_jitter, "channel");
    }

    if (root.contains("sensor")) {
        const json& s = root.at("sensor");
        check_keys(s, "sensor",
                   {"range", "fov", "sigma", "sigma_distance_factor", "p_miss", "p_false_positive",
                    "pose_sigma", "heading_sigma", "p_axis", "axis_sigma"});
        SensorConfig& sc = c.sensor;
        sc.range = get_number(s, "range", sc.range, "sensor");
        sc.fov = get_number(s, "fov", sc.fov, "sensor");
        sc.sigma = get_number(s, "sigma", sc.sigma, "sensor");
        sc.sigma_distance_factor =
            get_number(s, "sigma_distance_factor", sc.sigma_distance_factor, "sensor");
        sc.p_miss = get_number(s, "p_miss", sc.p_miss, "sensor");
        sc.p_false_positive = get_number(s, "p_false_positive", sc.p_false_positive, "sensor");
        sc.pose_sigma = get_number(s, "pose_sigma", sc.pose_sigma, "sensor");
        sc.heading_sigma = get_number(s, "heading_sigma", sc.heading_sigma, "sensor");
        sc.p_axis = get_number(s, "p_axis", sc.p_axis, "sensor");
        sc.axis_sigma = get_number(s, "axis_sigma", sc.axis_sigma, "sensor");
    }

    if (root.contains("motion")) {
        const json& m = root.at("motion");
        check_keys(m, "motion",
                   {"agent_speed", "agent_turn_rate", "collision_stop_distance", "ball_restitution",
                    "kick_speed_min", "kick_speed_max", "kick_interval_min", "kick_interval_max",
                    "kick_radius", "force_kick_interval"});
        MotionConfig& mc = c.motion;
        mc.agent_speed = get_number(m, "agent_speed", mc.agent_speed, "motion");
        mc.agent_turn_rate = get_number(m, "agent_turn_rate", mc.agent_turn_rate, "motion");
        mc.collision_stop_distance =
            get_number(m, "collision_stop_distance", mc.collision_stop_distance, "motion");
        mc.ball_restitution = get_number(m, "ball_restitution", mc.ball_restitution, "motion");
        mc.kick_speed_min = get_number(m, "kick_speed_min", mc.kick_speed_min, "motion");
        mc.kick_speed_max = get_number(m, "kick_speed_max", mc.kick_speed_max, "motion");
        mc.kick_interval_min = get_number(m, "kick_interval_min", mc.kick_interval_min, "motion");
        mc.kick_interval_max = get_number(m, "kick_interval_max", mc.kick_interval_max, "motion");
        mc.kick_radius = get_number(m, "kick_radius", mc.kick_radius, "motion");
        mc.force_kick_interval =
            get_number(m, "force_kick_interval", mc.force_kick_interval, "motion");
    }

    if (root.contains("world_model")) {
        const json& w = root.at("world_model");
        check_keys(w, "world_model",
                   {"friction", "process_noise", "confidence_decay", "confidence_refresh",
                    "gate_radius", "obstacle_gain", "axis_gain", "initial_track_confidence",
                    "track_drop_confidence", "default_interest_length", "observation_sigma",
                    "event_covariance", "dbscan_eps", "dbscan_min_pts", "outlier_sigma",
                    "theta_lost", "d_pose", "r_alert", "event_cooldown", "budget_reserve"});
        WorldModelParams& p = c.world_model;
        p.friction = get_number(w, "friction", p.friction, "world_model");
        p.process_noise = get_number(w, "process_noise", p.process_noise, "world_model");
        p.confidence_decay = get_number(w, "confidence_decay", p.confidence_decay, "world_model");
        p.confidence_refresh =
            get_number(w, "confidence_refresh", p.confidence_refresh, "world_model");
        p.gate_radius = get_number(w, "gate_radius", p.gate_radius, "world_model");
        p.obstacle_gain = get_number(w, "obstacle_gain", p.obstacle_gain, "world_model");
        p.axis_gain = get_number(w, "axis_gain", p.axis_gain, "world_model");
        p.initial_track_confidence =
            get_number(w, "initial_track_confidence", p.initial_track_confidence, "world_model");
        p.track_drop_confidence =
            get_number(w, "track_drop_confidence", p.track_drop_confidence, "world_model");
        p.default_interest_length =
            get_number(w, "default_interest_length", p.default_interest_length, "world_model");
        p.observation_sigma =
            get_number(w, "observation_sigma", p.observation_sigma, "world_model");
        p.event_covariance = get_number(w, "event_covariance", p.event_covariance, "world_model");
        p.dbscan_eps = get_number(w, "dbscan_eps", p.dbscan_eps, "world_model");
        p.dbscan_min_pts = get_int(w, "dbscan_min_pts", p.dbscan_min_pts, "world_model");
        p.outlier_sigma = get_number(w, "outlier_sigma", p.outlier_sigma, "world_model");
        p.theta_lost = get_number(w, "theta_lost", p.theta_lost, "world_model");
        p.d_pose = get_number(w, "d_pose", p.d_pose, "world_model");
        p.r_alert = get_number(w, "r_alert", p.r_alert, "world_model");
        p.event_cooldown = get_number(w, "event_cooldown", p.event_cooldown, "world_model");
        p.budget_reserve = get_number(w, "budget_reserve", p.budget_reserve, "world_model");
    }

    if (root.contains("coordination")) {
        const json& coordination = root.at("coordination");
        check_keys(coordination, "coordination",
                   {"alpha", "beta", "lambda", "elvd_resolution", "pin_priority_zero",
                    "dynamic_striker_target", "context_confidence", "fallback_anchors", "offensive",
                    "defensive", "contested"});
        CoordinationConfig& cc = c.coordination;
        cc.alpha = get_number(coordination, "alpha", cc.alpha, "coordination");
        cc.beta = get_number(coordination, "beta", cc.beta, "coordination");
        cc.lambda = get_number(coordination, "lambda", cc.lambda, "coordination");
        cc.elvd_resolution =
            get_number(coordination, "elvd_resolution", cc.elvd_resolution, "coordination");
        cc.pin_priority_zero =
            get_bool(coordination, "pin_priority_zero", cc.pin_priority_zero, "coordination");
        cc.dynamic_striker_target = get_bool(coordination, "dynamic_striker_target",
                                             cc.dynamic_striker_target, "coordination");
        cc.context_confidence =
            get_number(coordination, "context_confidence", cc.context_confidence, "coordination");
        if (coordination.contains("fallback_anchors")) {
            const json& arr = coordination.at("fallback_anchors");
            if (!arr.is_array()) fail("'coordination.fallback_anchors' must be an array");
            cc.fallback_anchors.clear();
            for (const json& p : arr) {
                cc.fallback_anchors.push_back(get_point(p, "coordination.fallback_anchors[]"));
            }
        }
        if (coordination.contains("offensive")) {
            cc.offensive = parse_context_params(coordination.at("offensive"), cc.offensive,
                                                "coordination.offensive");
        }
        if (coordination.contains("defensive")) {
            cc.defensive = parse_context_params(coordination.at("defensive"), cc.defensive,
                                                "coordination.defensive");
        }
        if (coordination.contains("contested")) {
            cc.contested = parse_context_params(coordination.at("contested"), cc.contested,
                                                "coordination.contested");
        }
    }

    finalize_config(c);
    return c;
}

ScenarioConfig parse_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path);
}

std::string serialize_config(const ScenarioConfig& c) {
    json root;
    root["field"] = {{"min_x", c.field.min.x},
                     {"min_y", c.field.min.y},
                     {"max_x", c.field.max.x},
                     {"max_y", c.field.max.y}};
    root["team_size"] = c.team_size;
    root["ball"] = {c.ball_start.x, c.ball_start.y};
    root["budget"] = c.budget;
    root["match_length"] = c.match_length;
    root["tick"] = c.tick;
    root["coordination_period"] = c.coordination_period;
    root["overlap_threshold"] = c.overlap_threshold;
    root["seeds"] = c.seeds;

    json tasks = json::array();
    for (const Task& t : c.tasks) {
        tasks.push_back({{"id", t.id},
                         {"kind", t.kind},
                         {"target", {t.target.x, t.target.y}},
                         {"priority", t.priority_rank}});
    }
    root["tasks"] = std::move(tasks);

    json opponents = json::array();
    for (const OpponentConfig& o : c.opponents) {
        opponents.push_back({{"anchor", {o.anchor.x, o.anchor.y}},
                             {"axis_theta", o.axis_theta},
                             {"interest_length", o.interest_length},
                             {"patrol_amplitude", o.patrol_amplitude},
                             {"patrol_period", o.patrol_period},
                             {"patrol_phase", o.patrol_phase}});
    }
    root["opponents"] = std::move(opponents);

    json poses = json::array();
    for (const AgentPose& p : c.initial_poses) {
        poses.push_back({{"position", {p.position.x, p.position.y}}, {"heading", p.heading}});
    }
    root["initial_poses"] = std::move(poses);

    root["channel"] = {{"loss_probability", c.channel.loss_probability},
                       {"latency_mean", c.channel.latency_mean},
                       {"latency_jitter", c.channel.latency_jitter}};
    root["sensor"] = {{"range", c.sensor.range},
                      {"fov", c.sensor.fov},
                      {"sigma", c.sensor.sigma},
                      {"sigma_distance_factor", c.sensor.sigma_distance_factor},
                      {"p_miss", c.sensor.p_miss},
                      {"p_false_positive", c.sensor.p_false_positive},
                      {"pose_sigma", c.sensor.pose_sigma},
                      {"heading_sigma", c.sensor.heading_sigma},
                      {"p_axis", c.sensor.p_axis},
                      {"axis_sigma", c.sensor.axis_sigma}};
    root["motion"] = {{"agent_speed", c.motion.agent_speed},
                      {"agent_turn_rate", c.motion.agent_turn_rate},
                      {"collision_stop_distance", c.motion.collision_stop_distance},
                      {"ball_restitution", c.motion.ball_restitution},
                      {"kick_speed_min", c.motion.kick_speed_min},
                      {"kick_speed_max", c.motion.kick_speed_max},
                      {"kick_interval_min", c.motion.kick_interval_min},
                      {"kick_interval_max", c.motion.kick_interval_max},
                      {"kick_radius", c.motion.kick_radius},
                      {"force_kick_interval", c.motion.force_kick_interval}};
    const WorldModelParams& w = c.world_model;
    root["world_model"] = {{"friction", w.friction},
                           {"process_noise", w.process_noise},
                           {"confidence_decay", w.confidence_decay},
                           {"confidence_refresh", w.confidence_refresh},
                           {"gate_radius", w.gate_radius},
                           {"obstacle_gain", w.obstacle_gain},
                           {"axis_gain", w.axis_gain},
                           {"initial_track_confidence", w.initial_track_confidence},
                           {"track_drop_confidence", w.track_drop_confidence},
                           {"default_interest_length", w.default_interest_length},
                           {"observation_sigma", w.observation_sigma},
                           {"event_covariance", w.event_covariance},
                           {"dbscan_eps", w.dbscan_eps},
                           {"dbscan_min_pts", w.dbscan_min_pts},
                           {"outlier_sigma", w.outlier_sigma},
                           {"theta_lost", w.theta_lost},
                           {"d_pose", w.d_pose},
                           {"r_alert", w.r_alert},
                           {"event_cooldown", w.event_cooldown},
                           {"budget_reserve", w.budget_reserve}};
    const CoordinationConfig& cc = c.coordination;
    json anchors = json::array();
    for (const Point2& a : cc.fallback_anchors) anchors.push_back({a.x, a.y});
    root["coordination"] = {{"alpha", cc.alpha},
                            {"beta", cc.beta},
                            {"lambda", cc.lambda},
                            {"elvd_resolution", cc.elvd_resolution},
                            {"pin_priority_zero", cc.pin_priority_zero},
                            {"dynamic_striker_target", cc.dynamic_striker_target},
                            {"context_confidence", cc.context_confidence},
                            {"fallback_anchors", std::move(anchors)},
                            {"offensive", context_params_json(cc.offensive)},
                            {"defensive", context_params_json(cc.defensive)},
                            {"contested", context_params_json(cc.contested)}};
    return root.dump(2) + "\n";
}

std::uint64_t config_hash(const ScenarioConfig& config) {
    const std::string text = serialize_config(config);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace coord
