#include "coord/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace coord {

namespace {

std::string fmt(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.9g", v);
    return buffer;
}

}  // namespace

std::string metrics_to_json(const MetricsRecord& m) {
    nlohmann::json root;
    root["mode"] = to_string(m.mode);
    root["seed"] = m.seed;
    root["match_length"] = m.match_length;
    root["tick"] = m.tick;
    root["team_size"] = m.team_size;
    root["packets"] = {{"attempted", m.packets_attempted},
                       {"accepted", m.packets_accepted},
                       {"rejected_budget", m.packets_rejected_budget},
                       {"copies_enqueued", m.copies_enqueued},
                       {"copies_dropped", m.copies_dropped},
                       {"copies_delivered", m.copies_delivered},
                       {"decode_failures", m.decode_failures}};
    root["assignment_switches"] = m.assignment_switches;
    nlohmann::json roles = nlohmann::json::array();
    for (const RoleMetrics& r : m.roles) {
        roles.push_back({{"task_id", r.task_id},
                         {"role", r.name},
                         {"overlap_seconds", r.overlap_seconds},
                         {"overlap_s_per_min", r.overlaps_per_minute}});
    }
    root["roles"] = std::move(roles);
    return root.dump(2) + "\n";
}

std::string role_table_csv(const MetricsRecord& m) {
    std::string out = "tick,time";
    for (int i = 0; i < m.team_size; ++i) out += ",agent" + std::to_string(i);
    out += "\n";
    for (const RoleTableRow& row : m.role_table) {
        out += std::to_string(row.tick);
        out += ",";
        char t[32];
        std::snprintf(t, sizeof t, "%.3f", row.time);
        out += t;
        for (int role : row.roles) {
            out += ",";
            out += std::to_string(role);
        }
        out += "\n";
    }
    return out;
}

std::string summary_csv(const CompareSummary& summary) {
    std::string out = "role,task_id,mode,mean_overlap_s_per_min,stddev_overlap_s_per_min\n";
    for (const ModeSummaryRow& row : summary.rows) {
        out += row.role + "," + std::to_string(row.task_id) + "," + to_string(row.mode) + "," +
               fmt(row.mean_overlap_per_minute) + "," + fmt(row.stddev_overlap_per_minute) + "\n";
    }
    out += "# striker_reduction_event_elvd_vs_event_based_percent," +
           fmt(summary.striker_reduction_percent) + "\n";
    return out;
}

std::string packet_trace_text(std::span<const PacketTraceEntry> trace) {
    std::string out;
    for (const PacketTraceEntry& e : trace) {
        char head[96];
        if (e.delivered) {
            std::snprintf(head, sizeof head, "DELIVER sent=%.3f delivered=%.3f from=%d to=%d ",
                          e.sent_at, e.delivered_at, e.sender, e.recipient);
        } else {
            std::snprintf(head, sizeof head, "SEND sent=%.3f from=%d ", e.sent_at, e.sender);
        }
        out += head;
        out += e.hex;
        out += "\n";
    }
    return out;
}

std::string geometry_debug_csv(const VoronoiDiagram& diagram, const Triangulation* triangulation) {
    std::string out = "record,index,x,y,x2,y2,extra\n";
    auto row = [&](const char* record, int index, double x, double y, double x2, double y2,
                   const std::string& extra) {
        out += record;
        out += "," + std::to_string(index) + "," + fmt(x) + "," + fmt(y) + "," + fmt(x2) + "," +
               fmt(y2) + "," + extra + "\n";
    };

    for (std::size_t i = 0; i < diagram.sites.size(); ++i) {
        const EllipticalSite& s = diagram.sites[i];
        if (s.is_point()) {
            row("site", static_cast<int>(i), s.f0.x, s.f0.y, s.f0.x, s.f0.y, "point");
        } else {
            row("site", static_cast<int>(i), s.f0.x, s.f0.y, s.f1.x, s.f1.y, "focal-pair");
        }
    }
    if (triangulation) {
        int edge_index = 0;
        for (const auto& tri : triangulation->triangles) {
            for (int k = 0; k < 3; ++k) {
                const Point2 a = triangulation->points[tri[k]];
                const Point2 b = triangulation->points[tri[(k + 1) % 3]];
                row("delaunay-edge", edge_index++, a.x, a.y, b.x, b.y, "");
            }
        }
    }
    for (std::size_t i = 0; i < diagram.nodes.size(); ++i) {
        const VoronoiNode& n = diagram.nodes[i];
        row("node", static_cast<int>(i), n.position.x, n.position.y, n.position.x, n.position.y,
            n.on_border ? "border" : "interior");
    }
    for (std::size_t e = 0; e < diagram.edges.size(); ++e) {
        const VoronoiEdge& edge = diagram.edges[e];
        const std::string pair =
            std::to_string(edge.site_a) + ";" + std::to_string(edge.site_b);
        if (edge.polyline.size() >= 2 && diagram.backend == VoronoiBackend::ExactPoint) {
            row("edge", static_cast<int>(e), edge.polyline.front().x, edge.polyline.front().y,
                edge.polyline.back().x, edge.polyline.back().y, pair);
        } else {
            for (const Point2& p : edge.polyline) {
                row("edge-point", static_cast<int>(e), p.x, p.y, p.x, p.y, pair);
            }
        }
    }
    return out;
}

}  // namespace coord
