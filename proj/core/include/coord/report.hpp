#pragma once

#include <optional>
#include <span>
#include <string>

#include "coord/delaunay.hpp"
#include "coord/sim.hpp"
#include "coord/voronoi.hpp"

namespace coord {

// All emitters are deterministic: identical inputs produce byte-identical
// text, which is what makes run outputs reproducible and diffable.

std::string metrics_to_json(const MetricsRecord& metrics);

// "tick,time,agent0,...,agentN-1" with one row per tick.
std::string role_table_csv(const MetricsRecord& metrics);

// "role,task_id,mode,mean_overlap_s_per_min,stddev_overlap_s_per_min"
// in Fig-4 axes order (role-major, mode-minor), plus the reduction line
// as a trailing comment.
std::string summary_csv(const CompareSummary& summary);

// One line per accepted send and per delivery, hex packet included.
std::string packet_trace_text(std::span<const PacketTraceEntry> trace);

// Plot-ready dump of a diagram: sites (and focal points), Delaunay edges
// when available, Voronoi nodes and edge polyline points.
// Columns: record,index,x,y,x2,y2,extra
std::string geometry_debug_csv(const VoronoiDiagram& diagram, const Triangulation* triangulation);

}  // namespace coord
