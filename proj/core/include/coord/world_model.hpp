#pragma once

#include <optional>
#include <span>
#include <vector>

#include "coord/events.hpp"
#include "coord/model.hpp"

namespace coord {

// Advances a belief by dt with no new information: ball follows a
// rolling-friction model, obstacle centroids drift along their
// area-of-interest segment (never beyond it), covariance grows and all
// confidences decay. Exact under step splitting: predicting dt then dt'
// matches predicting dt+dt'.
LocalModel predict_local(const LocalModel& prev, double dt, const WorldModelParams& params);

// Prediction followed by measurement correction: Kalman update on the
// ball position (velocity by finite differences of filtered positions),
// nearest-neighbor gated obstacle association with track birth/decay,
// and confidence refresh for everything observed.
LocalModel update_local(const LocalModel& prev, const ObservationSet& obs, double dt,
                        const WorldModelParams& params);

// Teammate-model transition: prediction only when no event arrived,
// otherwise the event payload overwrites the summarized fields (and is
// itself predicted forward from its send time to now). Throws
// RoutingError if the event's sender is not this model's teammate.
TeammateLocalModel update_teammate_model(const TeammateLocalModel& prev,
                                         const std::optional<Event>& event, double dt,
                                         const WorldModelParams& params);

// Merges the own model with the teammate models into the fused team
// estimate: obstacles pooled and DBSCAN-clustered to confidence-weighted
// representatives (re-clustered to an eps-separated fixpoint), ball
// outliers beyond outlier_sigma removed then confidence-weight averaged,
// agent poses taken from the teammate models (the own entry falls back to
// lm.self unless a loopback self-model is supplied).
DistributedWorldModel fuse(const LocalModel& own, int own_id,
                           std::span<const TeammateLocalModel> teammates,
                           const WorldModelParams& params);

struct DbscanResult {
    std::vector<std::vector<int>> clusters;  // member indices, discovery order
    std::vector<int> noise;                  // only possible when min_pts > 1
};

// Density-based clustering; with min_pts = 1 the clusters are exactly the
// connected components of the eps-neighborhood graph and no point is
// noise.
DbscanResult dbscan(std::span<const Point2> points, double eps, int min_pts);

// Linear-Gaussian position correction with isotropic measurement noise.
// Exposed for tests; update_local uses it internally.
void kalman_position_update(BallEstimate& ball, Point2 measurement, double obs_sigma);

}  // namespace coord
