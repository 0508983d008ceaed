#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "gtda/graph.hpp"
#include "gtda/lens.hpp"
#include "gtda/reeb.hpp"
#include "gtda/splitter.hpp"

namespace gtda {

/// Symmetric nonnegative distance between two datapoints.
using DistanceFn = std::function<double(vertex_t, vertex_t)>;

/// The default merge distance: l-infinity between rows of the smoothed,
/// normalized lens matrix. The matrix must outlive the returned function.
DistanceFn lens_linf_distance(const LensMatrix& p_smoothed);

/// One merge decision: `source` chose its cheapest frontier edge
/// (bridge_u inside, bridge_v outside) leading into `target`.
struct MergeDecision {
    std::uint32_t source = 0;
    std::uint32_t target = 0;
    vertex_t bridge_u = 0;
    vertex_t bridge_v = 0;
    double distance = 0.0;
};

/// Audit trail of merge rounds.
struct MergeTrace {
    std::vector<std::vector<MergeDecision>> rounds;
};

struct NodeMergeResult {
    FinalSets sets;
    MergeTrace trace;
    std::vector<std::uint8_t> unmergeable;  // per-set: small but no boundary edges
    std::uint32_t unmergeable_count() const;
};

/// Repeatedly merges every set with at most s1 vertices into its nearest
/// neighbor set: each small set picks the boundary edge minimizing dist,
/// the chosen pairs form a graph whose connected components are unioned.
/// Small sets without boundary edges are flagged and skipped.
NodeMergeResult node_merging(FinalSets f, const Graph& g, std::uint32_t s1,
                             const DistanceFn& dist, unsigned workers = 1);

struct ComponentMergeResult {
    ReebNet net;  // extra edges added; unmergeable components dropped
    MergeTrace trace;
    std::uint32_t excluded_components = 0;
};

/// Connects every Reeb component with at most s2 nodes to the rest of the
/// net: the cheapest g-edge leaving the component's datapoints selects a
/// node pair, which is recorded as an extra edge. Components without any
/// outgoing g-edge are excluded from the final net, and their datapoints
/// reported in `net.excluded`.
ComponentMergeResult component_merging(const ReebNet& net, const Graph& g, std::uint32_t s2,
                                       const DistanceFn& dist, unsigned workers = 1);

}  // namespace gtda
