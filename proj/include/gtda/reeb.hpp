#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gtda/graph.hpp"
#include "gtda/splitter.hpp"

namespace gtda {

struct ReebEdge {
    std::uint32_t a = 0;
    std::uint32_t b = 0;  // a < b
    bool operator==(const ReebEdge&) const = default;
};

/// The derived network: one node per finalized set, overlap edges where two
/// sets share a datapoint, plus weaker extra edges added by component
/// merging. `extra_bridges[i]` is the datapoint-level edge that realized
/// extra_edges[i].
struct ReebNet {
    std::vector<VertexSet> nodes;
    std::vector<ReebEdge> overlap_edges;
    std::vector<ReebEdge> extra_edges;
    std::vector<std::pair<vertex_t, vertex_t>> extra_bridges;
    VertexSet excluded;  // datapoints dropped with unmergeable components
    vertex_t num_datapoints = 0;

    /// Components of the net under overlap_edges + extra_edges.
    ComponentLabeling components() const;
};

/// Builds nodes and overlap edges from finalized sets. Overlaps are found
/// through the node/datapoint incidence lists (2-hop reachability), O(N+M)
/// in the total membership.
ReebNet build_reeb_net(const FinalSets& f, vertex_t num_datapoints, unsigned workers = 1);

/// Projects the net back onto the datapoints: every node contributes its
/// internal g-edges, every extra edge its recorded bridge. Duplicates
/// collapse. The result has the same vertex count (and weights) as g.
Graph project(const ReebNet& net, const Graph& g);

enum class SummaryMode { Predicted, Training };

struct NodeSummary {
    std::size_t size = 0;
    std::vector<double> mixture;  // per-class fraction; sums to 1 unless empty
    std::int32_t dominant = -1;
    bool empty_mixture = false;  // training mode, no labeled members
};

/// Per-node class mixtures. Predicted mode counts every member's label;
/// training mode counts only members with mask set. Labels must cover the
/// non-excluded datapoints.
std::vector<NodeSummary> summarize(const ReebNet& net, std::span<const std::int32_t> labels,
                                   std::int32_t num_classes, SummaryMode mode,
                                   std::span<const std::uint8_t> training_mask = {});

}  // namespace gtda
