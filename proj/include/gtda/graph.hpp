#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gtda {

using vertex_t = std::uint32_t;

/// One undirected edge; weight is ignored by unweighted graphs.
struct Edge {
    vertex_t u = 0;
    vertex_t v = 0;
    double w = 1.0;
};

/// Sorted, duplicate-free collection of vertex ids.
struct VertexSet {
    std::vector<vertex_t> members;

    VertexSet() = default;
    explicit VertexSet(std::vector<vertex_t> ids);

    std::size_t size() const { return members.size(); }
    bool empty() const { return members.empty(); }
    bool contains(vertex_t v) const;
    bool operator==(const VertexSet&) const = default;
};

/// Per-vertex component ids in [0, count).
struct ComponentLabeling {
    std::vector<vertex_t> label;
    vertex_t count = 0;
};

/// Immutable undirected sparse graph in CSR form. Neighbor lists are sorted.
/// Self-loops and duplicate edges are rejected at construction.
class Graph {
public:
    Graph() = default;

    /// Builds the graph from a list of undirected edges. Throws
    /// std::invalid_argument on out-of-range endpoints, self-loops,
    /// duplicate edges, or non-finite/negative weights.
    static Graph from_edges(vertex_t n, std::span<const Edge> edges, bool weighted = false);

    vertex_t num_vertices() const { return n_; }
    std::uint64_t num_edges() const { return static_cast<std::uint64_t>(col_idx_.size()) / 2; }
    bool weighted() const { return !weights_.empty(); }
    bool empty() const { return n_ == 0; }

    std::span<const vertex_t> neighbors(vertex_t v) const {
        return {col_idx_.data() + row_ptr_[v], col_idx_.data() + row_ptr_[v + 1]};
    }

    /// Weights aligned with neighbors(v); empty span for unweighted graphs.
    std::span<const double> weights(vertex_t v) const {
        if (weights_.empty()) return {};
        return {weights_.data() + row_ptr_[v], weights_.data() + row_ptr_[v + 1]};
    }

    /// Weighted degree (neighbor count when unweighted).
    double degree(vertex_t v) const;

    bool has_edge(vertex_t u, vertex_t v) const;

    /// Unique edges with u < v, sorted lexicographically.
    std::vector<Edge> edge_list() const;

private:
    vertex_t n_ = 0;
    std::vector<std::uint64_t> row_ptr_;
    std::vector<vertex_t> col_idx_;
    std::vector<double> weights_;
};

/// Connected components of the whole graph. Iterative BFS, O(N+M).
ComponentLabeling connected_components(const Graph& g);

/// Components of the subgraph induced on `restrict_to`. Labels are aligned
/// with the member order of the set; an empty set yields count 0.
ComponentLabeling connected_components(const Graph& g, const VertexSet& restrict_to);

struct InducedSubgraph {
    Graph graph;
    std::vector<vertex_t> to_original;  // new id -> old id
};

/// Subgraph on `s` keeping only edges with both endpoints inside.
InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s);

/// Edge-set union of two graphs over the same vertex set; a duplicate edge
/// keeps the maximum weight. Throws on vertex-count mismatch.
Graph union_graphs(const Graph& g1, const Graph& g2);

/// Per-vertex weighted degree sequence.
std::vector<double> degrees(const Graph& g);

/// Reusable scratch for many subset-component queries against one graph.
/// Epoch marking avoids per-query O(n) clears, so a query costs
/// O(|s| + edges touching s).
class SubsetComponents {
public:
    explicit SubsetComponents(std::size_t n);

    /// Labels the members of `s` (aligned with its order) with component ids
    /// of the induced subgraph; returns the component count.
    vertex_t run(const Graph& g, std::span<const vertex_t> s, std::vector<vertex_t>& labels_out);

private:
    std::vector<std::uint32_t> member_epoch_;
    std::vector<std::uint32_t> seen_epoch_;
    std::vector<vertex_t> comp_;
    std::vector<vertex_t> queue_;
    std::uint32_t epoch_ = 0;
};

}  // namespace gtda
