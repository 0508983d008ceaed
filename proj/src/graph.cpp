#include "gtda/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gtda {

VertexSet::VertexSet(std::vector<vertex_t> ids) : members(std::move(ids)) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
}

bool VertexSet::contains(vertex_t v) const {
    return std::binary_search(members.begin(), members.end(), v);
}

Graph Graph::from_edges(vertex_t n, std::span<const Edge> edges, bool weighted) {
    for (const Edge& e : edges) {
        if (e.u >= n || e.v >= n)
            throw std::invalid_argument("graph: edge endpoint " +
                                        std::to_string(e.u >= n ? e.u : e.v) +
                                        " out of range [0, " + std::to_string(n) + ")");
        if (e.u == e.v)
            throw std::invalid_argument("graph: self-loop at vertex " + std::to_string(e.u));
        if (weighted && (!std::isfinite(e.w) || e.w < 0.0))
            throw std::invalid_argument("graph: edge weight must be finite and nonnegative");
    }

    // Normalize to u < v and check for duplicates.
    std::vector<Edge> norm(edges.begin(), edges.end());
    for (Edge& e : norm)
        if (e.u > e.v) std::swap(e.u, e.v);
    std::sort(norm.begin(), norm.end(),
              [](const Edge& a, const Edge& b) { return a.u < b.u || (a.u == b.u && a.v < b.v); });
    for (std::size_t i = 1; i < norm.size(); ++i)
        if (norm[i].u == norm[i - 1].u && norm[i].v == norm[i - 1].v)
            throw std::invalid_argument("graph: duplicate edge (" + std::to_string(norm[i].u) +
                                        ", " + std::to_string(norm[i].v) + ")");

    Graph g;
    g.n_ = n;
    g.row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (const Edge& e : norm) {
        ++g.row_ptr_[e.u + 1];
        ++g.row_ptr_[e.v + 1];
    }
    for (vertex_t v = 0; v < n; ++v) g.row_ptr_[v + 1] += g.row_ptr_[v];

    g.col_idx_.resize(norm.size() * 2);
    if (weighted) g.weights_.resize(norm.size() * 2);
    std::vector<std::uint64_t> cursor(g.row_ptr_.begin(), g.row_ptr_.end() - 1);
    for (const Edge& e : norm) {
        g.col_idx_[cursor[e.u]] = e.v;
        g.col_idx_[cursor[e.v]] = e.u;
        if (weighted) {
            g.weights_[cursor[e.u]] = e.w;
            g.weights_[cursor[e.v]] = e.w;
        }
        ++cursor[e.u];
        ++cursor[e.v];
    }
    // Neighbor lists: sort each row (weights move with their neighbor).
    for (vertex_t v = 0; v < n; ++v) {
        auto lo = g.row_ptr_[v], hi = g.row_ptr_[v + 1];
        if (weighted) {
            std::vector<std::pair<vertex_t, double>> row;
            row.reserve(hi - lo);
            for (auto i = lo; i < hi; ++i) row.emplace_back(g.col_idx_[i], g.weights_[i]);
            std::sort(row.begin(), row.end());
            for (auto i = lo; i < hi; ++i) {
                g.col_idx_[i] = row[i - lo].first;
                g.weights_[i] = row[i - lo].second;
            }
        } else {
            std::sort(g.col_idx_.begin() + static_cast<std::ptrdiff_t>(lo),
                      g.col_idx_.begin() + static_cast<std::ptrdiff_t>(hi));
        }
    }
    return g;
}

double Graph::degree(vertex_t v) const {
    if (weights_.empty())
        return static_cast<double>(row_ptr_[v + 1] - row_ptr_[v]);
    double d = 0.0;
    for (auto i = row_ptr_[v]; i < row_ptr_[v + 1]; ++i) d += weights_[i];
    return d;
}

bool Graph::has_edge(vertex_t u, vertex_t v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edge_list() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (vertex_t u = 0; u < n_; ++u) {
        auto nb = neighbors(u);
        auto ws = weights(u);
        for (std::size_t i = 0; i < nb.size(); ++i)
            if (u < nb[i]) out.push_back({u, nb[i], ws.empty() ? 1.0 : ws[i]});
    }
    return out;
}

ComponentLabeling connected_components(const Graph& g) {
    const vertex_t n = g.num_vertices();
    ComponentLabeling out;
    out.label.assign(n, 0);
    std::vector<bool> seen(n, false);
    std::vector<vertex_t> queue;
    vertex_t next_label = 0;
    for (vertex_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        seen[s] = true;
        queue.assign(1, s);
        while (!queue.empty()) {
            vertex_t v = queue.back();
            queue.pop_back();
            out.label[v] = next_label;
            for (vertex_t u : g.neighbors(v)) {
                if (!seen[u]) {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        ++next_label;
    }
    out.count = next_label;
    return out;
}

ComponentLabeling connected_components(const Graph& g, const VertexSet& restrict_to) {
    SubsetComponents scratch(g.num_vertices());
    ComponentLabeling out;
    out.count = scratch.run(g, restrict_to.members, out.label);
    return out;
}

InducedSubgraph induced_subgraph(const Graph& g, const VertexSet& s) {
    const auto& m = s.members;
    std::vector<vertex_t> new_id(g.num_vertices(), 0);
    std::vector<bool> in_set(g.num_vertices(), false);
    for (std::size_t i = 0; i < m.size(); ++i) {
        in_set[m[i]] = true;
        new_id[m[i]] = static_cast<vertex_t>(i);
    }
    std::vector<Edge> edges;
    for (vertex_t u : m) {
        auto nb = g.neighbors(u);
        auto ws = g.weights(u);
        for (std::size_t i = 0; i < nb.size(); ++i)
            if (u < nb[i] && in_set[nb[i]])
                edges.push_back({new_id[u], new_id[nb[i]], ws.empty() ? 1.0 : ws[i]});
    }
    InducedSubgraph out;
    out.graph = Graph::from_edges(static_cast<vertex_t>(m.size()), edges, g.weighted());
    out.to_original = m;
    return out;
}

Graph union_graphs(const Graph& g1, const Graph& g2) {
    if (g1.num_vertices() != g2.num_vertices())
        throw std::invalid_argument("union_graphs: vertex counts differ (" +
                                    std::to_string(g1.num_vertices()) + " vs " +
                                    std::to_string(g2.num_vertices()) + ")");
    std::vector<Edge> edges = g1.edge_list();
    std::vector<Edge> e2 = g2.edge_list();
    edges.insert(edges.end(), e2.begin(), e2.end());
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return a.u < b.u || (a.u == b.u && a.v < b.v); });
    std::vector<Edge> merged;
    merged.reserve(edges.size());
    for (const Edge& e : edges) {
        if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v)
            merged.back().w = std::max(merged.back().w, e.w);
        else
            merged.push_back(e);
    }
    return Graph::from_edges(g1.num_vertices(), merged, g1.weighted() || g2.weighted());
}

std::vector<double> degrees(const Graph& g) {
    std::vector<double> d(g.num_vertices());
    for (vertex_t v = 0; v < g.num_vertices(); ++v) d[v] = g.degree(v);
    return d;
}

SubsetComponents::SubsetComponents(std::size_t n)
    : member_epoch_(n, 0), seen_epoch_(n, 0), comp_(n, 0) {}

vertex_t SubsetComponents::run(const Graph& g, std::span<const vertex_t> s,
                               std::vector<vertex_t>& labels_out) {
    ++epoch_;
    for (vertex_t v : s) member_epoch_[v] = epoch_;
    vertex_t next_label = 0;
    for (vertex_t start : s) {
        if (seen_epoch_[start] == epoch_) continue;
        seen_epoch_[start] = epoch_;
        queue_.assign(1, start);
        while (!queue_.empty()) {
            vertex_t v = queue_.back();
            queue_.pop_back();
            comp_[v] = next_label;
            for (vertex_t u : g.neighbors(v)) {
                if (member_epoch_[u] == epoch_ && seen_epoch_[u] != epoch_) {
                    seen_epoch_[u] = epoch_;
                    queue_.push_back(u);
                }
            }
        }
        ++next_label;
    }
    labels_out.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) labels_out[i] = comp_[s[i]];
    return next_label;
}

}  // namespace gtda
