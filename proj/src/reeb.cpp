#include "gtda/reeb.hpp"

#include <algorithm>
#include <stdexcept>

#include "gtda/parallel.hpp"

namespace gtda {

ComponentLabeling ReebNet::components() const {
    std::vector<Edge> edges;
    edges.reserve(overlap_edges.size() + extra_edges.size());
    for (const ReebEdge& e : overlap_edges) edges.push_back({e.a, e.b, 1.0});
    for (const ReebEdge& e : extra_edges) edges.push_back({e.a, e.b, 1.0});
    Graph net = Graph::from_edges(static_cast<vertex_t>(nodes.size()), edges);
    return connected_components(net);
}

ReebNet build_reeb_net(const FinalSets& f, vertex_t num_datapoints, unsigned workers) {
    if (f.sets.empty()) throw std::invalid_argument("build_reeb_net: no finalized sets");
    ReebNet net;
    net.num_datapoints = num_datapoints;
    net.nodes.reserve(f.sets.size());
    for (const FinalSet& fs : f.sets) net.nodes.push_back(fs.members);

    // Incidence lists: datapoint -> nodes containing it.
    std::vector<std::uint32_t> counts(num_datapoints, 0);
    for (const VertexSet& node : net.nodes)
        for (vertex_t v : node.members) ++counts[v];
    std::vector<std::size_t> offsets(static_cast<std::size_t>(num_datapoints) + 1, 0);
    for (vertex_t v = 0; v < num_datapoints; ++v) offsets[v + 1] = offsets[v] + counts[v];
    std::vector<std::uint32_t> incidence(offsets.back());
    {
        std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
        for (std::uint32_t i = 0; i < net.nodes.size(); ++i)
            for (vertex_t v : net.nodes[i].members) incidence[cursor[v]++] = i;
    }

    // Two nodes are adjacent iff some datapoint lists both (2-hop rule).
    // Node i collects partners j > i from its members' incidence lists.
    std::vector<std::vector<std::uint32_t>> partners(net.nodes.size());
    parallel_for(net.nodes.size(), workers, [&](std::size_t i) {
        std::vector<std::uint32_t>& out = partners[i];
        for (vertex_t v : net.nodes[i].members)
            for (std::size_t k = offsets[v]; k < offsets[v + 1]; ++k)
                if (incidence[k] > i) out.push_back(incidence[k]);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    });
    for (std::uint32_t i = 0; i < partners.size(); ++i)
        for (std::uint32_t j : partners[i]) net.overlap_edges.push_back({i, j});
    return net;
}

Graph project(const ReebNet& net, const Graph& g) {
    if (net.num_datapoints != g.num_vertices())
        throw std::invalid_argument("project: net was built over a different vertex count");

    // Mark membership per node with an epoch array, collect internal edges.
    std::vector<std::uint32_t> epoch_of(g.num_vertices(), 0);
    std::uint32_t epoch = 0;
    std::vector<std::pair<vertex_t, vertex_t>> edges;
    for (const VertexSet& node : net.nodes) {
        ++epoch;
        for (vertex_t v : node.members) epoch_of[v] = epoch;
        for (vertex_t v : node.members)
            for (vertex_t u : g.neighbors(v))
                if (u > v && epoch_of[u] == epoch) edges.emplace_back(v, u);
    }
    for (auto [u, v] : net.extra_bridges)
        edges.emplace_back(std::min(u, v), std::max(u, v));

    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<Edge> out;
    out.reserve(edges.size());
    for (auto [u, v] : edges) {
        double w = 1.0;
        if (g.weighted()) {
            auto nb = g.neighbors(u);
            auto it = std::lower_bound(nb.begin(), nb.end(), v);
            if (it != nb.end() && *it == v)
                w = g.weights(u)[static_cast<std::size_t>(it - nb.begin())];
        }
        out.push_back({u, v, w});
    }
    return Graph::from_edges(g.num_vertices(), out, g.weighted());
}

std::vector<NodeSummary> summarize(const ReebNet& net, std::span<const std::int32_t> labels,
                                   std::int32_t num_classes, SummaryMode mode,
                                   std::span<const std::uint8_t> training_mask) {
    if (labels.size() != net.num_datapoints)
        throw std::invalid_argument("summarize: labels do not cover the datapoints");
    if (mode == SummaryMode::Training && training_mask.size() != labels.size())
        throw std::invalid_argument("summarize: training mode requires a mask");

    std::vector<NodeSummary> out;
    out.reserve(net.nodes.size());
    for (const VertexSet& node : net.nodes) {
        NodeSummary s;
        s.size = node.size();
        std::vector<std::size_t> counts(static_cast<std::size_t>(num_classes), 0);
        std::size_t total = 0;
        for (vertex_t v : node.members) {
            if (mode == SummaryMode::Training && !training_mask[v]) continue;
            const std::int32_t c = labels[v];
            if (c < 0) continue;  // undefined label
            if (c >= num_classes)
                throw std::invalid_argument("summarize: label out of range");
            ++counts[static_cast<std::size_t>(c)];
            ++total;
        }
        if (total == 0) {
            s.empty_mixture = true;
        } else {
            s.mixture.resize(counts.size());
            for (std::size_t c = 0; c < counts.size(); ++c)
                s.mixture[c] = static_cast<double>(counts[c]) / static_cast<double>(total);
            s.dominant = static_cast<std::int32_t>(
                std::max_element(counts.begin(), counts.end()) - counts.begin());
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace gtda
