#include "gtda/merging.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gtda/parallel.hpp"

namespace gtda {

DistanceFn lens_linf_distance(const LensMatrix& p_smoothed) {
    const LensMatrix* p = &p_smoothed;
    return [p](vertex_t u, vertex_t v) { return lens_distance(*p, u, v); };
}

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);  // keep the smaller id as root
        parent[b] = a;
        return true;
    }
};

struct Candidate {
    bool found = false;
    double distance = std::numeric_limits<double>::infinity();
    vertex_t u = 0;  // inside the small set/component
    vertex_t v = 0;  // outside
};

// Distance ties broken by (u, v) lexicographic order for determinism.
void consider(Candidate& best, double d, vertex_t u, vertex_t v) {
    if (!best.found || d < best.distance ||
        (d == best.distance && (u < best.u || (u == best.u && v < best.v))))
        best = {true, d, u, v};
}

std::vector<std::vector<std::uint32_t>> invert_membership(std::size_t n,
                                                          const std::vector<VertexSet>& sets) {
    std::vector<std::vector<std::uint32_t>> containing(n);
    for (std::uint32_t i = 0; i < sets.size(); ++i)
        for (vertex_t v : sets[i].members) containing[v].push_back(i);
    return containing;
}

}  // namespace

NodeMergeResult node_merging(FinalSets f, const Graph& g, std::uint32_t s1,
                             const DistanceFn& dist, unsigned workers) {
    NodeMergeResult result;
    auto& sets = f.sets;
    std::vector<std::uint8_t> unmergeable(sets.size(), 0);

    for (;;) {
        std::vector<std::uint32_t> smalls;
        for (std::uint32_t i = 0; i < sets.size(); ++i)
            if (!unmergeable[i] && sets[i].members.size() <= s1) smalls.push_back(i);
        if (smalls.empty()) break;

        std::vector<VertexSet> member_sets;
        member_sets.reserve(sets.size());
        for (const FinalSet& fs : sets) member_sets.push_back(fs.members);
        const auto containing = invert_membership(g.num_vertices(), member_sets);

        // Cheapest boundary edge per small set; scans are independent.
        std::vector<Candidate> best(smalls.size());
        parallel_for(smalls.size(), workers, [&](std::size_t k) {
            const VertexSet& s = sets[smalls[k]].members;
            Candidate& b = best[k];
            for (vertex_t u : s.members)
                for (vertex_t v : g.neighbors(u))
                    if (!s.contains(v)) consider(b, dist(u, v), u, v);
        });

        UnionFind uf(sets.size());
        std::vector<MergeDecision> round;
        for (std::size_t k = 0; k < smalls.size(); ++k) {
            const std::uint32_t i = smalls[k];
            if (!best[k].found) {
                unmergeable[i] = 1;
                continue;
            }
            // Target: smallest set containing the far endpoint, then smallest id.
            std::uint32_t target = containing[best[k].v].front();
            for (std::uint32_t j : containing[best[k].v])
                if (sets[j].members.size() < sets[target].members.size()) target = j;
            round.push_back({i, target, best[k].u, best[k].v, best[k].distance});
            uf.unite(i, target);
        }
        if (round.empty()) continue;  // everything flagged; next pass exits
        result.trace.rounds.push_back(std::move(round));

        // Union the chosen pairs' connected components.
        std::vector<std::vector<std::uint32_t>> groups(sets.size());
        for (std::uint32_t i = 0; i < sets.size(); ++i) groups[uf.find(i)].push_back(i);

        std::vector<FinalSet> merged;
        std::vector<std::uint8_t> merged_flags;
        merged.reserve(sets.size());
        for (std::uint32_t root = 0; root < sets.size(); ++root) {
            const auto& grp = groups[root];
            if (grp.empty()) continue;
            if (grp.size() == 1) {
                merged.push_back(std::move(sets[root]));
                merged_flags.push_back(unmergeable[root]);
                continue;
            }
            std::vector<vertex_t> members;
            std::uint32_t largest = grp.front();
            bool forced = false;
            for (std::uint32_t j : grp) {
                members.insert(members.end(), sets[j].members.members.begin(),
                               sets[j].members.members.end());
                forced |= sets[j].forced;
                if (sets[j].members.size() > sets[largest].members.size()) largest = j;
            }
            FinalSet fs;
            fs.members = VertexSet(std::move(members));
            fs.path = sets[largest].path;
            fs.generation = sets[largest].generation;
            fs.forced = forced;
            merged.push_back(std::move(fs));
            merged_flags.push_back(0);
        }
        sets = std::move(merged);
        unmergeable = std::move(merged_flags);
    }

    result.unmergeable = std::move(unmergeable);
    result.sets = std::move(f);
    return result;
}

std::uint32_t NodeMergeResult::unmergeable_count() const {
    return static_cast<std::uint32_t>(std::count(unmergeable.begin(), unmergeable.end(), 1));
}

ComponentMergeResult component_merging(const ReebNet& net, const Graph& g, std::uint32_t s2,
                                       const DistanceFn& dist, unsigned workers) {
    ComponentMergeResult result;
    const std::size_t num_nodes = net.nodes.size();
    const auto containing = invert_membership(g.num_vertices(), net.nodes);

    std::vector<ReebEdge> extra = net.extra_edges;
    std::vector<std::pair<vertex_t, vertex_t>> bridges = net.extra_bridges;
    std::vector<std::uint8_t> node_excluded(num_nodes, 0);

    for (;;) {
        UnionFind uf(num_nodes);
        for (const ReebEdge& e : net.overlap_edges) uf.unite(e.a, e.b);
        for (const ReebEdge& e : extra) uf.unite(e.a, e.b);
        std::vector<std::uint32_t> node_root(num_nodes);
        std::vector<std::vector<std::uint32_t>> comp_nodes(num_nodes);
        for (std::uint32_t i = 0; i < num_nodes; ++i) {
            node_root[i] = uf.find(i);
            comp_nodes[node_root[i]].push_back(i);
        }

        std::vector<std::uint32_t> smalls;  // roots of mergeable small components
        for (std::uint32_t root = 0; root < num_nodes; ++root) {
            const auto& members = comp_nodes[root];
            if (members.empty() || node_excluded[members.front()]) continue;
            if (members.size() <= s2) smalls.push_back(root);
        }
        if (smalls.empty()) break;

        std::vector<std::uint32_t> vertex_root(g.num_vertices(), 0);
        for (vertex_t v = 0; v < g.num_vertices(); ++v) {
            if (containing[v].empty())
                throw std::invalid_argument("component_merging: datapoint " + std::to_string(v) +
                                            " is not covered by any node");
            vertex_root[v] = node_root[containing[v].front()];
        }

        // Cheapest g-edge leaving each small component's datapoint union.
        std::vector<Candidate> best(smalls.size());
        parallel_for(smalls.size(), workers, [&](std::size_t k) {
            const std::uint32_t root = smalls[k];
            Candidate& b = best[k];
            for (std::uint32_t i : comp_nodes[root])
                for (vertex_t u : net.nodes[i].members)
                    for (vertex_t v : g.neighbors(u))
                        if (vertex_root[v] != root) consider(b, dist(u, v), u, v);
        });

        UnionFind round_uf = uf;
        std::vector<MergeDecision> round;
        for (std::size_t k = 0; k < smalls.size(); ++k) {
            const std::uint32_t root = smalls[k];
            if (!best[k].found) {
                for (std::uint32_t i : comp_nodes[root]) node_excluded[i] = 1;
                ++result.excluded_components;
                continue;
            }
            // Source: smallest node id containing the inside endpoint.
            const std::uint32_t src = containing[best[k].u].front();
            // Target: smallest node containing the outside endpoint, then smallest id.
            std::uint32_t tgt = containing[best[k].v].front();
            for (std::uint32_t j : containing[best[k].v])
                if (net.nodes[j].size() < net.nodes[tgt].size()) tgt = j;

            if (round_uf.find(src) == round_uf.find(tgt)) continue;  // joined earlier this round
            round_uf.unite(src, tgt);
            round.push_back({src, tgt, best[k].u, best[k].v, best[k].distance});
            // Bridge stored with the endpoint belonging to the smaller node id first.
            if (src < tgt)
                bridges.emplace_back(best[k].u, best[k].v);
            else
                bridges.emplace_back(best[k].v, best[k].u);
            extra.push_back({std::min(src, tgt), std::max(src, tgt)});
        }
        if (!round.empty()) result.trace.rounds.push_back(std::move(round));
    }

    // Drop excluded nodes, compact ids; surviving order is preserved.
    ReebNet out;
    out.num_datapoints = net.num_datapoints;
    std::vector<std::uint32_t> new_id(num_nodes, std::numeric_limits<std::uint32_t>::max());
    std::vector<vertex_t> excluded_vertices;
    for (std::uint32_t i = 0; i < num_nodes; ++i) {
        if (node_excluded[i]) {
            excluded_vertices.insert(excluded_vertices.end(), net.nodes[i].members.begin(),
                                     net.nodes[i].members.end());
        } else {
            new_id[i] = static_cast<std::uint32_t>(out.nodes.size());
            out.nodes.push_back(net.nodes[i]);
        }
    }
    out.excluded = VertexSet(std::move(excluded_vertices));
    for (const ReebEdge& e : net.overlap_edges)
        if (!node_excluded[e.a] && !node_excluded[e.b])
            out.overlap_edges.push_back({new_id[e.a], new_id[e.b]});
    for (std::size_t k = 0; k < extra.size(); ++k) {
        out.extra_edges.push_back({new_id[extra[k].a], new_id[extra[k].b]});
        out.extra_bridges.push_back(bridges[k]);
    }
    result.net = std::move(out);
    return result;
}

}  // namespace gtda
