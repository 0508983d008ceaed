#include "gtda/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <stdexcept>

namespace gtda {

namespace {

constexpr double kDisplacementTol = 1e-4;
constexpr int kMaxSweeps = 1000;

// Majorization sweeps for one component given its pairwise hop distances.
void stress_majorize(const std::vector<std::uint32_t>& dist, std::size_t k,
                     std::vector<std::array<double, 2>>& pos) {
    std::vector<std::array<double, 2>> next(k);
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double max_move = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            double nx = 0.0, ny = 0.0, denom = 0.0;
            for (std::size_t j = 0; j < k; ++j) {
                if (j == i) continue;
                const double d = static_cast<double>(dist[i * k + j]);
                const double w = 1.0 / (d * d);
                double dx = pos[i][0] - pos[j][0];
                double dy = pos[i][1] - pos[j][1];
                double norm = std::sqrt(dx * dx + dy * dy);
                if (norm < 1e-12) {  // coincident points: push apart deterministically
                    dx = 1e-6 * (static_cast<double>(i) - static_cast<double>(j));
                    dy = 1e-6;
                    norm = std::sqrt(dx * dx + dy * dy);
                }
                nx += w * (pos[j][0] + d * dx / norm);
                ny += w * (pos[j][1] + d * dy / norm);
                denom += w;
            }
            next[i] = {nx / denom, ny / denom};
        }
        for (std::size_t i = 0; i < k; ++i) {
            max_move = std::max({max_move, std::abs(next[i][0] - pos[i][0]),
                                 std::abs(next[i][1] - pos[i][1])});
            pos[i] = next[i];
        }
        if (max_move < kDisplacementTol) break;
    }
}

}  // namespace

Layout layout_reeb(const ReebNet& net, std::uint64_t seed) {
    const std::size_t n = net.nodes.size();
    if (n == 0) throw std::invalid_argument("layout_reeb: empty net");

    // Node adjacency over overlap + extra edges.
    std::vector<std::vector<std::uint32_t>> adj(n);
    auto add = [&](const ReebEdge& e) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    };
    for (const ReebEdge& e : net.overlap_edges) add(e);
    for (const ReebEdge& e : net.extra_edges) add(e);

    ComponentLabeling cc = net.components();
    std::vector<std::vector<std::uint32_t>> comps(cc.count);
    for (std::uint32_t i = 0; i < n; ++i) comps[cc.label[i]].push_back(i);
    // Largest components first; node ids keep ties stable.
    std::vector<std::uint32_t> order(cc.count);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (comps[a].size() != comps[b].size()) return comps[a].size() > comps[b].size();
        return comps[a].front() < comps[b].front();
    });

    Layout layout;
    layout.positions.assign(n, {0.0, 0.0});
    std::vector<std::array<double, 2>> bbox_min(cc.count), bbox_max(cc.count);

    for (std::uint32_t rank = 0; rank < order.size(); ++rank) {
        const auto& nodes = comps[order[rank]];
        const std::size_t k = nodes.size();
        std::mt19937_64 rng(seed * 0x100000001b3ull + rank);
        if (k == 1) {
            layout.positions[nodes[0]] = {0.0, 0.0};
            bbox_min[rank] = bbox_max[rank] = {0.0, 0.0};
            continue;
        }

        // All-pairs hop distances inside the component (BFS per node).
        std::vector<std::uint32_t> local_id(n, 0);
        for (std::size_t i = 0; i < k; ++i) local_id[nodes[i]] = static_cast<std::uint32_t>(i);
        std::vector<std::uint32_t> dist(k * k, 0);
        std::vector<std::uint32_t> hop(k);
        std::queue<std::uint32_t> frontier;
        for (std::size_t src = 0; src < k; ++src) {
            std::fill(hop.begin(), hop.end(), std::numeric_limits<std::uint32_t>::max());
            hop[src] = 0;
            frontier.push(nodes[src]);
            while (!frontier.empty()) {
                const std::uint32_t v = frontier.front();
                frontier.pop();
                for (std::uint32_t u : adj[v]) {
                    if (hop[local_id[u]] != std::numeric_limits<std::uint32_t>::max()) continue;
                    hop[local_id[u]] = hop[local_id[v]] + 1;
                    frontier.push(u);
                }
            }
            for (std::size_t j = 0; j < k; ++j) dist[src * k + j] = hop[j];
        }

        std::uint32_t diameter = 1;
        for (std::uint32_t d : dist) diameter = std::max(diameter, d);
        std::uniform_real_distribution<double> unif(0.0, static_cast<double>(diameter));
        std::vector<std::array<double, 2>> pos(k);
        for (auto& p : pos) p = {unif(rng), unif(rng)};

        stress_majorize(dist, k, pos);

        std::array<double, 2> lo = {std::numeric_limits<double>::infinity(),
                                    std::numeric_limits<double>::infinity()};
        std::array<double, 2> hi = {-lo[0], -lo[1]};
        for (const auto& p : pos) {
            lo = {std::min(lo[0], p[0]), std::min(lo[1], p[1])};
            hi = {std::max(hi[0], p[0]), std::max(hi[1], p[1])};
        }
        bbox_min[rank] = lo;
        bbox_max[rank] = hi;
        for (std::size_t i = 0; i < k; ++i) layout.positions[nodes[i]] = pos[i];
    }

    // Tile components on a grid, decreasing size, one cell per component.
    double cell_w = 0.0, cell_h = 0.0;
    for (std::uint32_t rank = 0; rank < order.size(); ++rank) {
        cell_w = std::max(cell_w, bbox_max[rank][0] - bbox_min[rank][0]);
        cell_h = std::max(cell_h, bbox_max[rank][1] - bbox_min[rank][1]);
    }
    const double pad = 1.0 + 0.1 * std::max(cell_w, cell_h);
    cell_w += pad;
    cell_h += pad;
    const std::size_t grid_cols =
        static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(order.size()))));
    for (std::uint32_t rank = 0; rank < order.size(); ++rank) {
        const double ox =
            static_cast<double>(rank % grid_cols) * cell_w - bbox_min[rank][0];
        const double oy =
            static_cast<double>(rank / grid_cols) * cell_h - bbox_min[rank][1];
        for (std::uint32_t node : comps[order[rank]]) {
            layout.positions[node][0] += ox;
            layout.positions[node][1] += oy;
        }
    }
    return layout;
}

}  // namespace gtda
