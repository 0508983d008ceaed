#include <doctest.h>

#include <random>
#include <set>

#include "gtda/splitter.hpp"
#include "oracles.hpp"

using namespace gtda;

namespace {

Graph path_graph(vertex_t n) {
    std::vector<Edge> edges;
    for (vertex_t v = 0; v + 1 < n; ++v) edges.push_back({v, static_cast<vertex_t>(v + 1), 1.0});
    return Graph::from_edges(n, edges);
}

LensMatrix column(std::vector<double> values) {
    LensMatrix p(values.size(), 1);
    for (std::size_t i = 0; i < values.size(); ++i) p.at(i, 0) = values[i];
    return p;
}

GtdaParams params_with(std::uint32_t k, double d, double r) {
    GtdaParams p;
    p.max_size = k;
    p.min_diff = d;
    p.overlap = r;
    return p;
}

}  // namespace

TEST_CASE("split_once: clean halves on a path") {
    const Graph g = path_graph(4);
    const LensMatrix p = column({0.0, 0.3, 0.7, 1.0});
    // Cutoff 0.55 left, lower bound 0.5 right: bins {0,1} and {2,3}.
    const auto parts = split_once(g, p, VertexSet({0, 1, 2, 3}), 0, 0.1);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].members == std::vector<vertex_t>{0, 1});
    CHECK(parts[1].members == std::vector<vertex_t>{2, 3});
}

TEST_CASE("split_once: overlap band lands in both bins") {
    const Graph g = path_graph(4);
    const LensMatrix p = column({0.0, 0.4, 0.52, 1.0});
    const auto parts = split_once(g, p, VertexSet({0, 1, 2, 3}), 0, 0.1);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].members == std::vector<vertex_t>{0, 1, 2});
    CHECK(parts[1].members == std::vector<vertex_t>{2, 3});
}

TEST_CASE("split_once: r=0 keeps midpoint values on the left") {
    const Graph g = path_graph(3);
    const LensMatrix p = column({0.0, 0.5, 1.0});  // value exactly at the midpoint
    const auto parts = split_once(g, p, VertexSet({0, 1, 2}), 0, 0.0);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].members == std::vector<vertex_t>{0, 1});
    CHECK(parts[1].members == std::vector<vertex_t>{2});
}

TEST_CASE("split_once: disconnected bins come back as separate components") {
    // 0-1 and 2-3 disconnected; lens spans both bins within each piece.
    const Graph g = Graph::from_edges(4, std::vector<Edge>{{0, 1, 1.0}, {2, 3, 1.0}});
    const LensMatrix p = column({0.0, 1.0, 0.1, 0.9});
    const auto parts = split_once(g, p, VertexSet({0, 1, 2, 3}), 0, 0.0);
    CHECK(parts.size() == 4);
}

TEST_CASE("split_once rejects degenerate requests") {
    const Graph g = path_graph(3);
    CHECK_THROWS_AS(split_once(g, column({0, 0, 0}), VertexSet({0}), 0, 0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(split_once(g, column({0, 0, 0}), VertexSet({0, 1, 2}), 0, 0.1),
                    std::invalid_argument);
}

TEST_CASE("gtda_split: small components finalize immediately") {
    const Graph g = Graph::from_edges(5, std::vector<Edge>{{0, 1, 1.0}, {2, 3, 1.0}});
    const LensMatrix p = minmax_normalize(column({0.0, 1.0, 0.2, 0.8, 0.5}));
    const FinalSets f = gtda_split(g, p, params_with(5, 0.0, 0.1));
    CHECK(f.sets.size() == 3);
    CHECK(f.generations == 0);
}

TEST_CASE("gtda_split: 64-vertex path splits into contiguous runs covering everything") {
    const vertex_t n = 64;
    const Graph g = path_graph(n);
    LensMatrix p(n, 1);
    for (vertex_t v = 0; v < n; ++v) p.at(v, 0) = static_cast<double>(v) / (n - 1);
    const FinalSets f = gtda_split(g, p, params_with(8, 0.0, 0.0));

    std::set<vertex_t> covered;
    for (const FinalSet& fs : f.sets) {
        REQUIRE(fs.members.size() <= 8);
        // Contiguity: members of a path component form an interval.
        for (std::size_t i = 1; i < fs.members.size(); ++i)
            CHECK(fs.members.members[i] == fs.members.members[i - 1] + 1);
        covered.insert(fs.members.members.begin(), fs.members.members.end());
    }
    CHECK(covered.size() == n);
}

TEST_CASE("gtda_split invariants on random instances") {
    std::mt19937_64 rng(53);
    SubsetComponents scratch(600);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 30 + rng() % 270;
        const Graph g =
            Graph::from_edges(static_cast<vertex_t>(n), oracle::random_edges(n, 0.03, rng));
        const LensMatrix p = minmax_normalize(oracle::random_lens(n, 1 + rng() % 3, rng));
        GtdaParams params = params_with(2 + rng() % 20, 0.0, 0.25 * (trial % 4) / 4.0);
        const FinalSets f = gtda_split(g, p, params);

        std::set<vertex_t> covered;
        for (const FinalSet& fs : f.sets) {
            // Dichotomy: small enough, or no lens varies beyond d.
            const bool small = fs.members.size() <= params.max_size;
            const double spread = max_spread_column(p, fs.members.members).spread();
            CHECK((small || spread <= params.min_diff));
            // Connectivity, against the component scratch directly.
            std::vector<vertex_t> labels;
            CHECK(scratch.run(g, fs.members.members, labels) == 1);
            covered.insert(fs.members.members.begin(), fs.members.members.end());
        }
        REQUIRE(covered.size() == n);
    }
}

TEST_CASE("gtda_split: stall guard force-finalizes when overlap swallows the set") {
    // r >= 0.5 makes the left bin cover everything when values cluster.
    const Graph g = path_graph(4);
    const LensMatrix p = column({0.0, 0.5, 0.6, 1.0});
    const FinalSets f = gtda_split(g, p, params_with(2, 0.0, 0.8));
    CHECK(f.forced_count > 0);
    std::set<vertex_t> covered;
    for (const FinalSet& fs : f.sets)
        covered.insert(fs.members.members.begin(), fs.members.members.end());
    CHECK(covered.size() == 4);
}

TEST_CASE("gtda_split: generation counter stays within the progress bound") {
    // With r <= 0.25 the chosen lens interval shrinks by at least 0.75 per
    // split, so generations stay under 4*t*L for a 2^-t stop threshold.
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 100 + rng() % 300;
        const std::size_t lens_count = 1 + rng() % 4;
        const Graph g =
            Graph::from_edges(static_cast<vertex_t>(n), oracle::random_edges(n, 0.05, rng));
        const LensMatrix p = minmax_normalize(oracle::random_lens(n, lens_count, rng));
        const int t = 2 + static_cast<int>(rng() % 5);
        GtdaParams params = params_with(1, std::pow(2.0, -t), 0.25 * (trial % 2));
        const FinalSets f = gtda_split(g, p, params);
        CHECK(f.generations <= 4u * static_cast<unsigned>(t) * lens_count);
    }
}

TEST_CASE("gtda_split: deterministic across worker counts") {
    std::mt19937_64 rng(61);
    const std::size_t n = 200;
    const Graph g = Graph::from_edges(n, oracle::random_edges(n, 0.04, rng));
    const LensMatrix p = minmax_normalize(oracle::random_lens(n, 3, rng));
    const FinalSets a = gtda_split(g, p, params_with(10, 0.0, 0.1), 1);
    const FinalSets b = gtda_split(g, p, params_with(10, 0.0, 0.1), 4);
    REQUIRE(a.sets.size() == b.sets.size());
    for (std::size_t i = 0; i < a.sets.size(); ++i)
        CHECK(a.sets[i].members == b.sets[i].members);
}
