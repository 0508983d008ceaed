#include <doctest.h>

#include <random>
#include <set>

#include "gtda/mapper.hpp"
#include "oracles.hpp"

using namespace gtda;

namespace {

LensMatrix column(std::vector<double> values) {
    LensMatrix p(values.size(), 1);
    for (std::size_t i = 0; i < values.size(); ++i) p.at(i, 0) = values[i];
    return p;
}

}  // namespace

TEST_CASE("mapper_cover: one lens, two bins") {
    SUBCASE("no overlap partitions the values") {
        const auto cells = mapper_cover(column({0.2, 0.8}), {2, 0.0});
        REQUIRE(cells.size() == 2);
        CHECK(cells[0].members.members == std::vector<vertex_t>{0});
        CHECK(cells[1].members.members == std::vector<vertex_t>{1});
    }
    SUBCASE("20% overlap catches the midpoint in both bins") {
        // bin0 = [0, 0.6), bin1 = [0.4, 1]
        const auto cells = mapper_cover(column({0.5}), {2, 0.2});
        REQUIRE(cells.size() == 2);
        CHECK(cells[0].members.members == std::vector<vertex_t>{0});
        CHECK(cells[1].members.members == std::vector<vertex_t>{0});
    }
    SUBCASE("boundary values with zero overlap fall in exactly one bin") {
        const auto cells = mapper_cover(column({0.0, 0.5, 1.0}), {2, 0.0});
        REQUIRE(cells.size() == 2);
        CHECK(cells[0].members.members == std::vector<vertex_t>{0});
        CHECK(cells[1].members.members == std::vector<vertex_t>{1, 2});
    }
}

TEST_CASE("mapper_cover: tensor product against the interval-scan oracle") {
    std::mt19937_64 rng(163);
    LensMatrix p = oracle::random_lens(60, 2, rng);
    const MapperParams params{10, 0.1};
    const auto cells = mapper_cover(p, params);
    CHECK(cells.size() <= 100);

    // Oracle: per point, scan every (bin_a, bin_b) cell for containment.
    const double w = 0.1, ext = params.overlap_fraction * w;
    auto in_bin = [&](double x, std::uint32_t b) {
        const double lo = b * w - ext, hi = (b + 1) * w + ext;
        return x >= lo && (x < hi || (b == 9 && x <= hi));
    };
    std::set<std::pair<std::vector<std::uint32_t>, vertex_t>> expected;
    for (vertex_t v = 0; v < 60; ++v)
        for (std::uint32_t a = 0; a < 10; ++a)
            for (std::uint32_t b = 0; b < 10; ++b)
                if (in_bin(p.at(v, 0), a) && in_bin(p.at(v, 1), b))
                    expected.insert({{a, b}, v});
    std::set<std::pair<std::vector<std::uint32_t>, vertex_t>> got;
    std::size_t total_members = 0;
    for (const MapperCell& cell : cells) {
        total_members += cell.members.size();
        for (vertex_t v : cell.members.members) got.insert({cell.bin_ids, v});
    }
    REQUIRE(got == expected);
    CHECK(total_members >= 60);  // every datapoint sits in at least one cell
}

TEST_CASE("mapper_reeb") {
    SUBCASE("single cell over a connected graph is one node, no edges") {
        const Graph g = Graph::from_edges(3, std::vector<Edge>{{0, 1, 1.0}, {1, 2, 1.0}});
        std::vector<MapperCell> cover(1);
        cover[0].bin_ids = {0};
        cover[0].members = VertexSet({0, 1, 2});
        const ReebNet net = mapper_reeb(g, cover);
        CHECK(net.nodes.size() == 1);
        CHECK(net.overlap_edges.empty());
        CHECK(net.extra_edges.empty());
    }
    SUBCASE("two cells sharing points get an overlap edge") {
        const Graph g = Graph::from_edges(3, std::vector<Edge>{{0, 1, 1.0}, {1, 2, 1.0}});
        std::vector<MapperCell> cover(2);
        cover[0].bin_ids = {0};
        cover[0].members = VertexSet({0, 1});
        cover[1].bin_ids = {1};
        cover[1].members = VertexSet({1, 2});
        const ReebNet net = mapper_reeb(g, cover);
        CHECK(net.nodes.size() == 2);
        REQUIRE(net.overlap_edges.size() == 1);
    }
    SUBCASE("disconnected cell members split into separate Reeb nodes") {
        const Graph g = Graph::from_edges(4, std::vector<Edge>{{0, 1, 1.0}, {2, 3, 1.0}});
        std::vector<MapperCell> cover(1);
        cover[0].bin_ids = {0};
        cover[0].members = VertexSet({0, 1, 2, 3});
        const ReebNet net = mapper_reeb(g, cover);
        CHECK(net.nodes.size() == 2);
    }
}
