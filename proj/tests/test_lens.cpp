#include <doctest.h>

#include <cmath>
#include <random>

#include "gtda/lens.hpp"
#include "oracles.hpp"

using namespace gtda;

namespace {

LensMatrix column(std::vector<double> values) {
    LensMatrix p(values.size(), 1);
    for (std::size_t i = 0; i < values.size(); ++i) p.at(i, 0) = values[i];
    return p;
}

}  // namespace

TEST_CASE("smooth: zero steps is the identity") {
    const Graph g = Graph::from_edges(2, std::vector<Edge>{{0, 1, 1.0}});
    const LensMatrix p = column({1.0, 0.0});
    const LensMatrix out = smooth(p, g, {0.3, 0});
    CHECK(out.values == p.values);
}

TEST_CASE("smooth: two-vertex path, one step") {
    const Graph g = Graph::from_edges(2, std::vector<Edge>{{0, 1, 1.0}});
    const LensMatrix p = column({1.0, 0.0});
    const LensMatrix out = smooth(p, g, {0.5, 1});
    CHECK(out.at(0, 0) == doctest::Approx(0.5));
    CHECK(out.at(1, 0) == doctest::Approx(0.5));
}

TEST_CASE("smooth: isolated vertices are fixed points") {
    const Graph g = Graph::from_edges(3, std::vector<Edge>{{0, 1, 1.0}});
    const LensMatrix p = column({1.0, 0.0, 0.7});
    const LensMatrix out = smooth(p, g, {0.5, 7});
    CHECK(out.at(2, 0) == doctest::Approx(0.7));
}

TEST_CASE("smooth: validation errors") {
    const Graph g = Graph::from_edges(2, std::vector<Edge>{{0, 1, 1.0}});
    CHECK_THROWS_AS(smooth(column({1.0}), g, {0.5, 1}), std::invalid_argument);
    CHECK_THROWS_AS(smooth(column({1.0, 0.0}), g, {1.5, 1}), std::invalid_argument);
    CHECK_THROWS_AS(smooth(column({std::nan(""), 0.0}), g, {0.5, 1}), std::invalid_argument);
}

TEST_CASE("smooth matches the dense oracle on random graphs") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 5 + rng() % 40;
        const std::size_t m = 1 + rng() % 4;
        const Graph g =
            Graph::from_edges(static_cast<vertex_t>(n), oracle::random_edges(n, 0.15, rng));
        const LensMatrix p = oracle::random_lens(n, m, rng);
        const int steps = 1 + static_cast<int>(rng() % 6);
        const LensMatrix got = smooth(p, g, {0.5, steps});
        const auto expected = oracle::dense_diffusion(g, p.values, m, 0.5, steps);
        for (std::size_t i = 0; i < expected.size(); ++i)
            REQUIRE(got.values[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    }
}

TEST_CASE("smooth: nonnegativity and convex bound") {
    std::mt19937_64 rng(31);
    const std::size_t n = 40, m = 3;
    const Graph g = Graph::from_edges(n, oracle::random_edges(n, 0.1, rng));
    const LensMatrix p = oracle::random_lens(n, m, rng);
    const LensMatrix out = smooth(p, g, {0.5, 4});
    for (std::size_t c = 0; c < m; ++c) {
        double in_max = 0.0, out_max = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            CHECK(out.at(r, c) >= 0.0);
            in_max = std::max(in_max, p.at(r, c));
            out_max = std::max(out_max, out.at(r, c));
        }
        CHECK(out_max <= in_max + 1e-12);
    }
}

TEST_CASE("smooth: one tiny-alpha step moves entries at most alpha*C") {
    std::mt19937_64 rng(37);
    const std::size_t n = 30;
    const Graph g = Graph::from_edges(n, oracle::random_edges(n, 0.15, rng));
    const LensMatrix p = oracle::random_lens(n, 1, rng);
    const double alpha = 1e-4;
    const LensMatrix out = smooth(p, g, {alpha, 1});
    double range = 0.0;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t q = 0; q < n; ++q) range = std::max(range, p.at(r, 0) - p.at(q, 0));
    for (std::size_t r = 0; r < n; ++r)
        CHECK(std::abs(out.at(r, 0) - p.at(r, 0)) <= alpha * range + 1e-15);
}

TEST_CASE("minmax_normalize") {
    SUBCASE("affine rescale") {
        const LensMatrix out = minmax_normalize(column({2.0, 4.0, 6.0}));
        CHECK(out.at(0, 0) == 0.0);
        CHECK(out.at(1, 0) == doctest::Approx(0.5));
        CHECK(out.at(2, 0) == 1.0);
    }
    SUBCASE("constant column maps to zero") {
        const LensMatrix out = minmax_normalize(column({7.0, 7.0, 7.0}));
        for (double v : out.values) CHECK(v == 0.0);
    }
    SUBCASE("idempotent") {
        std::mt19937_64 rng(5);
        const LensMatrix p = oracle::random_lens(25, 3, rng);
        const LensMatrix once = minmax_normalize(p);
        const LensMatrix twice = minmax_normalize(once);
        for (std::size_t i = 0; i < once.values.size(); ++i)
            CHECK(once.values[i] == doctest::Approx(twice.values[i]).epsilon(1e-15));
    }
}

TEST_CASE("max_diff_lens") {
    SUBCASE("single column") {
        CHECK(max_diff_lens(column({0.0, 1.0}), VertexSet({0, 1})) == 0);
    }
    SUBCASE("equal spread breaks ties to the smaller index") {
        LensMatrix p(2, 2);
        p.at(0, 0) = 0.0;
        p.at(1, 0) = 1.0;
        p.at(0, 1) = 1.0;
        p.at(1, 1) = 0.0;
        CHECK(max_diff_lens(p, VertexSet({0, 1})) == 0);
    }
    SUBCASE("matches the exhaustive column scan") {
        std::mt19937_64 rng(41);
        const LensMatrix p = oracle::random_lens(10, 4, rng);
        const VertexSet s({0, 2, 3, 7, 9});
        std::size_t expected = 0;
        double best = -1.0;
        for (std::size_t c = 0; c < p.cols; ++c) {
            double lo = 1e300, hi = -1e300;
            for (vertex_t v : s.members) {
                lo = std::min(lo, p.at(v, c));
                hi = std::max(hi, p.at(v, c));
            }
            if (hi - lo > best) {
                best = hi - lo;
                expected = c;
            }
        }
        CHECK(max_diff_lens(p, s) == expected);
    }
    SUBCASE("argmax invariant under column shift and joint positive rescale") {
        std::mt19937_64 rng(43);
        LensMatrix p = oracle::random_lens(12, 3, rng);
        const VertexSet s({1, 2, 5, 8, 11});
        const std::size_t before = max_diff_lens(p, s);
        for (std::size_t r = 0; r < p.rows; ++r) p.at(r, 1) += 5.0;  // shift one column
        CHECK(max_diff_lens(p, s) == before);
        for (double& v : p.values) v *= 3.5;  // joint rescale
        CHECK(max_diff_lens(p, s) == before);
    }
}

TEST_CASE("lens_distance is the l-infinity row metric") {
    LensMatrix p(3, 2);
    p.at(0, 0) = 0.2;
    p.at(0, 1) = 0.9;
    p.at(1, 0) = 0.5;
    p.at(1, 1) = 0.8;
    CHECK(lens_distance(p, 0, 0) == 0.0);
    CHECK(lens_distance(p, 0, 1) == doctest::Approx(0.3));
    CHECK(lens_distance(p, 1, 0) == doctest::Approx(0.3));

    std::mt19937_64 rng(47);
    const LensMatrix q = oracle::random_lens(20, 4, rng);
    for (int trial = 0; trial < 200; ++trial) {
        const vertex_t a = rng() % 20, b = rng() % 20, c = rng() % 20;
        CHECK(lens_distance(q, a, c) <= lens_distance(q, a, b) + lens_distance(q, b, c) + 1e-15);
    }
}
