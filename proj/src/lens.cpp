#include "gtda/lens.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "gtda/parallel.hpp"

namespace gtda {

LensMatrix smooth(const LensMatrix& p, const Graph& g, SmoothingParams sp, unsigned workers) {
    if (p.rows != g.num_vertices())
        throw std::invalid_argument("smooth: lens has " + std::to_string(p.rows) +
                                    " rows but graph has " + std::to_string(g.num_vertices()) +
                                    " vertices");
    if (!(sp.alpha > 0.0 && sp.alpha < 1.0))
        throw std::invalid_argument("smooth: alpha must be in (0,1)");
    if (sp.steps < 0)
        throw std::invalid_argument("smooth: steps must be nonnegative");
    for (double v : p.values)
        if (!std::isfinite(v)) throw std::invalid_argument("smooth: non-finite lens value");

    if (sp.steps == 0) return p;

    const std::size_t m = p.cols;
    const double a = sp.alpha;
    std::vector<double> inv_degree(p.rows);
    for (vertex_t v = 0; v < g.num_vertices(); ++v) {
        double d = g.degree(v);
        inv_degree[v] = d > 0.0 ? 1.0 / d : 0.0;
    }

    LensMatrix cur = p;
    LensMatrix next = p;
    for (int step = 0; step < sp.steps; ++step) {
        parallel_for(p.rows, workers, [&](std::size_t v) {
            double* out = next.values.data() + v * m;
            const double* base = p.values.data() + v * m;
            auto nb = g.neighbors(static_cast<vertex_t>(v));
            auto ws = g.weights(static_cast<vertex_t>(v));
            if (nb.empty()) {
                // Isolated vertex: Dinv*A row acts as identity on itself.
                const double* self = cur.values.data() + v * m;
                for (std::size_t c = 0; c < m; ++c)
                    out[c] = (1.0 - a) * base[c] + a * self[c];
                return;
            }
            for (std::size_t c = 0; c < m; ++c) out[c] = 0.0;
            for (std::size_t i = 0; i < nb.size(); ++i) {
                const double w = ws.empty() ? 1.0 : ws[i];
                const double* nrow = cur.values.data() + static_cast<std::size_t>(nb[i]) * m;
                for (std::size_t c = 0; c < m; ++c) out[c] += w * nrow[c];
            }
            const double scale = a * inv_degree[v];
            for (std::size_t c = 0; c < m; ++c)
                out[c] = (1.0 - a) * base[c] + scale * out[c];
        });
        std::swap(cur.values, next.values);
    }
    return cur;
}

LensMatrix minmax_normalize(const LensMatrix& p) {
    for (double v : p.values)
        if (!std::isfinite(v)) throw std::invalid_argument("minmax_normalize: non-finite value");
    LensMatrix out = p;
    for (std::size_t c = 0; c < p.cols; ++c) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < p.rows; ++r) {
            lo = std::min(lo, p.at(r, c));
            hi = std::max(hi, p.at(r, c));
        }
        if (p.rows == 0) continue;
        const double range = hi - lo;
        if (range == 0.0) {
            for (std::size_t r = 0; r < p.rows; ++r) out.at(r, c) = 0.0;
        } else {
            for (std::size_t r = 0; r < p.rows; ++r)
                out.at(r, c) = (p.at(r, c) - lo) / range;
        }
    }
    return out;
}

ColumnSpread max_spread_column(const LensMatrix& p, std::span<const vertex_t> members) {
    if (members.empty())
        throw std::invalid_argument("max_spread_column: empty vertex set");
    ColumnSpread best;
    double best_spread = -1.0;
    for (std::size_t c = 0; c < p.cols; ++c) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (vertex_t v : members) {
            const double x = p.at(v, c);
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        if (hi - lo > best_spread) {
            best_spread = hi - lo;
            best = {c, lo, hi};
        }
    }
    return best;
}

std::size_t max_diff_lens(const LensMatrix& p, const VertexSet& s) {
    return max_spread_column(p, s.members).column;
}

double lens_distance(const LensMatrix& p, vertex_t u, vertex_t v) {
    const double* a = p.values.data() + static_cast<std::size_t>(u) * p.cols;
    const double* b = p.values.data() + static_cast<std::size_t>(v) * p.cols;
    double d = 0.0;
    for (std::size_t c = 0; c < p.cols; ++c) d = std::max(d, std::abs(a[c] - b[c]));
    return d;
}

}  // namespace gtda
