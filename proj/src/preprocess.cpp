#include "gtda/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "gtda/parallel.hpp"

namespace gtda {

namespace {

constexpr double kPowerTolerance = 1e-9;
constexpr int kPowerMaxIters = 1000;

// Fixes the direction convention: first coordinate of meaningful magnitude
// is made positive.
void fix_sign(std::vector<double>& v) {
    for (double x : v) {
        if (std::abs(x) > 1e-12) {
            if (x < 0.0)
                for (double& y : v) y = -y;
            return;
        }
    }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

PcaResult pca_whiten(const EmbeddingMatrix& e, std::size_t target_dim) {
    if (target_dim == 0) throw std::invalid_argument("pca_whiten: target_dim must be >= 1");
    if (target_dim > std::min(e.rows, e.cols))
        throw std::invalid_argument("pca_whiten: target_dim exceeds min(n, D)");
    for (double v : e.values)
        if (!std::isfinite(v)) throw std::invalid_argument("pca_whiten: non-finite value");

    const std::size_t n = e.rows, d = e.cols;
    std::vector<double> mean(d, 0.0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < d; ++c) mean[c] += e.at(r, c);
    for (double& m : mean) m /= static_cast<double>(n);

    // Covariance of the centered data (sample normalization).
    std::vector<double> cov(d * d, 0.0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i < d; ++i) {
            const double xi = e.at(r, i) - mean[i];
            for (std::size_t j = i; j < d; ++j)
                cov[i * d + j] += xi * (e.at(r, j) - mean[j]);
        }
    const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            cov[i * d + j] /= denom;
            cov[j * d + i] = cov[i * d + j];
        }
    double trace = 0.0;
    for (std::size_t i = 0; i < d; ++i) trace += cov[i * d + i];

    // Deflated power iteration, one component at a time. The candidate is
    // re-orthogonalized against found components every step, so the final
    // Rayleigh quotient reads the residual spectrum only.
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::vector<std::vector<double>> components;
    std::vector<double> eigenvalues;
    std::vector<double> v(d), av(d);
    const auto orthogonalize = [&](std::vector<double>& x) {
        for (const auto& u : components) {
            const double proj = dot(u, x);
            for (std::size_t i = 0; i < d; ++i) x[i] -= proj * u[i];
        }
        return std::sqrt(dot(x, x));
    };
    for (std::size_t comp = 0; comp < target_dim; ++comp) {
        std::uniform_real_distribution<double> unif(-1.0, 1.0);
        for (double& x : v) x = unif(rng);
        if (const double n0 = orthogonalize(v); n0 > 0.0)
            for (double& x : v) x /= n0;
        for (int iter = 0; iter < kPowerMaxIters; ++iter) {
            for (std::size_t i = 0; i < d; ++i) {
                double s = 0.0;
                const double* row = cov.data() + i * d;
                for (std::size_t j = 0; j < d; ++j) s += row[j] * v[j];
                av[i] = s;
            }
            const double norm = orthogonalize(av);
            if (norm <= 0.0) break;  // hit the nullspace
            double diff = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                const double next = av[i] / norm;
                diff = std::max(diff, std::abs(next - v[i]));
                v[i] = next;
            }
            if (diff < kPowerTolerance) break;
        }
        for (std::size_t i = 0; i < d; ++i) {
            double s = 0.0;
            const double* row = cov.data() + i * d;
            for (std::size_t j = 0; j < d; ++j) s += row[j] * v[j];
            av[i] = s;
        }
        const double lambda = dot(v, av);
        if (lambda <= 1e-10 * std::max(trace, 1.0)) break;  // rank exhausted
        fix_sign(v);
        components.push_back(v);
        eigenvalues.push_back(lambda);
    }

    PcaResult out;
    out.retained = components.size();
    out.eigenvalues = eigenvalues;
    out.transformed = EmbeddingMatrix(n, out.retained);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k < out.retained; ++k) {
            double s = 0.0;
            for (std::size_t c = 0; c < d; ++c)
                s += (e.at(r, c) - mean[c]) * components[k][c];
            out.transformed.at(r, k) = s / std::sqrt(eigenvalues[k]);
        }
    return out;
}

L2Result l2_normalize(const EmbeddingMatrix& e) {
    L2Result out;
    out.normalized = e;
    for (std::size_t r = 0; r < e.rows; ++r) {
        double norm2 = 0.0;
        for (std::size_t c = 0; c < e.cols; ++c) norm2 += e.at(r, c) * e.at(r, c);
        if (norm2 <= 0.0) {
            out.zero_rows.push_back(static_cast<vertex_t>(r));
            continue;
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (std::size_t c = 0; c < e.cols; ++c) out.normalized.at(r, c) *= inv;
    }
    return out;
}

namespace {

double pair_distance(const EmbeddingMatrix& e, std::size_t a, std::size_t b, Metric metric,
                     const std::vector<double>& norms) {
    const double* x = e.values.data() + a * e.cols;
    const double* y = e.values.data() + b * e.cols;
    if (metric == Metric::Euclidean) {
        double s = 0.0;
        for (std::size_t c = 0; c < e.cols; ++c) {
            const double diff = x[c] - y[c];
            s += diff * diff;
        }
        return s;  // squared distance preserves the ordering
    }
    double xy = 0.0;
    for (std::size_t c = 0; c < e.cols; ++c) xy += x[c] * y[c];
    const double denom = norms[a] * norms[b];
    if (denom <= 0.0) return 1.0;  // zero rows: no similarity signal
    return 1.0 - xy / denom;
}

}  // namespace

Graph knn_graph(const EmbeddingMatrix& e, std::uint32_t k, Metric metric, unsigned workers) {
    if (k < 1) throw std::invalid_argument("knn_graph: k must be >= 1");
    if (e.rows < 2) throw std::invalid_argument("knn_graph: need at least 2 rows");
    const std::size_t n = e.rows;
    const std::size_t kk = std::min<std::size_t>(k, n - 1);

    std::vector<double> norms;
    if (metric == Metric::Cosine) {
        norms.resize(n);
        for (std::size_t r = 0; r < n; ++r) {
            double s = 0.0;
            for (std::size_t c = 0; c < e.cols; ++c) s += e.at(r, c) * e.at(r, c);
            norms[r] = std::sqrt(s);
        }
    }

    std::vector<std::vector<vertex_t>> nearest(n);
    parallel_for(n, workers, [&](std::size_t q) {
        // (distance, index) pairs; ties resolved by smaller index.
        std::vector<std::pair<double, vertex_t>> cand;
        cand.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == q) continue;
            cand.emplace_back(pair_distance(e, q, j, metric, norms), static_cast<vertex_t>(j));
        }
        std::nth_element(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(kk - 1),
                         cand.end());
        cand.resize(kk);
        std::sort(cand.begin(), cand.end());
        nearest[q].reserve(kk);
        for (const auto& [dist, j] : cand) nearest[q].push_back(j);
    });

    std::vector<Edge> edges;
    for (std::size_t q = 0; q < n; ++q)
        for (vertex_t j : nearest[q])
            edges.push_back({static_cast<vertex_t>(std::min<std::size_t>(q, j)),
                             static_cast<vertex_t>(std::max<std::size_t>(q, j)), 1.0});
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return a.u < b.u || (a.u == b.u && a.v < b.v); });
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
                edges.end());
    return Graph::from_edges(static_cast<vertex_t>(n), edges);
}

}  // namespace gtda
