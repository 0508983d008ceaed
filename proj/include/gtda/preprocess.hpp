#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gtda/graph.hpp"

namespace gtda {

/// Dense n x D matrix of datapoint embeddings.
struct EmbeddingMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;  // row-major

    EmbeddingMatrix() = default;
    EmbeddingMatrix(std::size_t n, std::size_t d) : rows(n), cols(d), values(n * d, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
    std::span<const double> row(std::size_t r) const { return {values.data() + r * cols, cols}; }
};

struct PcaResult {
    EmbeddingMatrix transformed;       // n x retained, unit variance per column
    std::size_t retained = 0;          // may be < target_dim on rank deficiency
    std::vector<double> eigenvalues;   // of the retained components, descending
};

/// Centers the data, extracts the top principal directions by deflated power
/// iteration on the covariance, and scales each projection to unit variance.
/// Rank-deficient trailing components are dropped (retained < target_dim).
PcaResult pca_whiten(const EmbeddingMatrix& e, std::size_t target_dim);

struct L2Result {
    EmbeddingMatrix normalized;
    std::vector<vertex_t> zero_rows;  // rows left untouched (zero norm)
};

/// Scales every nonzero row to unit Euclidean norm.
L2Result l2_normalize(const EmbeddingMatrix& e);

enum class Metric { Cosine, Euclidean };

/// Exact k-nearest-neighbor graph: each row is linked to its k nearest
/// others (self excluded, distance ties to the smaller index) and the
/// directed lists are symmetrized by union. O(n^2 D) scan.
Graph knn_graph(const EmbeddingMatrix& e, std::uint32_t k, Metric metric, unsigned workers = 1);

}  // namespace gtda
