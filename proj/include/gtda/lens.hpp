#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gtda/graph.hpp"

namespace gtda {

/// Dense n x m matrix of prediction lenses, one row per datapoint and one
/// column per lens (typically a class probability).
struct LensMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;  // row-major
    std::vector<std::string> column_names;

    LensMatrix() = default;
    LensMatrix(std::size_t n, std::size_t m)
        : rows(n), cols(m), values(n * m, 0.0), column_names(m) {}

    double& at(std::size_t r, std::size_t c) { return values[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
    std::span<const double> row(std::size_t r) const { return {values.data() + r * cols, cols}; }
};

struct SmoothingParams {
    double alpha = 0.5;
    int steps = 5;
};

/// Graph smoothing iteration P(i+1) = (1-alpha)*P + alpha*Dinv*A*P(i) with
/// P(0) = P. Degree-0 vertices keep their own value (identity row), so they
/// are fixed points. Throws on dimension mismatch, non-finite input, or
/// parameters outside their ranges.
LensMatrix smooth(const LensMatrix& p, const Graph& g, SmoothingParams sp, unsigned workers = 1);

/// Affine rescale of each column to [0,1]; constant columns map to all zero.
LensMatrix minmax_normalize(const LensMatrix& p);

/// Min/max of one column over a vertex set.
struct ColumnSpread {
    std::size_t column = 0;
    double min = 0.0;
    double max = 0.0;
    double spread() const { return max - min; }
};

/// The column with the largest min-max difference over `members`; ties go to
/// the smaller index. `members` must be nonempty.
ColumnSpread max_spread_column(const LensMatrix& p, std::span<const vertex_t> members);

/// Column index with the largest min-max difference on s (smaller index wins ties).
std::size_t max_diff_lens(const LensMatrix& p, const VertexSet& s);

/// l-infinity distance between two rows.
double lens_distance(const LensMatrix& p, vertex_t u, vertex_t v);

}  // namespace gtda
