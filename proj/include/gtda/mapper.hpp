#pragma once

#include <cstdint>
#include <vector>

#include "gtda/graph.hpp"
#include "gtda/lens.hpp"
#include "gtda/reeb.hpp"

namespace gtda {

struct MapperParams {
    std::uint32_t bins_per_lens = 10;
    double overlap_fraction = 0.1;  // each bin end extends by this fraction of its width

    void validate() const;
};

struct MapperCell {
    std::vector<std::uint32_t> bin_ids;  // one bin index per lens
    VertexSet members;
};

/// Tensor-product cover: per lens, [0,1] is cut into equal bins, each end
/// extended by overlap_fraction of the bin width; a datapoint belongs to
/// every combination of the bins containing it. Empty cells are omitted.
/// Lens values must already be normalized to [0,1] columns.
std::vector<MapperCell> mapper_cover(const LensMatrix& p, MapperParams params);

/// Classic mapper net: one Reeb node per connected component of each cell's
/// induced subgraph, overlap edges where nodes share datapoints. No merging.
ReebNet mapper_reeb(const Graph& g, const std::vector<MapperCell>& cover, unsigned workers = 1);

}  // namespace gtda
