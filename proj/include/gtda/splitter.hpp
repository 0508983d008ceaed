#pragma once

#include <cstdint>
#include <vector>

#include "gtda/graph.hpp"
#include "gtda/lens.hpp"

namespace gtda {

enum class MergeDistance {
    LensLinf,  // l-infinity between rows of the smoothed, normalized lens
};

/// Parameters steering the split/merge construction.
struct GtdaParams {
    std::uint32_t max_size = 0;            // K: stop splitting at or below this size
    double min_diff = 0.0;                 // d: stop when no lens spread exceeds this
    double overlap = 0.01;                 // r: left-bin extension ratio
    std::uint32_t min_node_size = 5;       // s1: smallest kept node size
    std::uint32_t min_component_size = 5;  // s2: smallest kept component (in nodes)
    double alpha = 0.5;                    // lens smoothing
    int smooth_steps = 5;
    MergeDistance merge_distance = MergeDistance::LensLinf;

    void validate() const;  // throws std::invalid_argument
};

struct SplitStep {
    std::uint32_t lens = 0;
    std::uint8_t side = 0;  // 0 = left bin, 1 = right bin
};

struct FinalSet {
    VertexSet members;
    std::vector<SplitStep> path;   // splits that produced this set
    std::uint32_t generation = 0;  // splitter generation at finalization
    bool forced = false;           // finalized by the stall guard
};

struct FinalSets {
    std::vector<FinalSet> sets;
    std::uint32_t generations = 0;  // number of worklist generations consumed
    std::uint32_t forced_count = 0;
};

/// Splits `s` along lens `column`: the value interval is halved at its
/// midpoint and the left half extended by `overlap` of the full interval
/// length. Returns the connected components of each bin's induced subgraph
/// (left components first). Requires |s| >= 2 and positive spread on the
/// chosen column.
std::vector<VertexSet> split_once(const Graph& g, const LensMatrix& p, const VertexSet& s,
                                  std::size_t column, double overlap);

/// Recursive bisection: starts from the connected components of g, keeps
/// splitting any set with more than max_size vertices and a lens spread
/// above min_diff, and finalizes the rest. `p_smoothed` must already be
/// smoothed and column-normalized.
FinalSets gtda_split(const Graph& g, const LensMatrix& p_smoothed, const GtdaParams& params,
                     unsigned workers = 1);

}  // namespace gtda
