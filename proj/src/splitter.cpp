#include "gtda/splitter.hpp"

#include <algorithm>
#include <stdexcept>

#include "gtda/parallel.hpp"

namespace gtda {

void GtdaParams::validate() const {
    if (max_size < 1) throw std::invalid_argument("params: max_size (K) must be >= 1");
    if (min_diff < 0.0) throw std::invalid_argument("params: min_diff (d) must be >= 0");
    if (!(overlap >= 0.0 && overlap < 1.0))
        throw std::invalid_argument("params: overlap (r) must be in [0,1)");
    if (min_node_size < 1) throw std::invalid_argument("params: min_node_size (s1) must be >= 1");
    if (min_component_size < 1)
        throw std::invalid_argument("params: min_component_size (s2) must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("params: alpha must be in (0,1)");
    if (smooth_steps < 0) throw std::invalid_argument("params: smooth_steps must be >= 0");
}

namespace {

struct BinSplit {
    std::vector<VertexSet> left;
    std::vector<VertexSet> right;
};

// Interval rule of the construction: values <= min + (0.5+r)*len go left,
// values > min + 0.5*len go right; the (mid, mid + r*len] band lands in both.
BinSplit split_bins(const Graph& g, const LensMatrix& p, const VertexSet& s, std::size_t column,
                    double overlap, SubsetComponents& scratch) {
    double lo = p.at(s.members.front(), column);
    double hi = lo;
    for (vertex_t v : s.members) {
        const double x = p.at(v, column);
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    const double len = hi - lo;
    if (len <= 0.0)
        throw std::invalid_argument("split_once: requested lens has zero spread on the set");

    const double left_cutoff = lo + (0.5 + overlap) * len;
    const double right_bound = lo + 0.5 * len;

    std::vector<vertex_t> left_bin, right_bin;
    for (vertex_t v : s.members) {
        const double x = p.at(v, column);
        if (x <= left_cutoff) left_bin.push_back(v);
        if (x > right_bound) right_bin.push_back(v);
    }

    BinSplit out;
    std::vector<vertex_t> labels;
    for (int side = 0; side < 2; ++side) {
        const auto& bin = side == 0 ? left_bin : right_bin;
        auto& comps = side == 0 ? out.left : out.right;
        if (bin.empty()) continue;
        const vertex_t count = scratch.run(g, bin, labels);
        std::vector<std::vector<vertex_t>> groups(count);
        for (std::size_t i = 0; i < bin.size(); ++i) groups[labels[i]].push_back(bin[i]);
        comps.reserve(count);
        for (auto& grp : groups) {
            VertexSet vs;
            vs.members = std::move(grp);  // already sorted: bin preserves set order
            comps.push_back(std::move(vs));
        }
    }
    return out;
}

}  // namespace

std::vector<VertexSet> split_once(const Graph& g, const LensMatrix& p, const VertexSet& s,
                                  std::size_t column, double overlap) {
    if (s.size() < 2) throw std::invalid_argument("split_once: set must have >= 2 vertices");
    SubsetComponents scratch(g.num_vertices());
    BinSplit bins = split_bins(g, p, s, column, overlap, scratch);
    std::vector<VertexSet> out = std::move(bins.left);
    for (auto& vs : bins.right) out.push_back(std::move(vs));
    return out;
}

FinalSets gtda_split(const Graph& g, const LensMatrix& p_smoothed, const GtdaParams& params,
                     unsigned workers) {
    params.validate();
    if (p_smoothed.rows != g.num_vertices())
        throw std::invalid_argument("gtda_split: lens rows do not match graph vertices");

    struct WorkItem {
        VertexSet members;
        std::vector<SplitStep> path;
    };

    FinalSets result;
    const auto keeps_splitting = [&](const VertexSet& s) {
        if (s.size() <= params.max_size) return false;
        return max_spread_column(p_smoothed, s.members).spread() > params.min_diff;
    };

    // Seed the worklist with the connected components of g.
    std::vector<WorkItem> worklist;
    {
        ComponentLabeling cc = connected_components(g);
        std::vector<std::vector<vertex_t>> groups(cc.count);
        for (vertex_t v = 0; v < g.num_vertices(); ++v) groups[cc.label[v]].push_back(v);
        for (auto& grp : groups) {
            VertexSet vs;
            vs.members = std::move(grp);
            if (keeps_splitting(vs))
                worklist.push_back({std::move(vs), {}});
            else
                result.sets.push_back({std::move(vs), {}, 0, false});
        }
    }

    struct ItemResult {
        std::vector<WorkItem> requeue;
        std::vector<FinalSet> finalized;
    };

    std::vector<SubsetComponents> scratch;
    const unsigned team = std::max(1u, workers);
    for (unsigned t = 0; t < team; ++t) scratch.emplace_back(g.num_vertices());

    while (!worklist.empty()) {
        ++result.generations;
        std::vector<ItemResult> results(worklist.size());

        // Sets within a generation only read g and p, so they can be split
        // in parallel; per-item results keep the output order deterministic.
        parallel_for_indexed(worklist.size(), workers, [&](unsigned worker, std::size_t idx) {
            const WorkItem& item = worklist[idx];
            ItemResult& out = results[idx];

            const ColumnSpread spread = max_spread_column(p_smoothed, item.members.members);
            BinSplit bins = split_bins(g, p_smoothed, item.members, spread.column,
                                       params.overlap, scratch[worker]);
            bool parent_emitted = false;
            for (int side = 0; side < 2; ++side) {
                auto& comps = side == 0 ? bins.left : bins.right;
                for (auto& child : comps) {
                    std::vector<SplitStep> path = item.path;
                    path.push_back({static_cast<std::uint32_t>(spread.column),
                                    static_cast<std::uint8_t>(side)});
                    if (child.members == item.members.members) {
                        // Stall guard: every vertex fell into the overlap band
                        // (possible when r >= 0.5). Force-finalize once.
                        if (!parent_emitted) {
                            out.finalized.push_back({std::move(child), std::move(path),
                                                     result.generations, true});
                            parent_emitted = true;
                        }
                    } else if (keeps_splitting(child)) {
                        out.requeue.push_back({std::move(child), std::move(path)});
                    } else {
                        out.finalized.push_back(
                            {std::move(child), std::move(path), result.generations, false});
                    }
                }
            }
        });

        worklist.clear();
        for (auto& r : results) {
            for (auto& item : r.requeue) worklist.push_back(std::move(item));
            for (auto& fin : r.finalized) {
                if (fin.forced) ++result.forced_count;
                result.sets.push_back(std::move(fin));
            }
        }
    }

    std::stable_sort(result.sets.begin(), result.sets.end(),
                     [](const FinalSet& a, const FinalSet& b) {
                         if (a.generation != b.generation) return a.generation < b.generation;
                         return a.members.members.front() < b.members.members.front();
                     });
    return result;
}

}  // namespace gtda
