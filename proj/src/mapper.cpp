#include "gtda/mapper.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "gtda/parallel.hpp"

namespace gtda {

void MapperParams::validate() const {
    if (bins_per_lens < 1) throw std::invalid_argument("mapper: bins_per_lens must be >= 1");
    if (!(overlap_fraction >= 0.0 && overlap_fraction < 1.0))
        throw std::invalid_argument("mapper: overlap_fraction must be in [0,1)");
}

std::vector<MapperCell> mapper_cover(const LensMatrix& p, MapperParams params) {
    params.validate();
    const std::uint32_t bins = params.bins_per_lens;
    const double width = 1.0 / bins;
    const double ext = params.overlap_fraction * width;

    // Bins containing value x for one lens. Base bins are half-open (last
    // closed) so that zero overlap yields a partition.
    auto bins_of = [&](double x, std::vector<std::uint32_t>& out) {
        out.clear();
        for (std::uint32_t b = 0; b < bins; ++b) {
            const double lo = b * width - ext;
            const double hi = (b + 1) * width + ext;
            const bool in = x >= lo && (x < hi || (b == bins - 1 && x <= hi));
            if (in) out.push_back(b);
        }
    };

    std::map<std::vector<std::uint32_t>, std::vector<vertex_t>> cells;
    std::vector<std::vector<std::uint32_t>> memberships(p.cols);
    std::vector<std::uint32_t> tuple(p.cols);
    for (std::size_t r = 0; r < p.rows; ++r) {
        for (std::size_t c = 0; c < p.cols; ++c) bins_of(p.at(r, c), memberships[c]);
        // Cartesian product of the per-lens memberships.
        std::vector<std::size_t> pick(p.cols, 0);
        for (;;) {
            for (std::size_t c = 0; c < p.cols; ++c) tuple[c] = memberships[c][pick[c]];
            cells[tuple].push_back(static_cast<vertex_t>(r));
            std::size_t c = 0;
            while (c < p.cols && ++pick[c] == memberships[c].size()) pick[c++] = 0;
            if (c == p.cols) break;
        }
    }

    std::vector<MapperCell> out;
    out.reserve(cells.size());
    for (auto& [ids, members] : cells) {
        MapperCell cell;
        cell.bin_ids = ids;
        cell.members = VertexSet(std::move(members));
        out.push_back(std::move(cell));
    }
    return out;
}

ReebNet mapper_reeb(const Graph& g, const std::vector<MapperCell>& cover, unsigned workers) {
    FinalSets sets;
    SubsetComponents scratch(g.num_vertices());
    std::vector<vertex_t> labels;
    for (const MapperCell& cell : cover) {
        const vertex_t count = scratch.run(g, cell.members.members, labels);
        std::vector<std::vector<vertex_t>> groups(count);
        for (std::size_t i = 0; i < cell.members.members.size(); ++i)
            groups[labels[i]].push_back(cell.members.members[i]);
        for (auto& grp : groups) {
            FinalSet fs;
            fs.members.members = std::move(grp);  // sorted: bin order is preserved
            sets.sets.push_back(std::move(fs));
        }
    }
    if (sets.sets.empty()) throw std::invalid_argument("mapper_reeb: empty cover");
    return build_reeb_net(sets, g.num_vertices(), workers);
}

}  // namespace gtda
