#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gtda/reeb.hpp"

namespace gtda {

struct Layout {
    std::vector<std::array<double, 2>> positions;  // one per Reeb node
};

/// Stress-minimizing 2-D coordinates per net component over graph-theoretic
/// distances (the Kamada-Kawai objective, solved by stress majorization),
/// iterated until the largest node displacement per sweep drops below 1e-4
/// or 1000 sweeps pass. Components are tiled on a grid by decreasing size.
/// Deterministic for a fixed seed.
Layout layout_reeb(const ReebNet& net, std::uint64_t seed);

}  // namespace gtda
