#pragma once

#include <cstdint>
#include <vector>

#include "gtda/diagnose.hpp"
#include "gtda/graph.hpp"
#include "gtda/lens.hpp"
#include "gtda/preprocess.hpp"

namespace gtda {

/// Three-class Swiss roll with a 5-NN Euclidean graph, for end-to-end tests.
struct SwissRollInstance {
    EmbeddingMatrix features;           // n x 2 (first and third roll coordinates)
    std::vector<std::int32_t> labels;   // class in {0,1,2} by manifold position
    std::vector<std::uint8_t> train_mask, valid_mask, test_mask;
    Graph graph;                        // 5-NN Euclidean on features
};

/// Samples n points on the noisy Swiss roll, splits the manifold coordinate
/// into thirds for classes, draws 10% train / 10% validation masks, and
/// attaches the 5-NN graph. Deterministic for a fixed seed.
SwissRollInstance swiss_roll(std::size_t n, double noise, std::uint64_t seed);

/// The instance graph combined with a 2-NN cosine graph on the features,
/// standing in for the feature-similarity edges used alongside data graphs.
Graph combined_graph(const SwissRollInstance& inst);

struct SurrogateOutput {
    LensMatrix lens;   // 3-column probability lens
    LabelData labels;  // predicted/mask/training labels/probs over the instance
};

/// Stand-in for a trained predictor: seeds one-hot labels at train and
/// validation points (a label_noise fraction corrupted to a wrong class),
/// diffuses them over the combined graph, and row-normalizes. The reported
/// training labels are the clean ones; corruption only shapes the lens.
SurrogateOutput surrogate_predictor(const SwissRollInstance& inst, double label_noise,
                                    std::uint64_t seed);

}  // namespace gtda
