#include "gtda/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

namespace gtda {

SwissRollInstance swiss_roll(std::size_t n, double noise, std::uint64_t seed) {
    if (n < 30) throw std::invalid_argument("swiss_roll: need n >= 30");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    // Spiral parameter on the 3-D roll (t*cos t, height, t*sin t); only the
    // first and third columns are kept, so the height is never drawn.
    const double t_lo = 1.5 * std::numbers::pi, t_hi = 4.5 * std::numbers::pi;
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = t_lo + (t_hi - t_lo) * unif(rng);

    SwissRollInstance inst;
    inst.features = EmbeddingMatrix(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        inst.features.at(i, 0) = t[i] * std::cos(t[i]) + noise * gauss(rng);
        inst.features.at(i, 1) = t[i] * std::sin(t[i]) + noise * gauss(rng);
    }

    // Classes: thirds of the manifold coordinate.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return t[a] < t[b]; });
    inst.labels.assign(n, 0);
    const std::size_t third = n / 3;
    const std::size_t two_thirds = (2 * n) / 3;
    for (std::size_t rank = 0; rank < n; ++rank)
        inst.labels[order[rank]] = rank < third ? 0 : (rank < two_thirds ? 1 : 2);

    // 10% train, 10% validation, rest test.
    std::vector<std::size_t> shuffled(n);
    std::iota(shuffled.begin(), shuffled.end(), 0u);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const std::size_t tenth = n / 10;
    inst.train_mask.assign(n, 0);
    inst.valid_mask.assign(n, 0);
    inst.test_mask.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (i < tenth)
            inst.train_mask[shuffled[i]] = 1;
        else if (i < 2 * tenth)
            inst.valid_mask[shuffled[i]] = 1;
        else
            inst.test_mask[shuffled[i]] = 1;
    }

    inst.graph = knn_graph(inst.features, 5, Metric::Euclidean);
    return inst;
}

Graph combined_graph(const SwissRollInstance& inst) {
    return union_graphs(inst.graph, knn_graph(inst.features, 2, Metric::Cosine));
}

SurrogateOutput surrogate_predictor(const SwissRollInstance& inst, double label_noise,
                                    std::uint64_t seed) {
    if (!(label_noise >= 0.0 && label_noise < 1.0))
        throw std::invalid_argument("surrogate_predictor: label_noise must be in [0,1)");
    const std::size_t n = inst.labels.size();
    std::mt19937_64 rng(seed ^ 0xa5a5a5a5deadbeefull);

    std::vector<std::size_t> seeds;
    for (std::size_t i = 0; i < n; ++i)
        if (inst.train_mask[i] || inst.valid_mask[i]) seeds.push_back(i);

    // Corrupt a fraction of the seed labels to a wrong class.
    std::vector<std::int32_t> seed_label(n, -1);
    for (std::size_t i : seeds) seed_label[i] = inst.labels[i];
    std::vector<std::size_t> corruptible = seeds;
    std::shuffle(corruptible.begin(), corruptible.end(), rng);
    const std::size_t num_corrupt =
        static_cast<std::size_t>(label_noise * static_cast<double>(seeds.size()));
    std::uniform_int_distribution<int> pick_other(1, 2);
    for (std::size_t k = 0; k < num_corrupt; ++k) {
        const std::size_t i = corruptible[k];
        seed_label[i] = (inst.labels[i] + pick_other(rng)) % 3;
    }

    LensMatrix onehot(n, 3);
    onehot.column_names = {"class_0", "class_1", "class_2"};
    for (std::size_t i : seeds) onehot.at(i, static_cast<std::size_t>(seed_label[i])) = 1.0;

    const Graph combined = combined_graph(inst);
    LensMatrix diffused = smooth(onehot, combined, {0.85, 20});

    SurrogateOutput out;
    out.lens = std::move(diffused);
    out.labels.num_classes = 3;
    out.labels.predicted.resize(n);
    out.labels.prediction_probs.resize(n);
    out.labels.training_mask.resize(n);
    out.labels.training_labels.assign(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        double* row = out.lens.values.data() + i * 3;
        const double sum = row[0] + row[1] + row[2];
        if (sum > 0.0) {
            for (int c = 0; c < 3; ++c) row[c] /= sum;
        } else {
            for (int c = 0; c < 3; ++c) row[c] = 1.0 / 3.0;  // unreached: uniform guess
        }
        const std::size_t arg = static_cast<std::size_t>(
            std::max_element(row, row + 3) - row);
        out.labels.predicted[i] = static_cast<std::int32_t>(arg);
        out.labels.prediction_probs[i] = row[arg];
        out.labels.training_mask[i] =
            static_cast<std::uint8_t>(inst.train_mask[i] || inst.valid_mask[i]);
        if (out.labels.training_mask[i]) out.labels.training_labels[i] = inst.labels[i];
    }
    return out;
}

}  // namespace gtda
