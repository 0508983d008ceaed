#include "gtda/diagnose.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "gtda/parallel.hpp"

namespace gtda {

void LabelData::validate(std::size_t n) const {
    if (predicted.size() != n)
        throw std::invalid_argument("labels: predicted size " + std::to_string(predicted.size()) +
                                    " does not match " + std::to_string(n) + " datapoints");
    if (training_mask.size() != n || training_labels.size() != n)
        throw std::invalid_argument("labels: training mask/labels must cover all datapoints");
    if (!prediction_probs.empty() && prediction_probs.size() != n)
        throw std::invalid_argument("labels: prediction probs must cover all datapoints");
    if (num_classes < 1) throw std::invalid_argument("labels: num_classes must be >= 1");
    for (std::size_t i = 0; i < n; ++i) {
        if (predicted[i] < 0 || predicted[i] >= num_classes)
            throw std::invalid_argument("labels: predicted class out of range at vertex " +
                                        std::to_string(i));
        if (training_mask[i] && (training_labels[i] < 0 || training_labels[i] >= num_classes))
            throw std::invalid_argument("labels: training label out of range at vertex " +
                                        std::to_string(i));
    }
}

ErrorReport error_estimation(const Graph& projected, const LabelData& labels, int steps,
                             double alpha, unsigned workers) {
    const std::size_t n = projected.num_vertices();
    labels.validate(n);
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("error_estimation: alpha must be in (0,1)");
    if (steps < 1) throw std::invalid_argument("error_estimation: steps must be >= 1");

    const std::size_t m = static_cast<std::size_t>(labels.num_classes);
    std::vector<double> base(n * m, 0.0);  // training one-hots
    for (std::size_t i = 0; i < n; ++i)
        if (labels.training_mask[i])
            base[i * m + static_cast<std::size_t>(labels.training_labels[i])] = 1.0;

    std::vector<double> inv_degree(n);
    for (vertex_t v = 0; v < n; ++v) {
        const double d = projected.degree(v);
        inv_degree[v] = d > 0.0 ? 1.0 / d : 0.0;
    }

    std::vector<double> cur = base;
    std::vector<double> next(n * m);
    for (int step = 0; step < steps; ++step) {
        parallel_for(n, workers, [&](std::size_t v) {
            double* out = next.data() + v * m;
            const double* b = base.data() + v * m;
            auto nb = projected.neighbors(static_cast<vertex_t>(v));
            auto ws = projected.weights(static_cast<vertex_t>(v));
            if (nb.empty()) {
                // Degree-0 vertices keep their own mass, as in the lens smoother.
                const double* self = cur.data() + v * m;
                for (std::size_t c = 0; c < m; ++c)
                    out[c] = (1.0 - alpha) * b[c] + alpha * self[c];
                return;
            }
            for (std::size_t c = 0; c < m; ++c) out[c] = 0.0;
            for (std::size_t i = 0; i < nb.size(); ++i) {
                const double w = ws.empty() ? 1.0 : ws[i];
                const double* nrow = cur.data() + static_cast<std::size_t>(nb[i]) * m;
                for (std::size_t c = 0; c < m; ++c) out[c] += w * nrow[c];
            }
            const double scale = alpha * inv_degree[v];
            for (std::size_t c = 0; c < m; ++c) out[c] = (1.0 - alpha) * b[c] + scale * out[c];
        });
        std::swap(cur, next);
    }

    ErrorReport report;
    report.estimated_error.resize(n);
    report.unsupported.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = cur.data() + i * m;
        const double sum = std::accumulate(row, row + m, 0.0);
        if (sum <= 0.0) {
            // No training influence reached this vertex: nothing supports
            // the prediction.
            report.estimated_error[i] = 1.0;
            report.unsupported[i] = 1;
        } else {
            const double mass = row[static_cast<std::size_t>(labels.predicted[i])] / sum;
            report.estimated_error[i] = 1.0 - mass;
        }
    }
    if (!labels.prediction_probs.empty()) report.baseline_uncertainty = uncertainty_baseline(labels);
    return report;
}

std::vector<double> uncertainty_baseline(const LabelData& labels) {
    if (labels.prediction_probs.empty())
        throw std::invalid_argument("uncertainty_baseline: prediction probabilities are missing");
    std::vector<double> out(labels.prediction_probs.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 1.0 - labels.prediction_probs[i];
    return out;
}

double auc(std::span<const double> scores, std::span<const std::uint8_t> truth) {
    if (scores.size() != truth.size())
        throw std::invalid_argument("auc: scores and truth differ in length");
    const std::size_t n = scores.size();
    std::int64_t positives = 0;
    for (std::uint8_t t : truth) positives += t ? 1 : 0;
    const std::int64_t negatives = static_cast<std::int64_t>(n) - positives;
    if (positives == 0 || negatives == 0)
        throw std::invalid_argument("auc: need at least one positive and one negative");

    // Rank-sum formulation with doubled ranks so ties stay in integers;
    // exactly equivalent to averaging over all positive-negative pairs.
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return scores[a] < scores[b]; });
    std::vector<std::int64_t> rank_x2(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && scores[order[j]] == scores[order[i]]) ++j;
        // Ranks i+1 .. j averaged, times two: (i+1 + j).
        for (std::size_t k = i; k < j; ++k)
            rank_x2[order[k]] = static_cast<std::int64_t>(i) + 1 + static_cast<std::int64_t>(j);
        i = j;
    }
    std::int64_t u_x2 = 0;
    for (std::size_t k = 0; k < n; ++k)
        if (truth[k]) u_x2 += rank_x2[k];
    u_x2 -= positives * (positives + 1);
    return static_cast<double>(u_x2) / (2.0 * static_cast<double>(positives * negatives));
}

std::vector<std::int32_t> correct_binary_labels(const LabelData& labels,
                                                const ErrorReport& report) {
    if (labels.num_classes != 2)
        throw std::invalid_argument("correct_binary_labels: task must have exactly 2 classes");
    if (labels.prediction_probs.empty())
        throw std::invalid_argument("correct_binary_labels: prediction probabilities required");
    if (report.estimated_error.size() != labels.predicted.size())
        throw std::invalid_argument("correct_binary_labels: report does not match labels");
    std::vector<std::int32_t> out = labels.predicted;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (report.estimated_error[i] > labels.prediction_probs[i]) out[i] = 1 - out[i];
    return out;
}

}  // namespace gtda
