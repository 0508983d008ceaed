#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gtda/graph.hpp"

namespace gtda {

/// Model outputs and training split for one dataset.
struct LabelData {
    std::vector<std::int32_t> predicted;       // class per datapoint
    std::vector<std::uint8_t> training_mask;   // 1 where the label is known
    std::vector<std::int32_t> training_labels; // valid where masked
    std::vector<double> prediction_probs;      // max class probability; may be empty
    std::int32_t num_classes = 0;

    void validate(std::size_t n) const;  // throws std::invalid_argument
};

struct ErrorReport {
    std::vector<double> estimated_error;        // e in [0,1]
    std::vector<std::uint8_t> unsupported;      // no training mass reached the vertex
    std::vector<double> baseline_uncertainty;   // 1 - prob; empty if probs absent
    std::optional<double> auc_gtda;
    std::optional<double> auc_baseline;
};

/// Diffuses the training one-hot matrix over the projected graph for
/// `steps` iterations of P(i) = (1-alpha)*P(0) + alpha*Dinv*A*P(i-1),
/// row-normalizes, and reports e_i = 1 - mass at the predicted class.
/// Vertices no training mass reaches get e_i = 1 and the unsupported flag.
ErrorReport error_estimation(const Graph& projected, const LabelData& labels, int steps,
                             double alpha, unsigned workers = 1);

/// 1 minus the model's max prediction probability. Throws when probs are absent.
std::vector<double> uncertainty_baseline(const LabelData& labels);

/// ROC AUC: probability a uniformly random positive outranks a random
/// negative, ties counted 0.5. Throws when truth is degenerate.
double auc(std::span<const double> scores, std::span<const std::uint8_t> truth);

/// Binary tasks only: flips predicted labels where the estimated error
/// exceeds the prediction probability (strict).
std::vector<std::int32_t> correct_binary_labels(const LabelData& labels,
                                                const ErrorReport& report);

}  // namespace gtda
