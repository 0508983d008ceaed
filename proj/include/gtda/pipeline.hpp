#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gtda/preprocess.hpp"
#include "gtda/reeb.hpp"
#include "gtda/splitter.hpp"

namespace gtda {

/// A stage failure with the stage name and the process exit code the CLI
/// should use (2 for input/configuration problems, 1 otherwise).
class StageError : public std::runtime_error {
public:
    StageError(std::string stage, const std::string& message, int exit_code = 1)
        : std::runtime_error("[" + stage + "] " + message),
          stage_(std::move(stage)),
          exit_code_(exit_code) {}
    const std::string& stage() const { return stage_; }
    int exit_code() const { return exit_code_; }

private:
    std::string stage_;
    int exit_code_;
};

struct RunConfig {
    std::filesystem::path graph_path;       // edge list, or
    std::filesystem::path embeddings_path;  // embeddings run through knn first
    std::filesystem::path lens_path;
    std::filesystem::path labels_path;      // optional for build, required for diagnose
    std::filesystem::path output_dir;

    GtdaParams params;          // max_size 0 resolves to 5% of the smallest class
    int diffuse_steps = 10;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    bool diagnose = false;      // add error estimation + errors.csv
    SummaryMode summary_mode = SummaryMode::Predicted;

    // Embedding preprocessing (only used with embeddings_path).
    std::uint32_t knn_k = 5;
    Metric knn_metric = Metric::Cosine;
    std::size_t pca_dim = 0;  // 0 = skip PCA
    bool l2 = false;

    std::vector<std::string> formats = {"json", "dot", "graphml", "html"};
};

struct PipelineStats {
    std::size_t num_vertices = 0;
    std::size_t num_edges = 0;
    std::size_t num_lenses = 0;
    std::uint32_t finalized_sets = 0;  // before node merging
    std::uint32_t generations = 0;
    std::uint32_t node_merge_rounds = 0;
    std::uint32_t unmergeable_sets = 0;
    std::uint32_t component_merge_rounds = 0;
    std::uint32_t excluded_components = 0;
    std::size_t reeb_nodes = 0;
    std::size_t overlap_edges = 0;
    std::size_t extra_edges = 0;
    std::size_t excluded_datapoints = 0;
    std::optional<double> auc_gtda;
    std::optional<double> auc_baseline;
};

/// smooth -> normalize -> split -> node merge -> reeb -> component merge ->
/// project -> (diagnose) -> summarize -> layout -> emit. Stage failures are
/// rethrown as StageError; progress counters go to stderr.
PipelineStats run_pipeline(const RunConfig& cfg);

}  // namespace gtda
