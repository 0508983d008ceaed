#pragma once

#include <filesystem>
#include <vector>

#include "gtda/diagnose.hpp"
#include "gtda/graph.hpp"
#include "gtda/lens.hpp"
#include "gtda/preprocess.hpp"

namespace gtda {

/// Edge list: one `u v [w]` per line, whitespace or comma separated, 0-based
/// ids; `#` starts a comment line. The graph is weighted iff any line
/// carries a weight (missing weights default to 1).
Graph read_edge_list(const std::filesystem::path& path);
void write_edge_list(const std::filesystem::path& path, const Graph& g);

/// Lens CSV: header row of column names, then one datapoint per row.
LensMatrix read_lens_csv(const std::filesystem::path& path);
void write_lens_csv(const std::filesystem::path& path, const LensMatrix& p);

/// Labels CSV columns: vertex_id,true_label,predicted_label,prediction_prob,split
/// with split in {train,valid,test} and true_label possibly -1 (unknown).
struct LabelsFile {
    LabelData data;                          // train+valid both count as masked
    std::vector<std::int32_t> true_labels;   // -1 where unknown
    std::vector<std::uint8_t> valid_mask;    // the validation subset of the mask
};
LabelsFile read_labels_csv(const std::filesystem::path& path);
void write_labels_csv(const std::filesystem::path& path, const LabelsFile& lf);

/// Embeddings: CSV of raw values (no header), or binary with a little-endian
/// header of two int64 (n, D) followed by n*D float64 values.
EmbeddingMatrix read_embeddings_csv(const std::filesystem::path& path);
EmbeddingMatrix read_embeddings_bin(const std::filesystem::path& path);
void write_embeddings_bin(const std::filesystem::path& path, const EmbeddingMatrix& e);

/// Shortest-round-trip decimal formatting used by all writers.
std::string format_double(double v);

}  // namespace gtda
