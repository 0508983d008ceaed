#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gtda/diagnose.hpp"
#include "gtda/layout.hpp"
#include "gtda/reeb.hpp"

namespace gtda {

/// Everything the static report can draw from; only net and layout are
/// required.
struct ReportData {
    const ReebNet* net = nullptr;
    const Layout* layout = nullptr;
    const std::vector<NodeSummary>* summaries = nullptr;
    const ErrorReport* errors = nullptr;          // per-datapoint
    const LabelData* labels = nullptr;            // for errors.csv
    const std::vector<std::int32_t>* corrected = nullptr;
    const Graph* projected = nullptr;             // enables closest-member edge annotation
    std::vector<std::string> class_names;
};

/// For each net edge, the member of either endpoint closest (hop distance in
/// the projected graph, restricted to the two nodes' members) to the other
/// endpoint; distance ties prefer the higher-degree member, then smaller id.
/// Output is aligned with overlap_edges followed by extra_edges.
std::vector<std::array<vertex_t, 2>> edge_closest_members(const ReebNet& net,
                                                          const Graph& projected);

/// Writes reebnet.json / reebnet.dot / reebnet.graphml / map.html (per
/// `formats`) and errors.csv when an error report is present.
void emit_report(const ReportData& data, const std::filesystem::path& dir,
                 const std::vector<std::string>& formats = {"json", "dot", "graphml", "html"});

struct ReebNetFile {
    ReebNet net;
    std::optional<Layout> layout;
    std::optional<std::vector<NodeSummary>> summaries;
    std::vector<std::string> class_names;
};

/// Parses a reebnet.json written by emit_report (schema "reebnet/1").
ReebNetFile read_reebnet_json(const std::filesystem::path& path);

void write_errors_csv(const std::filesystem::path& path, const ErrorReport& report,
                      const LabelData& labels, const std::vector<std::int32_t>* corrected);

}  // namespace gtda
