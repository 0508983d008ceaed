#include "gtda/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "gtda/diagnose.hpp"
#include "gtda/io.hpp"
#include "gtda/layout.hpp"
#include "gtda/lens.hpp"
#include "gtda/merging.hpp"
#include "gtda/report.hpp"

namespace gtda {

namespace {

template <class Fn>
auto stage(const char* name, Fn&& fn) {
    try {
        return fn();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

void require_file(const char* stage_name, const std::filesystem::path& path) {
    if (path.empty()) throw StageError(stage_name, "required input path is missing", 2);
    if (!std::filesystem::exists(path))
        throw StageError(stage_name, path.string() + ": no such file", 2);
}

// 5% of the smallest class, counting true labels where known and predicted
// labels elsewhere.
std::uint32_t resolve_max_size(const LabelsFile& lf) {
    std::vector<std::size_t> counts(static_cast<std::size_t>(lf.data.num_classes), 0);
    for (std::size_t i = 0; i < lf.data.predicted.size(); ++i) {
        const std::int32_t c = lf.true_labels[i] >= 0 ? lf.true_labels[i] : lf.data.predicted[i];
        ++counts[static_cast<std::size_t>(c)];
    }
    std::size_t smallest = lf.data.predicted.size();
    for (std::size_t c : counts)
        if (c > 0) smallest = std::min(smallest, c);
    return static_cast<std::uint32_t>(std::max<std::size_t>(1, smallest / 20));
}

}  // namespace

PipelineStats run_pipeline(const RunConfig& cfg) {
    PipelineStats stats;

    // --- ingest -----------------------------------------------------------
    Graph g = stage("ingest", [&] {
        if (!cfg.graph_path.empty()) {
            require_file("ingest", cfg.graph_path);
            return read_edge_list(cfg.graph_path);
        }
        require_file("ingest", cfg.embeddings_path);
        EmbeddingMatrix e = cfg.embeddings_path.extension() == ".bin"
                                ? read_embeddings_bin(cfg.embeddings_path)
                                : read_embeddings_csv(cfg.embeddings_path);
        if (cfg.pca_dim > 0) e = pca_whiten(e, cfg.pca_dim).transformed;
        if (cfg.l2) e = l2_normalize(e).normalized;
        return knn_graph(e, cfg.knn_k, cfg.knn_metric, cfg.workers);
    });

    LensMatrix lens = stage("ingest", [&] {
        require_file("ingest", cfg.lens_path);
        LensMatrix p = read_lens_csv(cfg.lens_path);
        if (p.rows != g.num_vertices())
            throw StageError("ingest",
                             "lens has " + std::to_string(p.rows) + " rows but the graph has " +
                                 std::to_string(g.num_vertices()) + " vertices",
                             2);
        return p;
    });

    std::optional<LabelsFile> labels;
    if (!cfg.labels_path.empty() || cfg.diagnose) {
        labels = stage("ingest", [&] {
            require_file("ingest", cfg.labels_path);
            LabelsFile lf = read_labels_csv(cfg.labels_path);
            lf.data.validate(g.num_vertices());
            return lf;
        });
    }

    GtdaParams params = cfg.params;
    if (params.max_size == 0) {
        if (!labels)
            throw StageError("ingest", "max_size (K) not set and no labels to derive it from", 2);
        params.max_size = resolve_max_size(*labels);
        std::cerr << "gtda: derived max_size K=" << params.max_size << "\n";
    }
    stage("ingest", [&] { params.validate(); return 0; });

    stats.num_vertices = g.num_vertices();
    stats.num_edges = g.num_edges();
    stats.num_lenses = lens.cols;

    // --- smooth + normalize ------------------------------------------------
    const LensMatrix smoothed = stage("smooth", [&] {
        return minmax_normalize(
            smooth(lens, g, {params.alpha, params.smooth_steps}, cfg.workers));
    });

    // --- split --------------------------------------------------------------
    FinalSets finalized = stage("split", [&] {
        return gtda_split(g, smoothed, params, cfg.workers);
    });
    stats.finalized_sets = static_cast<std::uint32_t>(finalized.sets.size());
    stats.generations = finalized.generations;
    std::cerr << "gtda: " << stats.finalized_sets << " finalized sets in " << stats.generations
              << " generations\n";

    // --- node merging --------------------------------------------------------
    const DistanceFn dist = lens_linf_distance(smoothed);
    NodeMergeResult merged = stage("node-merge", [&] {
        return node_merging(std::move(finalized), g, params.min_node_size, dist, cfg.workers);
    });
    stats.node_merge_rounds = static_cast<std::uint32_t>(merged.trace.rounds.size());
    stats.unmergeable_sets = merged.unmergeable_count();
    std::cerr << "gtda: node merging took " << stats.node_merge_rounds << " rounds, "
              << merged.sets.sets.size() << " sets remain, " << stats.unmergeable_sets
              << " unmergeable\n";

    // --- reeb net + component merging ---------------------------------------
    ReebNet net = stage("reeb", [&] {
        return build_reeb_net(merged.sets, g.num_vertices(), cfg.workers);
    });
    ComponentMergeResult comp = stage("component-merge", [&] {
        return component_merging(net, g, params.min_component_size, dist, cfg.workers);
    });
    net = std::move(comp.net);
    stats.component_merge_rounds = static_cast<std::uint32_t>(comp.trace.rounds.size());
    stats.excluded_components = comp.excluded_components;
    stats.reeb_nodes = net.nodes.size();
    stats.overlap_edges = net.overlap_edges.size();
    stats.extra_edges = net.extra_edges.size();
    stats.excluded_datapoints = net.excluded.size();
    std::cerr << "gtda: net has " << stats.reeb_nodes << " nodes, " << stats.overlap_edges
              << " overlap edges, " << stats.extra_edges << " extra edges; "
              << stats.excluded_datapoints << " datapoints excluded ("
              << stats.excluded_components << " components)\n";

    // --- project -------------------------------------------------------------
    const Graph projected = stage("project", [&] { return project(net, g); });

    // --- diagnose --------------------------------------------------------------
    std::optional<ErrorReport> errors;
    std::optional<std::vector<std::int32_t>> corrected;
    if (cfg.diagnose) {
        errors = stage("diagnose", [&] {
            ErrorReport r = error_estimation(projected, labels->data, cfg.diffuse_steps,
                                             params.alpha, cfg.workers);
            // AUC against true errors, over vertices the model had to predict.
            bool have_truth = true;
            std::vector<double> gtda_scores, base_scores;
            std::vector<std::uint8_t> truth;
            for (std::size_t i = 0; i < labels->true_labels.size(); ++i) {
                if (labels->data.training_mask[i]) continue;
                if (labels->true_labels[i] < 0) {
                    have_truth = false;
                    break;
                }
                truth.push_back(labels->true_labels[i] != labels->data.predicted[i]);
                gtda_scores.push_back(r.estimated_error[i]);
                if (!r.baseline_uncertainty.empty())
                    base_scores.push_back(r.baseline_uncertainty[i]);
            }
            const bool degenerate =
                truth.empty() ||
                std::find(truth.begin(), truth.end(), std::uint8_t{1}) == truth.end() ||
                std::find(truth.begin(), truth.end(), std::uint8_t{0}) == truth.end();
            if (have_truth && !degenerate) {
                r.auc_gtda = auc(gtda_scores, truth);
                if (!base_scores.empty()) r.auc_baseline = auc(base_scores, truth);
            }
            return r;
        });
        stats.auc_gtda = errors->auc_gtda;
        stats.auc_baseline = errors->auc_baseline;
        if (errors->auc_gtda)
            std::cerr << "gtda: error AUC " << *errors->auc_gtda << " vs baseline "
                      << (errors->auc_baseline ? std::to_string(*errors->auc_baseline) : "-")
                      << "\n";
        if (labels->data.num_classes == 2 && !labels->data.prediction_probs.empty())
            corrected = correct_binary_labels(labels->data, *errors);
    }

    // --- summarize -------------------------------------------------------------
    std::optional<std::vector<NodeSummary>> summaries;
    if (labels) {
        summaries = stage("summarize", [&] {
            if (cfg.summary_mode == SummaryMode::Training)
                return summarize(net, labels->data.training_labels, labels->data.num_classes,
                                 SummaryMode::Training, labels->data.training_mask);
            return summarize(net, labels->data.predicted, labels->data.num_classes,
                             SummaryMode::Predicted);
        });
    }

    // --- layout + emit ------------------------------------------------------------
    const Layout layout = stage("layout", [&] { return layout_reeb(net, cfg.seed); });

    stage("emit", [&] {
        ReportData data;
        data.net = &net;
        data.layout = &layout;
        if (summaries) data.summaries = &*summaries;
        if (errors) data.errors = &*errors;
        if (labels) data.labels = &labels->data;
        if (corrected) data.corrected = &*corrected;
        data.projected = &projected;
        if (labels)
            for (std::int32_t c = 0; c < labels->data.num_classes; ++c)
                data.class_names.push_back("class_" + std::to_string(c));
        emit_report(data, cfg.output_dir, cfg.formats);

        // Run summary with the AUC values and the headline counters.
        nlohmann::json summary;
        summary["num_vertices"] = stats.num_vertices;
        summary["num_edges"] = stats.num_edges;
        summary["num_lenses"] = stats.num_lenses;
        summary["finalized_sets"] = stats.finalized_sets;
        summary["generations"] = stats.generations;
        summary["reeb_nodes"] = stats.reeb_nodes;
        summary["overlap_edges"] = stats.overlap_edges;
        summary["extra_edges"] = stats.extra_edges;
        summary["excluded_datapoints"] = stats.excluded_datapoints;
        summary["unmergeable_sets"] = stats.unmergeable_sets;
        if (stats.auc_gtda) summary["auc_gtda"] = *stats.auc_gtda;
        if (stats.auc_baseline) summary["auc_baseline"] = *stats.auc_baseline;
        std::ofstream out(cfg.output_dir / "summary.json");
        if (!out)
            throw std::runtime_error((cfg.output_dir / "summary.json").string() +
                                     ": cannot open for writing");
        out << summary.dump(1) << '\n';
        return 0;
    });

    return stats;
}

}  // namespace gtda
