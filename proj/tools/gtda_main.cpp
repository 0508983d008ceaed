#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gtda/datasets.hpp"
#include "gtda/io.hpp"
#include "gtda/layout.hpp"
#include "gtda/lens.hpp"
#include "gtda/mapper.hpp"
#include "gtda/pipeline.hpp"
#include "gtda/preprocess.hpp"
#include "gtda/report.hpp"

namespace {

using namespace gtda;

void add_param_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--max-size,-K", cfg.params.max_size,
                    "Component size threshold to stop splitting (default: 5% of the "
                    "smallest class when labels are given)");
    cmd->add_option("--min-diff,-d", cfg.params.min_diff,
                    "Lens difference threshold to stop splitting")
        ->capture_default_str();
    cmd->add_option("--overlap,-r", cfg.params.overlap, "Overlap ratio of the split bins")
        ->capture_default_str();
    cmd->add_option("--min-node,--s1", cfg.params.min_node_size,
                    "Smallest kept Reeb node size")
        ->capture_default_str();
    cmd->add_option("--min-component,--s2", cfg.params.min_component_size,
                    "Smallest kept Reeb component size (in nodes)")
        ->capture_default_str();
    cmd->add_option("--alpha", cfg.params.alpha, "Smoothing/diffusion parameter")
        ->capture_default_str();
    cmd->add_option("--smooth-steps,-S", cfg.params.smooth_steps, "Lens smoothing steps")
        ->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "Random seed (layout)")->capture_default_str();
    cmd->add_option("--workers", cfg.workers, "Worker threads")->capture_default_str();
    cmd->add_option("--format", cfg.formats, "Report formats (json dot graphml html)")
        ->capture_default_str();
}

void add_input_flags(CLI::App* cmd, RunConfig& cfg, bool labels_required) {
    auto* graph = cmd->add_option("--graph", cfg.graph_path, "Edge list input");
    auto* emb = cmd->add_option("--embeddings", cfg.embeddings_path,
                                "Embeddings input (.csv or .bin), turned into a kNN graph");
    graph->excludes(emb);
    cmd->add_option("--lens", cfg.lens_path, "Lens CSV input")->required();
    auto* labels = cmd->add_option("--labels", cfg.labels_path, "Labels CSV input");
    if (labels_required) labels->required();
    cmd->add_option("-o,--output", cfg.output_dir, "Output directory")->required();
    cmd->add_option("--knn-k", cfg.knn_k, "Neighbors for the embeddings graph")
        ->capture_default_str();
    std::map<std::string, Metric> metrics{{"cosine", Metric::Cosine},
                                          {"euclidean", Metric::Euclidean}};
    cmd->add_option("--knn-metric", cfg.knn_metric, "Metric for the embeddings graph")
        ->transform(CLI::CheckedTransformer(metrics, CLI::ignore_case));
    cmd->add_option("--pca", cfg.pca_dim, "PCA-whiten embeddings to this dimension first");
    cmd->add_flag("--l2", cfg.l2, "L2-normalize embedding rows before the kNN graph");
    std::map<std::string, SummaryMode> modes{{"predicted", SummaryMode::Predicted},
                                             {"training", SummaryMode::Training}};
    cmd->add_option("--pies", cfg.summary_mode, "Pie charts from predicted or training labels")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
}

int run_build_or_diagnose(RunConfig& cfg) {
    try {
        run_pipeline(cfg);
        return 0;
    } catch (const StageError& e) {
        std::cerr << "gtda: " << e.what() << "\n";
        return e.exit_code();
    }
}

int run_mapper(const std::filesystem::path& graph_path, const std::filesystem::path& lens_path,
               const std::filesystem::path& labels_path, const std::filesystem::path& out_dir,
               MapperParams mp, const RunConfig& cfg) {
    try {
        if (!std::filesystem::exists(graph_path))
            throw StageError("ingest", graph_path.string() + ": no such file", 2);
        if (!std::filesystem::exists(lens_path))
            throw StageError("ingest", lens_path.string() + ": no such file", 2);
        const Graph g = read_edge_list(graph_path);
        LensMatrix lens = read_lens_csv(lens_path);
        lens = minmax_normalize(smooth(lens, g, {cfg.params.alpha, cfg.params.smooth_steps},
                                       cfg.workers));
        const auto cover = mapper_cover(lens, mp);
        const ReebNet net = mapper_reeb(g, cover, cfg.workers);
        std::cerr << "mapper: " << cover.size() << " cells, " << net.nodes.size()
                  << " nodes, " << net.overlap_edges.size() << " edges\n";
        const Layout layout = layout_reeb(net, cfg.seed);

        ReportData data;
        data.net = &net;
        data.layout = &layout;
        std::optional<LabelsFile> labels;
        std::optional<std::vector<NodeSummary>> summaries;
        if (!labels_path.empty()) {
            labels = read_labels_csv(labels_path);
            labels->data.validate(g.num_vertices());
            summaries = summarize(net, labels->data.predicted, labels->data.num_classes,
                                  SummaryMode::Predicted);
            data.summaries = &*summaries;
            for (std::int32_t c = 0; c < labels->data.num_classes; ++c)
                data.class_names.push_back("class_" + std::to_string(c));
        }
        emit_report(data, out_dir, cfg.formats);
        return 0;
    } catch (const StageError& e) {
        std::cerr << "gtda: " << e.what() << "\n";
        return e.exit_code();
    }
}

int run_synth(std::size_t n, double noise, double label_noise, std::uint64_t seed,
              const std::filesystem::path& out_dir) {
    const SwissRollInstance inst = swiss_roll(n, noise, seed);
    const SurrogateOutput model = surrogate_predictor(inst, label_noise, seed);
    std::filesystem::create_directories(out_dir);
    write_edge_list(out_dir / "edges.txt", combined_graph(inst));
    write_lens_csv(out_dir / "lens.csv", model.lens);
    LabelsFile lf;
    lf.data = model.labels;
    lf.true_labels = inst.labels;
    lf.valid_mask = inst.valid_mask;
    write_labels_csv(out_dir / "labels.csv", lf);
    std::cerr << "synth: wrote edges.txt, lens.csv, labels.csv under " << out_dir.string()
              << "\n";
    return 0;
}

int run_knn(const std::filesystem::path& emb_path, std::uint32_t k, Metric metric,
            std::size_t pca_dim, bool l2, unsigned workers,
            const std::filesystem::path& out_path) {
    if (!std::filesystem::exists(emb_path)) {
        std::cerr << "gtda: [ingest] " << emb_path.string() << ": no such file\n";
        return 2;
    }
    EmbeddingMatrix e = emb_path.extension() == ".bin" ? read_embeddings_bin(emb_path)
                                                       : read_embeddings_csv(emb_path);
    if (pca_dim > 0) {
        PcaResult pca = pca_whiten(e, pca_dim);
        if (pca.retained < pca_dim)
            std::cerr << "knn: rank deficiency, kept " << pca.retained << " of " << pca_dim
                      << " components\n";
        e = std::move(pca.transformed);
    }
    if (l2) {
        L2Result r = l2_normalize(e);
        if (!r.zero_rows.empty())
            std::cerr << "knn: " << r.zero_rows.size() << " zero rows left unnormalized\n";
        e = std::move(r.normalized);
    }
    write_edge_list(out_path, knn_graph(e, k, metric, workers));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reeb networks over prediction lenses, with diffusion error estimates"};
    app.require_subcommand(1);

    RunConfig cfg;

    auto* build = app.add_subcommand("build", "Build the Reeb net and reports");
    add_input_flags(build, cfg, false);
    add_param_flags(build, cfg);

    auto* diagnose = app.add_subcommand("diagnose", "Build, then estimate per-datapoint errors");
    add_input_flags(diagnose, cfg, true);
    add_param_flags(diagnose, cfg);
    diagnose->add_option("--diffuse-steps", cfg.diffuse_steps,
                         "Diffusion steps for error estimation")
        ->capture_default_str();

    auto* mapper = app.add_subcommand("mapper", "Classic mapper baseline on the same inputs");
    std::filesystem::path m_graph, m_lens, m_labels, m_out;
    MapperParams mp;
    mapper->add_option("--graph", m_graph, "Edge list input")->required();
    mapper->add_option("--lens", m_lens, "Lens CSV input")->required();
    mapper->add_option("--labels", m_labels, "Labels CSV input (for pie charts)");
    mapper->add_option("-o,--output", m_out, "Output directory")->required();
    mapper->add_option("--bins", mp.bins_per_lens, "Bins per lens")->capture_default_str();
    mapper->add_option("--bin-overlap", mp.overlap_fraction, "Bin extension fraction")
        ->capture_default_str();
    mapper->add_option("--alpha", cfg.params.alpha, "Smoothing parameter")->capture_default_str();
    mapper->add_option("--smooth-steps,-S", cfg.params.smooth_steps, "Lens smoothing steps")
        ->capture_default_str();
    mapper->add_option("--seed", cfg.seed, "Random seed (layout)")->capture_default_str();
    mapper->add_option("--workers", cfg.workers, "Worker threads")->capture_default_str();
    mapper->add_option("--format", cfg.formats, "Report formats")->capture_default_str();

    auto* synth = app.add_subcommand("synth", "Generate synthetic datasets");
    auto* roll = synth->add_subcommand("swiss-roll", "Three-class Swiss roll with a surrogate "
                                                     "predictor");
    std::size_t roll_n = 1000;
    double roll_noise = 1.2, roll_label_noise = 0.15;
    std::uint64_t roll_seed = 0;
    std::filesystem::path roll_out;
    roll->add_option("--n", roll_n, "Sample count")->capture_default_str();
    roll->add_option("--noise", roll_noise, "Coordinate noise")->capture_default_str();
    roll->add_option("--label-noise", roll_label_noise, "Fraction of corrupted seed labels")
        ->capture_default_str();
    roll->add_option("--seed", roll_seed, "Random seed")->capture_default_str();
    roll->add_option("-o,--output", roll_out, "Output directory")->required();
    synth->require_subcommand(1);

    auto* knn = app.add_subcommand("knn", "Embeddings to kNN edge list");
    std::filesystem::path knn_in, knn_out;
    std::uint32_t knn_k = 5;
    Metric knn_metric = Metric::Cosine;
    std::size_t knn_pca = 0;
    bool knn_l2 = false;
    unsigned knn_workers = 1;
    knn->add_option("--embeddings", knn_in, "Embeddings input (.csv or .bin)")->required();
    knn->add_option("-o,--output", knn_out, "Edge list output")->required();
    knn->add_option("-k", knn_k, "Neighbor count")->capture_default_str();
    std::map<std::string, Metric> metrics{{"cosine", Metric::Cosine},
                                          {"euclidean", Metric::Euclidean}};
    knn->add_option("--metric", knn_metric, "Distance metric")
        ->transform(CLI::CheckedTransformer(metrics, CLI::ignore_case));
    knn->add_option("--pca", knn_pca, "PCA-whiten to this dimension first");
    knn->add_flag("--l2", knn_l2, "L2-normalize rows first");
    knn->add_option("--workers", knn_workers, "Worker threads")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (build->parsed()) return run_build_or_diagnose(cfg);
        if (diagnose->parsed()) {
            cfg.diagnose = true;
            return run_build_or_diagnose(cfg);
        }
        if (mapper->parsed()) return run_mapper(m_graph, m_lens, m_labels, m_out, mp, cfg);
        if (synth->parsed()) return run_synth(roll_n, roll_noise, roll_label_noise, roll_seed,
                                              roll_out);
        if (knn->parsed())
            return run_knn(knn_in, knn_k, knn_metric, knn_pca, knn_l2, knn_workers, knn_out);
    } catch (const std::exception& e) {
        std::cerr << "gtda: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
