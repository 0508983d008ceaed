#include "gtda/io.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace gtda {

namespace {

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
    throw std::runtime_error(path.string() + ": " + what);
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(path, "cannot open for reading");
    return in;
}

std::ofstream open_output(const std::filesystem::path& path, bool binary = false) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) fail(path, "cannot open for writing");
    return out;
}

// Splits on commas and/or whitespace; empty fields are skipped.
std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',' || ch == ' ' || ch == '\t' || ch == '\r') {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

double parse_double(const std::string& s, const std::filesystem::path& path, std::size_t lineno) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        fail(path, "line " + std::to_string(lineno) + ": bad number '" + s + "'");
    return v;
}

std::int64_t parse_int(const std::string& s, const std::filesystem::path& path,
                       std::size_t lineno) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        fail(path, "line " + std::to_string(lineno) + ": bad integer '" + s + "'");
    return v;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

Graph read_edge_list(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::vector<Edge> edges;
    bool weighted = false;
    vertex_t max_id = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.front() == '#') continue;
        const auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (fields.size() != 2 && fields.size() != 3)
            fail(path, "line " + std::to_string(lineno) + ": expected 'u v [w]'");
        const std::int64_t u = parse_int(fields[0], path, lineno);
        const std::int64_t v = parse_int(fields[1], path, lineno);
        if (u < 0 || v < 0) fail(path, "line " + std::to_string(lineno) + ": negative vertex id");
        Edge e{static_cast<vertex_t>(u), static_cast<vertex_t>(v), 1.0};
        if (fields.size() == 3) {
            e.w = parse_double(fields[2], path, lineno);
            weighted = true;
        }
        max_id = std::max({max_id, e.u, e.v});
        edges.push_back(e);
    }
    if (edges.empty()) fail(path, "no edges");
    return Graph::from_edges(max_id + 1, edges, weighted);
}

void write_edge_list(const std::filesystem::path& path, const Graph& g) {
    std::ofstream out = open_output(path);
    out << "# " << g.num_vertices() << " vertices, " << g.num_edges() << " edges\n";
    for (const Edge& e : g.edge_list()) {
        out << e.u << ' ' << e.v;
        if (g.weighted()) out << ' ' << format_double(e.w);
        out << '\n';
    }
    if (!out) fail(path, "write failed");
}

LensMatrix read_lens_csv(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) fail(path, "missing header row");
    LensMatrix p;
    p.column_names = split_fields(line);
    p.cols = p.column_names.size();
    if (p.cols == 0) fail(path, "empty header row");
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (fields.size() != p.cols)
            fail(path, "line " + std::to_string(lineno) + ": expected " + std::to_string(p.cols) +
                           " values, got " + std::to_string(fields.size()));
        for (const auto& f : fields) p.values.push_back(parse_double(f, path, lineno));
        ++p.rows;
    }
    if (p.rows == 0) fail(path, "no data rows");
    return p;
}

void write_lens_csv(const std::filesystem::path& path, const LensMatrix& p) {
    std::ofstream out = open_output(path);
    for (std::size_t c = 0; c < p.cols; ++c)
        out << (c ? "," : "") << (p.column_names[c].empty() ? "lens_" + std::to_string(c)
                                                            : p.column_names[c]);
    out << '\n';
    for (std::size_t r = 0; r < p.rows; ++r) {
        for (std::size_t c = 0; c < p.cols; ++c)
            out << (c ? "," : "") << format_double(p.at(r, c));
        out << '\n';
    }
    if (!out) fail(path, "write failed");
}

LabelsFile read_labels_csv(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) fail(path, "missing header row");
    const auto header = split_fields(line);
    const std::vector<std::string> expected = {"vertex_id", "true_label", "predicted_label",
                                               "prediction_prob", "split"};
    if (header != expected)
        fail(path, "header must be 'vertex_id,true_label,predicted_label,prediction_prob,split'");

    struct Row {
        std::int64_t id;
        std::int32_t truth, predicted;
        double prob;
        int split;  // 0 train, 1 valid, 2 test
    };
    std::vector<Row> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (fields.size() != 5) fail(path, "line " + std::to_string(lineno) + ": expected 5 fields");
        Row row;
        row.id = parse_int(fields[0], path, lineno);
        row.truth = static_cast<std::int32_t>(parse_int(fields[1], path, lineno));
        row.predicted = static_cast<std::int32_t>(parse_int(fields[2], path, lineno));
        row.prob = parse_double(fields[3], path, lineno);
        if (fields[4] == "train")
            row.split = 0;
        else if (fields[4] == "valid")
            row.split = 1;
        else if (fields[4] == "test")
            row.split = 2;
        else
            fail(path, "line " + std::to_string(lineno) + ": split must be train/valid/test");
        rows.push_back(row);
    }
    if (rows.empty()) fail(path, "no data rows");

    const std::size_t n = rows.size();
    LabelsFile lf;
    lf.data.predicted.assign(n, 0);
    lf.data.training_mask.assign(n, 0);
    lf.data.training_labels.assign(n, -1);
    lf.data.prediction_probs.assign(n, 0.0);
    lf.true_labels.assign(n, -1);
    lf.valid_mask.assign(n, 0);
    std::int32_t max_class = 0;
    std::vector<bool> seen(n, false);
    for (const Row& row : rows) {
        if (row.id < 0 || static_cast<std::size_t>(row.id) >= n)
            fail(path, "vertex ids must be 0.." + std::to_string(n - 1));
        const auto i = static_cast<std::size_t>(row.id);
        if (seen[i]) fail(path, "duplicate vertex id " + std::to_string(row.id));
        seen[i] = true;
        lf.data.predicted[i] = row.predicted;
        lf.data.prediction_probs[i] = row.prob;
        lf.true_labels[i] = row.truth;
        if (row.split != 2) {
            // Train and validation points both count as known labels.
            lf.data.training_mask[i] = 1;
            lf.data.training_labels[i] = row.truth;
            if (row.split == 1) lf.valid_mask[i] = 1;
            if (row.truth < 0)
                fail(path, "vertex " + std::to_string(row.id) + ": train/valid rows need a label");
        }
        max_class = std::max({max_class, row.predicted, row.truth});
    }
    lf.data.num_classes = max_class + 1;
    return lf;
}

void write_labels_csv(const std::filesystem::path& path, const LabelsFile& lf) {
    std::ofstream out = open_output(path);
    out << "vertex_id,true_label,predicted_label,prediction_prob,split\n";
    const std::size_t n = lf.data.predicted.size();
    for (std::size_t i = 0; i < n; ++i) {
        const char* split = "test";
        if (lf.data.training_mask[i])
            split = (i < lf.valid_mask.size() && lf.valid_mask[i]) ? "valid" : "train";
        out << i << ',' << (i < lf.true_labels.size() ? lf.true_labels[i] : -1) << ','
            << lf.data.predicted[i] << ','
            << format_double(lf.data.prediction_probs.empty() ? 0.0 : lf.data.prediction_probs[i])
            << ',' << split << '\n';
    }
    if (!out) fail(path, "write failed");
}

EmbeddingMatrix read_embeddings_csv(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    EmbeddingMatrix e;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.front() == '#') continue;
        const auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (e.cols == 0)
            e.cols = fields.size();
        else if (fields.size() != e.cols)
            fail(path, "line " + std::to_string(lineno) + ": ragged row");
        for (const auto& f : fields) e.values.push_back(parse_double(f, path, lineno));
        ++e.rows;
    }
    if (e.rows == 0) fail(path, "no rows");
    return e;
}

EmbeddingMatrix read_embeddings_bin(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open for reading");
    std::int64_t header[2];
    in.read(reinterpret_cast<char*>(header), sizeof(header));
    if (!in) fail(path, "truncated header");
    if (header[0] < 1 || header[1] < 1) fail(path, "header (n, D) must be positive");
    EmbeddingMatrix e(static_cast<std::size_t>(header[0]), static_cast<std::size_t>(header[1]));
    in.read(reinterpret_cast<char*>(e.values.data()),
            static_cast<std::streamsize>(e.values.size() * sizeof(double)));
    if (!in) fail(path, "truncated data");
    return e;
}

void write_embeddings_bin(const std::filesystem::path& path, const EmbeddingMatrix& e) {
    std::ofstream out = open_output(path, true);
    const std::int64_t header[2] = {static_cast<std::int64_t>(e.rows),
                                    static_cast<std::int64_t>(e.cols)};
    out.write(reinterpret_cast<const char*>(header), sizeof(header));
    out.write(reinterpret_cast<const char*>(e.values.data()),
              static_cast<std::streamsize>(e.values.size() * sizeof(double)));
    if (!out) fail(path, "write failed");
}

}  // namespace gtda
