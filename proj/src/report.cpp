#include "gtda/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "gtda/io.hpp"

namespace gtda {

namespace {

using nlohmann::json;

// Categorical palette for pie slices (cycled past 12 classes).
const char* const kPalette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759",
                                "#b07aa1", "#76b7b2", "#edc948", "#ff9da7",
                                "#9c755f", "#bab0ac", "#382ca8", "#86bcb6"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
    return out;
}

// Mean estimated error of a node's members, for the red overlay.
std::vector<double> node_mean_errors(const ReebNet& net, const ErrorReport& errors) {
    std::vector<double> out(net.nodes.size(), 0.0);
    for (std::size_t i = 0; i < net.nodes.size(); ++i) {
        double sum = 0.0;
        for (vertex_t v : net.nodes[i].members) sum += errors.estimated_error[v];
        out[i] = net.nodes[i].empty() ? 0.0 : sum / static_cast<double>(net.nodes[i].size());
    }
    return out;
}

json reebnet_to_json(const ReportData& data) {
    const ReebNet& net = *data.net;
    json j;
    j["format"] = "reebnet/1";
    j["num_datapoints"] = net.num_datapoints;
    json nodes = json::array();
    for (const VertexSet& node : net.nodes) nodes.push_back(node.members);
    j["nodes"] = std::move(nodes);
    json overlap = json::array(), extra = json::array(), bridges = json::array();
    for (const ReebEdge& e : net.overlap_edges) overlap.push_back({e.a, e.b});
    for (const ReebEdge& e : net.extra_edges) extra.push_back({e.a, e.b});
    for (const auto& [u, v] : net.extra_bridges) bridges.push_back({u, v});
    j["overlap_edges"] = std::move(overlap);
    j["extra_edges"] = std::move(extra);
    j["extra_bridges"] = std::move(bridges);
    j["excluded"] = net.excluded.members;
    if (data.summaries) {
        json summaries = json::array();
        for (const NodeSummary& s : *data.summaries) {
            json js;
            js["size"] = s.size;
            js["mixture"] = s.mixture;
            js["dominant"] = s.dominant;
            js["empty"] = s.empty_mixture;
            summaries.push_back(std::move(js));
        }
        j["summaries"] = std::move(summaries);
    } else {
        j["summaries"] = nullptr;
    }
    if (data.layout) {
        json layout = json::array();
        for (const auto& p : data.layout->positions) layout.push_back({p[0], p[1]});
        j["layout"] = std::move(layout);
    }
    if (!data.class_names.empty()) j["class_names"] = data.class_names;
    if (data.projected) {
        const auto closest = edge_closest_members(net, *data.projected);
        json oc = json::array(), ec = json::array();
        for (std::size_t k = 0; k < net.overlap_edges.size(); ++k)
            oc.push_back({closest[k][0], closest[k][1]});
        for (std::size_t k = 0; k < net.extra_edges.size(); ++k) {
            const auto& c = closest[net.overlap_edges.size() + k];
            ec.push_back({c[0], c[1]});
        }
        j["overlap_closest"] = std::move(oc);
        j["extra_closest"] = std::move(ec);
    }
    return j;
}

void write_dot(const ReportData& data, const std::filesystem::path& path) {
    const ReebNet& net = *data.net;
    std::ofstream out = open_out(path);
    out << "graph reebnet {\n";
    out << "  node [shape=circle, style=filled];\n";
    for (std::size_t i = 0; i < net.nodes.size(); ++i) {
        const auto& p = data.layout->positions[i];
        out << "  n" << i << " [label=\"" << net.nodes[i].size() << "\", pos=\""
            << format_double(p[0]) << ',' << format_double(p[1]) << "!\"";
        if (data.summaries && !(*data.summaries)[i].empty_mixture) {
            const auto dom = static_cast<std::size_t>((*data.summaries)[i].dominant);
            out << ", fillcolor=\"" << kPalette[dom % kPaletteSize] << "\"";
        }
        out << "];\n";
    }
    for (const ReebEdge& e : net.overlap_edges) out << "  n" << e.a << " -- n" << e.b << ";\n";
    for (const ReebEdge& e : net.extra_edges)
        out << "  n" << e.a << " -- n" << e.b << " [style=dashed, color=red];\n";
    out << "}\n";
}

void write_graphml(const ReportData& data, const std::filesystem::path& path) {
    const ReebNet& net = *data.net;
    std::ofstream out = open_out(path);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"d_size\" for=\"node\" attr.name=\"size\" attr.type=\"int\"/>\n"
        << "  <key id=\"d_x\" for=\"node\" attr.name=\"x\" attr.type=\"double\"/>\n"
        << "  <key id=\"d_y\" for=\"node\" attr.name=\"y\" attr.type=\"double\"/>\n"
        << "  <key id=\"d_class\" for=\"node\" attr.name=\"dominant_class\" attr.type=\"string\"/>\n"
        << "  <key id=\"d_err\" for=\"node\" attr.name=\"mean_error\" attr.type=\"double\"/>\n"
        << "  <key id=\"d_kind\" for=\"edge\" attr.name=\"kind\" attr.type=\"string\"/>\n"
        << "  <graph id=\"reebnet\" edgedefault=\"undirected\">\n";
    std::vector<double> mean_err;
    if (data.errors) mean_err = node_mean_errors(net, *data.errors);
    for (std::size_t i = 0; i < net.nodes.size(); ++i) {
        out << "    <node id=\"n" << i << "\">\n";
        out << "      <data key=\"d_size\">" << net.nodes[i].size() << "</data>\n";
        out << "      <data key=\"d_x\">" << format_double(data.layout->positions[i][0])
            << "</data>\n";
        out << "      <data key=\"d_y\">" << format_double(data.layout->positions[i][1])
            << "</data>\n";
        if (data.summaries && !(*data.summaries)[i].empty_mixture) {
            const auto dom = static_cast<std::size_t>((*data.summaries)[i].dominant);
            const std::string name = dom < data.class_names.size()
                                         ? data.class_names[dom]
                                         : "class_" + std::to_string(dom);
            out << "      <data key=\"d_class\">" << xml_escape(name) << "</data>\n";
        }
        if (data.errors)
            out << "      <data key=\"d_err\">" << format_double(mean_err[i]) << "</data>\n";
        out << "    </node>\n";
    }
    std::size_t eid = 0;
    auto edge = [&](const ReebEdge& e, const char* kind) {
        out << "    <edge id=\"e" << eid++ << "\" source=\"n" << e.a << "\" target=\"n" << e.b
            << "\"><data key=\"d_kind\">" << kind << "</data></edge>\n";
    };
    for (const ReebEdge& e : net.overlap_edges) edge(e, "overlap");
    for (const ReebEdge& e : net.extra_edges) edge(e, "extra");
    out << "  </graph>\n</graphml>\n";
}

// One pie-chart node: full circle for single-slice mixtures, arc wedges
// otherwise.
void svg_pie(std::ostream& out, double cx, double cy, double r,
             const std::vector<double>& mixture) {
    double start = -0.5 * std::numbers::pi;  // 12 o'clock
    for (std::size_t c = 0; c < mixture.size(); ++c) {
        if (mixture[c] <= 0.0) continue;
        const char* color = kPalette[c % kPaletteSize];
        if (mixture[c] >= 1.0 - 1e-12) {
            out << "<circle cx=\"" << format_double(cx) << "\" cy=\"" << format_double(cy)
                << "\" r=\"" << format_double(r) << "\" fill=\"" << color << "\"/>";
            return;
        }
        const double sweep = mixture[c] * 2.0 * std::numbers::pi;
        const double end = start + sweep;
        const double x0 = cx + r * std::cos(start), y0 = cy + r * std::sin(start);
        const double x1 = cx + r * std::cos(end), y1 = cy + r * std::sin(end);
        out << "<path d=\"M" << format_double(cx) << ' ' << format_double(cy) << " L"
            << format_double(x0) << ' ' << format_double(y0) << " A" << format_double(r) << ' '
            << format_double(r) << " 0 " << (sweep > std::numbers::pi ? 1 : 0) << " 1 "
            << format_double(x1) << ' ' << format_double(y1) << " Z\" fill=\"" << color
            << "\"/>";
        start = end;
    }
}

void write_html(const ReportData& data, const std::filesystem::path& path) {
    const ReebNet& net = *data.net;
    const Layout& layout = *data.layout;
    std::ofstream out = open_out(path);

    double lo_x = 0, lo_y = 0, hi_x = 1, hi_y = 1;
    if (!layout.positions.empty()) {
        lo_x = hi_x = layout.positions[0][0];
        lo_y = hi_y = layout.positions[0][1];
        for (const auto& p : layout.positions) {
            lo_x = std::min(lo_x, p[0]);
            hi_x = std::max(hi_x, p[0]);
            lo_y = std::min(lo_y, p[1]);
            hi_y = std::max(hi_y, p[1]);
        }
    }
    std::size_t max_size = 1;
    for (const VertexSet& node : net.nodes) max_size = std::max(max_size, node.size());
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1.0});
    const double r_max = 0.022 * span, r_min = 0.006 * span;
    const double margin = r_max * 2.0;

    std::vector<double> mean_err;
    if (data.errors) mean_err = node_mean_errors(net, *data.errors);

    auto radius = [&](std::size_t size) {
        return r_min + (r_max - r_min) * std::sqrt(static_cast<double>(size) /
                                                   static_cast<double>(max_size));
    };

    out << "<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\"><title>Reeb net</title>"
        << "<style>body{font-family:sans-serif;margin:1em}</style></head><body>\n"
        << "<h1>Reeb net</h1>\n<p>" << net.nodes.size() << " nodes, "
        << net.overlap_edges.size() << " overlap edges, " << net.extra_edges.size()
        << " extra edges, " << net.excluded.size() << " excluded datapoints.</p>\n";
    if (!data.class_names.empty()) {
        out << "<p>";
        for (std::size_t c = 0; c < data.class_names.size(); ++c)
            out << "<span style=\"color:" << kPalette[c % kPaletteSize] << "\">&#9632; "
                << xml_escape(data.class_names[c]) << "</span> ";
        out << "</p>\n";
    }
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1200\" viewBox=\""
        << format_double(lo_x - margin) << ' ' << format_double(lo_y - margin) << ' '
        << format_double(hi_x - lo_x + 2 * margin) << ' '
        << format_double(hi_y - lo_y + 2 * margin) << "\">\n";

    const double stroke = 0.0015 * span;
    for (const ReebEdge& e : net.overlap_edges)
        out << "<line x1=\"" << format_double(layout.positions[e.a][0]) << "\" y1=\""
            << format_double(layout.positions[e.a][1]) << "\" x2=\""
            << format_double(layout.positions[e.b][0]) << "\" y2=\""
            << format_double(layout.positions[e.b][1]) << "\" stroke=\"#555\" stroke-width=\""
            << format_double(stroke) << "\"/>\n";
    for (const ReebEdge& e : net.extra_edges)
        out << "<line x1=\"" << format_double(layout.positions[e.a][0]) << "\" y1=\""
            << format_double(layout.positions[e.a][1]) << "\" x2=\""
            << format_double(layout.positions[e.b][0]) << "\" y2=\""
            << format_double(layout.positions[e.b][1])
            << "\" stroke=\"red\" stroke-dasharray=\"" << format_double(3 * stroke) << ' '
            << format_double(3 * stroke) << "\" stroke-width=\"" << format_double(stroke)
            << "\"/>\n";

    for (std::size_t i = 0; i < net.nodes.size(); ++i) {
        const double cx = layout.positions[i][0], cy = layout.positions[i][1];
        const double r = radius(net.nodes[i].size());
        out << "<g>";
        // Error overlay first so the pie sits on top of the red halo.
        if (data.errors && mean_err[i] > 0.0)
            out << "<circle cx=\"" << format_double(cx) << "\" cy=\"" << format_double(cy)
                << "\" r=\"" << format_double(r * 1.45) << "\" fill=\"red\" opacity=\""
                << format_double(0.85 * mean_err[i]) << "\"/>";
        if (data.summaries && !(*data.summaries)[i].empty_mixture)
            svg_pie(out, cx, cy, r, (*data.summaries)[i].mixture);
        else
            out << "<circle cx=\"" << format_double(cx) << "\" cy=\"" << format_double(cy)
                << "\" r=\"" << format_double(r) << "\" fill=\"#999\"/>";
        out << "<title>node " << i << ": " << net.nodes[i].size() << " datapoints";
        if (data.errors) out << ", mean error " << format_double(mean_err[i]);
        out << "</title></g>\n";
    }
    out << "</svg>\n</body></html>\n";
}

}  // namespace

std::vector<std::array<vertex_t, 2>> edge_closest_members(const ReebNet& net,
                                                          const Graph& projected) {
    std::vector<ReebEdge> edges = net.overlap_edges;
    edges.insert(edges.end(), net.extra_edges.begin(), net.extra_edges.end());
    std::vector<std::array<vertex_t, 2>> out(edges.size());

    const vertex_t n = projected.num_vertices();
    std::vector<std::uint32_t> epoch_of(n, 0), dist(n, 0);
    std::uint32_t epoch = 0;
    std::vector<vertex_t> frontier;

    // Hop distances from `sources` within the region, then the argmin member
    // of `targets` (ties: larger projected degree, then smaller id).
    auto closest = [&](const VertexSet& region_a, const VertexSet& region_b,
                       const VertexSet& sources, const VertexSet& targets) -> vertex_t {
        ++epoch;
        for (vertex_t v : region_a.members) epoch_of[v] = epoch;
        for (vertex_t v : region_b.members) epoch_of[v] = epoch;
        constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();
        for (vertex_t v : region_a.members) dist[v] = kUnreached;
        for (vertex_t v : region_b.members) dist[v] = kUnreached;
        frontier.clear();
        for (vertex_t v : sources.members) {
            dist[v] = 0;
            frontier.push_back(v);
        }
        for (std::size_t head = 0; head < frontier.size(); ++head) {
            const vertex_t v = frontier[head];
            for (vertex_t u : projected.neighbors(v)) {
                if (epoch_of[u] != epoch || dist[u] != kUnreached) continue;
                dist[u] = dist[v] + 1;
                frontier.push_back(u);
            }
        }
        vertex_t best = targets.members.front();
        for (vertex_t v : targets.members) {
            if (dist[v] < dist[best]) {
                best = v;
            } else if (dist[v] == dist[best] && v != best) {
                const auto dv = projected.neighbors(v).size();
                const auto db = projected.neighbors(best).size();
                if (dv > db || (dv == db && v < best)) best = v;
            }
        }
        return best;
    };

    for (std::size_t k = 0; k < edges.size(); ++k) {
        const VertexSet& na = net.nodes[edges[k].a];
        const VertexSet& nb = net.nodes[edges[k].b];
        out[k][0] = closest(na, nb, nb, na);  // member of a closest to b
        out[k][1] = closest(na, nb, na, nb);  // member of b closest to a
    }
    return out;
}

void emit_report(const ReportData& data, const std::filesystem::path& dir,
                 const std::vector<std::string>& formats) {
    if (!data.net || !data.layout)
        throw std::invalid_argument("emit_report: net and layout are required");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (!std::filesystem::is_directory(dir))
        throw std::runtime_error(dir.string() + ": not a writable directory");

    auto wants = [&](const char* f) {
        return std::find(formats.begin(), formats.end(), f) != formats.end();
    };
    if (wants("json")) {
        std::ofstream out = open_out(dir / "reebnet.json");
        out << reebnet_to_json(data).dump(1) << '\n';
    }
    if (wants("dot")) write_dot(data, dir / "reebnet.dot");
    if (wants("graphml")) write_graphml(data, dir / "reebnet.graphml");
    if (wants("html")) write_html(data, dir / "map.html");
    if (data.errors && data.labels)
        write_errors_csv(dir / "errors.csv", *data.errors, *data.labels,
                         data.corrected);
}

ReebNetFile read_reebnet_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path.string() + ": cannot open for reading");
    json j = json::parse(in);
    if (j.value("format", "") != std::string("reebnet/1"))
        throw std::runtime_error(path.string() + ": not a reebnet/1 file");

    ReebNetFile out;
    out.net.num_datapoints = j.at("num_datapoints").get<vertex_t>();
    for (const auto& members : j.at("nodes")) {
        VertexSet vs;
        vs.members = members.get<std::vector<vertex_t>>();
        out.net.nodes.push_back(std::move(vs));
    }
    for (const auto& e : j.at("overlap_edges"))
        out.net.overlap_edges.push_back({e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint32_t>()});
    for (const auto& e : j.at("extra_edges"))
        out.net.extra_edges.push_back({e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint32_t>()});
    for (const auto& b : j.at("extra_bridges"))
        out.net.extra_bridges.emplace_back(b.at(0).get<vertex_t>(), b.at(1).get<vertex_t>());
    out.net.excluded.members = j.at("excluded").get<std::vector<vertex_t>>();
    if (j.contains("summaries") && !j.at("summaries").is_null()) {
        std::vector<NodeSummary> summaries;
        for (const auto& js : j.at("summaries")) {
            NodeSummary s;
            s.size = js.at("size").get<std::size_t>();
            s.mixture = js.at("mixture").get<std::vector<double>>();
            s.dominant = js.at("dominant").get<std::int32_t>();
            s.empty_mixture = js.at("empty").get<bool>();
            summaries.push_back(std::move(s));
        }
        out.summaries = std::move(summaries);
    }
    if (j.contains("layout")) {
        Layout layout;
        for (const auto& p : j.at("layout"))
            layout.positions.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        out.layout = std::move(layout);
    }
    if (j.contains("class_names"))
        out.class_names = j.at("class_names").get<std::vector<std::string>>();
    return out;
}

void write_errors_csv(const std::filesystem::path& path, const ErrorReport& report,
                      const LabelData& labels, const std::vector<std::int32_t>* corrected) {
    std::ofstream out = open_out(path);
    out << "vertex_id,estimated_error,baseline_uncertainty,predicted";
    if (corrected) out << ",corrected";
    out << '\n';
    for (std::size_t i = 0; i < report.estimated_error.size(); ++i) {
        out << i << ',' << format_double(report.estimated_error[i]) << ',';
        if (!report.baseline_uncertainty.empty())
            out << format_double(report.baseline_uncertainty[i]);
        out << ',' << labels.predicted[i];
        if (corrected) out << ',' << (*corrected)[i];
        out << '\n';
    }
    if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace gtda
