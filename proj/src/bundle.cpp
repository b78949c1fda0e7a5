#include "tempnet/bundle.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "tempnet/ingest.hpp"

namespace tempnet {

namespace {

using nlohmann::json;

// Shortest decimal string that parses back to exactly x.
std::string fmt_exact(double x) {
    char buf[48];
    for (int prec : {15, 16, 17}) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) return buf;
    }
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out;
}

// JSON stand-ins for values JSON cannot hold natively; finite values are
// re-parsed from their 6-significant-digit form so files show what prints.
json json_value(double x) {
    if (std::isnan(x)) return nullptr;
    if (std::isinf(x)) return x > 0 ? json("Inf") : json("-Inf");
    return json(std::strtod(fmt_value(x).c_str(), nullptr));
}

json json_time(Time t) { return json(std::strtod(fmt_time(t).c_str(), nullptr)); }

int column_index(const CsvTable& table, const std::string& name, const std::string& file) {
    for (size_t i = 0; i < table.header.size(); ++i)
        if (table.header[i] == name) return static_cast<int>(i);
    throw Error(file + ": missing column '" + name + "'");
}

double parse_double(const std::string& s, const std::string& context) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw Error(context + ": bad number '" + s + "'");
    return v;
}

}  // namespace

std::string fmt_value(double x) {
    if (std::isnan(x)) return "";
    if (std::isinf(x)) return x > 0 ? "Inf" : "-Inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string fmt_time(Time t) {
    if (std::isnan(t)) return "";
    if (std::isinf(t)) return t > 0 ? "Inf" : "-Inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", t);
    std::string s = buf;
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    if (s == "-0") s = "0";
    return s;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw Error("write failed for " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_bundle(const TemporalNetwork& net, const std::string& dir,
                  const std::string& spell_mode) {
    std::filesystem::create_directories(dir);

    // attribute columns in first-seen vertex order
    std::vector<std::string> attr_names;
    for (const VertexRecord& v : net.vertices())
        for (const auto& [name, value] : v.attributes)
            if (std::find(attr_names.begin(), attr_names.end(), name) == attr_names.end())
                attr_names.push_back(name);

    std::ostringstream vcsv;
    vcsv << "id,label";
    for (const std::string& name : attr_names) vcsv << ',' << csv_field(name);
    vcsv << '\n';
    for (const VertexRecord& v : net.vertices()) {
        vcsv << v.id << ',' << csv_field(v.label);
        for (const std::string& name : attr_names) {
            const std::string* value = v.attribute(name);
            vcsv << ',' << csv_field(value ? *value : std::string());
        }
        vcsv << '\n';
    }
    write_file_atomic(dir + "/vertices.csv", vcsv.str());

    std::ostringstream scsv;
    scsv << "onset,terminus,tail,head,onset_censored,terminus_censored\n";
    std::size_t spell_count = 0;
    for (const TemporalEdge& e : net.edges())
        for (const EdgeSpell& s : e.spells) {
            scsv << fmt_exact(s.onset) << ',' << fmt_exact(s.terminus) << ',' << e.tail << ','
                 << e.head << ',' << (s.onset_censored ? 1 : 0) << ','
                 << (s.terminus_censored ? 1 : 0) << '\n';
            ++spell_count;
        }
    write_file_atomic(dir + "/spells.csv", scsv.str());

    json meta;
    meta["directed"] = net.directed();
    meta["obs_start"] = net.obs_start();
    meta["obs_end"] = net.obs_end();
    meta["vertex_count"] = net.vertex_count();
    meta["edge_count"] = static_cast<int>(net.edges().size());
    meta["spell_count"] = spell_count;
    meta["spell_mode"] = spell_mode;
    json edges = json::array();
    for (const TemporalEdge& e : net.edges()) edges.push_back({e.tail, e.head, e.weight});
    meta["edges"] = std::move(edges);
    write_file_atomic(dir + "/meta.json", meta.dump(2) + "\n");
}

TemporalNetwork read_bundle(const std::string& dir) {
    const std::string vpath = dir + "/vertices.csv";
    const std::string spath = dir + "/spells.csv";
    const std::string mpath = dir + "/meta.json";

    json meta;
    try {
        meta = json::parse(read_file(mpath));
    } catch (const json::exception& e) {
        throw Error(mpath + ": " + e.what());
    }
    if (!meta.is_object() || !meta.contains("obs_start") || !meta.contains("obs_end"))
        throw Error(mpath + ": not a network bundle manifest");

    CsvTable vtable = read_csv_file(vpath);
    const int id_col = column_index(vtable, "id", vpath);
    const int label_col = column_index(vtable, "label", vpath);
    std::vector<VertexRecord> vertices;
    vertices.reserve(vtable.rows.size());
    for (const auto& row : vtable.rows) {
        VertexRecord v;
        v.id = static_cast<int>(parse_double(row[static_cast<size_t>(id_col)], vpath));
        v.label = row[static_cast<size_t>(label_col)];
        for (size_t c = 0; c < vtable.header.size(); ++c) {
            if (static_cast<int>(c) == id_col || static_cast<int>(c) == label_col) continue;
            v.attributes.emplace_back(vtable.header[c], row[c]);
        }
        vertices.push_back(std::move(v));
    }
    std::sort(vertices.begin(), vertices.end(),
              [](const VertexRecord& a, const VertexRecord& b) { return a.id < b.id; });

    std::map<std::pair<int, int>, TemporalEdge> edges;
    if (meta.contains("edges")) {
        for (const auto& entry : meta["edges"]) {
            TemporalEdge e;
            e.tail = entry.at(0).get<int>();
            e.head = entry.at(1).get<int>();
            e.weight = entry.at(2).get<int>();
            edges[{e.tail, e.head}] = std::move(e);
        }
    }

    CsvTable stable = read_csv_file(spath);
    const int c_onset = column_index(stable, "onset", spath);
    const int c_term = column_index(stable, "terminus", spath);
    const int c_tail = column_index(stable, "tail", spath);
    const int c_head = column_index(stable, "head", spath);
    const int c_ocen = column_index(stable, "onset_censored", spath);
    const int c_tcen = column_index(stable, "terminus_censored", spath);
    for (size_t r = 0; r < stable.rows.size(); ++r) {
        const auto& row = stable.rows[r];
        const std::string ctx = spath + " row " + std::to_string(r + 2);
        int tail = static_cast<int>(parse_double(row[static_cast<size_t>(c_tail)], ctx));
        int head = static_cast<int>(parse_double(row[static_cast<size_t>(c_head)], ctx));
        EdgeSpell spell;
        spell.onset = parse_double(row[static_cast<size_t>(c_onset)], ctx);
        spell.terminus = parse_double(row[static_cast<size_t>(c_term)], ctx);
        spell.onset_censored = row[static_cast<size_t>(c_ocen)] == "1";
        spell.terminus_censored = row[static_cast<size_t>(c_tcen)] == "1";
        auto it = edges.find({tail, head});
        if (it == edges.end()) {
            TemporalEdge e;
            e.tail = tail;
            e.head = head;
            it = edges.emplace(std::make_pair(tail, head), std::move(e)).first;
        }
        it->second.spells.push_back(spell);
    }
    std::vector<TemporalEdge> edge_list;
    edge_list.reserve(edges.size());
    for (auto& [dyad, e] : edges) {
        if (e.weight == 0) e.weight = static_cast<int>(e.spells.size());
        edge_list.push_back(std::move(e));
    }

    return TemporalNetwork(std::move(vertices), std::move(edge_list),
                           meta.value("directed", true), meta["obs_start"].get<double>(),
                           meta["obs_end"].get<double>());
}

std::string summary_text(const ObservationSummary& summary) {
    std::ostringstream out;
    out << "temporal network summary\n";
    out << "  vertices = " << summary.vertex_count << '\n';
    out << "  total edges= " << summary.edge_count << '\n';
    out << "  edge spells: " << summary.spell_count << '\n';
    out << "  distinct change times: " << summary.distinct_change_times << '\n';
    out << "  observation period: " << fmt_time(summary.obs_start) << " until "
        << fmt_time(summary.obs_end) << '\n';
    out << "  vertex attributes: ";
    if (summary.attribute_names.empty()) {
        out << "none";
    } else {
        for (size_t i = 0; i < summary.attribute_names.size(); ++i) {
            if (i) out << ", ";
            out << summary.attribute_names[i];
        }
    }
    out << '\n';
    return out.str();
}

std::string metric_series_csv(const MetricSeries& series) {
    std::ostringstream out;
    out << 't';
    for (const std::string& name : series.names) out << ',' << csv_field(name);
    out << '\n';
    for (size_t i = 0; i < series.times.size(); ++i) {
        out << fmt_time(series.times[i]);
        for (double v : series.values[i]) out << ',' << fmt_value(v);
        out << '\n';
    }
    return out.str();
}

std::string metric_series_json(const MetricSeries& series) {
    json doc;
    json columns = json::array();
    columns.push_back("t");
    for (const std::string& name : series.names) columns.push_back(name);
    doc["columns"] = std::move(columns);
    json records = json::array();
    for (size_t i = 0; i < series.times.size(); ++i) {
        json row = json::array();
        row.push_back(json_time(series.times[i]));
        for (double v : series.values[i]) row.push_back(json_value(v));
        records.push_back(std::move(row));
    }
    doc["records"] = std::move(records);
    return doc.dump(2) + "\n";
}

std::string node_series_csv_wide(const NodeSeries& series) {
    std::ostringstream out;
    out << 't';
    for (const std::string& label : series.vertex_labels) out << ',' << csv_field(label);
    out << '\n';
    for (size_t i = 0; i < series.times.size(); ++i) {
        out << fmt_time(series.times[i]);
        for (double v : series.values[i]) out << ',' << fmt_value(v);
        out << '\n';
    }
    return out.str();
}

std::string node_series_csv_long(const NodeSeries& series) {
    std::ostringstream out;
    out << "t,vertex,metric,value\n";
    for (size_t i = 0; i < series.times.size(); ++i)
        for (size_t v = 0; v < series.vertex_labels.size(); ++v)
            out << fmt_time(series.times[i]) << ',' << csv_field(series.vertex_labels[v]) << ','
                << csv_field(series.metric_name) << ',' << fmt_value(series.values[i][v]) << '\n';
    return out.str();
}

std::string node_series_json(const NodeSeries& series) {
    json doc;
    doc["metric"] = series.metric_name;
    doc["option"] = series.option;
    json columns = json::array();
    columns.push_back("t");
    for (const std::string& label : series.vertex_labels) columns.push_back(label);
    doc["columns"] = std::move(columns);
    json records = json::array();
    for (size_t i = 0; i < series.times.size(); ++i) {
        json row = json::array();
        row.push_back(json_time(series.times[i]));
        for (double v : series.values[i]) row.push_back(json_value(v));
        records.push_back(std::move(row));
    }
    doc["records"] = std::move(records);
    return doc.dump(2) + "\n";
}

std::string path_tree_csv(const PathTree& tree) {
    std::ostringstream out;
    out << "tdist,previous,gsteps,start,end,direction,type\n";
    const std::string dir = tree.direction == PathDirection::kFwd ? "fwd" : "bkwd";
    for (size_t i = 0; i < tree.tdist.size(); ++i) {
        double d = tree.tdist[i];
        out << (std::isinf(d) ? "Inf" : fmt_value(d)) << ',' << tree.previous[i] << ','
            << (std::isinf(tree.gsteps[i]) ? "Inf" : fmt_value(tree.gsteps[i])) << ','
            << fmt_time(tree.start) << ',' << fmt_time(tree.end) << ',' << dir << ','
            << tree.type << '\n';
    }
    return out.str();
}

std::string path_tree_json(const PathTree& tree) {
    json doc;
    doc["seed"] = tree.seed;
    doc["direction"] = tree.direction == PathDirection::kFwd ? "fwd" : "bkwd";
    doc["start"] = json_time(tree.start);
    doc["end"] = json_time(tree.end);
    doc["step"] = tree.step_time;
    doc["type"] = tree.type;
    json records = json::array();
    for (size_t i = 0; i < tree.tdist.size(); ++i) {
        json row;
        row["vertex"] = static_cast<int>(i) + 1;
        row["tdist"] = json_value(tree.tdist[i]);
        row["previous"] = tree.previous[i];
        row["gsteps"] = json_value(tree.gsteps[i]);
        records.push_back(std::move(row));
    }
    doc["records"] = std::move(records);
    return doc.dump(2) + "\n";
}

std::string path_tree_dot(const PathTree& tree, const TemporalNetwork& net) {
    std::ostringstream out;
    out << "digraph tree {\n";
    for (int v = 1; v <= net.vertex_count(); ++v) {
        out << "  n" << v << " [label=\"" << dot_escape(net.vertex(v).label) << '"';
        if (v == tree.seed) out << " seed=1";
        if (!std::isfinite(tree.tdist[static_cast<size_t>(v) - 1])) out << " unreached=1";
        out << "];\n";
    }
    for (const auto& [from, to] : tree_as_edgelist(tree)) {
        out << "  n" << from << " -> n" << to << " [tdist=\""
            << fmt_value(tree.tdist[static_cast<size_t>(to) - 1]) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

std::string event_series_csv(const EventSeries& series) {
    std::ostringstream out;
    out << "t,count\n";
    for (size_t i = 0; i < series.times.size(); ++i)
        out << fmt_time(series.times[i]) << ',' << series.counts[i] << '\n';
    return out.str();
}

std::string event_series_json(const EventSeries& series) {
    json doc;
    doc["kind"] = series.kind == EventKind::kFormation ? "formation" : "dissolution";
    doc["bin_width"] = series.bin_width;
    doc["columns"] = json::array({"t", "count"});
    json records = json::array();
    for (size_t i = 0; i < series.times.size(); ++i)
        records.push_back(json::array({json_time(series.times[i]), series.counts[i]}));
    doc["records"] = std::move(records);
    return doc.dump(2) + "\n";
}

std::string slice_dot(const StaticSlice& slice, const TemporalNetwork& net) {
    std::ostringstream out;
    const bool digraph = slice.directed;
    out << (digraph ? "digraph" : "graph") << " slice {\n";
    out << "  graph [window_onset=\"" << fmt_time(slice.window_onset) << "\" window_terminus=\""
        << fmt_time(slice.window_terminus) << "\"];\n";
    for (int v = 1; v <= slice.vertex_count; ++v) {
        out << "  n" << v << " [label=\"" << dot_escape(net.vertex(v).label) << '"';
        for (const auto& [name, value] : net.vertex(v).attributes) {
            std::string key;
            for (char c : name)
                key += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
            if (key.empty() || std::isdigit(static_cast<unsigned char>(key[0]))) key = "a_" + key;
            out << ' ' << key << "=\"" << dot_escape(value) << '"';
        }
        out << "];\n";
    }
    for (const auto& [tail, head] : slice.arcs)
        out << "  n" << tail << (digraph ? " -> n" : " -- n") << head << ";\n";
    out << "}\n";
    return out.str();
}

std::string slice_json(const StaticSlice& slice, const TemporalNetwork& net) {
    json doc;
    doc["directed"] = slice.directed;
    doc["window"] = json::array({json_time(slice.window_onset), json_time(slice.window_terminus)});
    json vertices = json::array();
    for (int v = 1; v <= slice.vertex_count; ++v) {
        json rec;
        rec["id"] = v;
        rec["label"] = net.vertex(v).label;
        json attrs = json::object();
        for (const auto& [name, value] : net.vertex(v).attributes) attrs[name] = value;
        rec["attributes"] = std::move(attrs);
        vertices.push_back(std::move(rec));
    }
    doc["vertices"] = std::move(vertices);
    json arcs = json::array();
    for (const auto& [tail, head] : slice.arcs) arcs.push_back(json::array({tail, head}));
    doc["arcs"] = std::move(arcs);
    return doc.dump(2) + "\n";
}

}  // namespace tempnet
