#include "tempnet/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace tempnet {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] void csv_fail(size_t line, const std::string& what) {
    throw Error("CSV line " + std::to_string(line) + ": " + what);
}

}  // namespace

CsvTable read_csv(std::istream& in) {
    std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (data.size() >= 3 && static_cast<unsigned char>(data[0]) == 0xEF &&
        static_cast<unsigned char>(data[1]) == 0xBB && static_cast<unsigned char>(data[2]) == 0xBF)
        data.erase(0, 3);

    CsvTable table;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false, field_was_quoted = false;
    size_t line = 1, record_line = 1;
    bool any_field = false;  // the current record has content

    auto end_field = [&] {
        record.push_back(field);
        field.clear();
        field_was_quoted = false;
        any_field = true;
    };
    auto end_record = [&] {
        end_field();
        if (table.header.empty()) {
            table.header = record;
            if (record.size() == 1 && record[0].empty())
                csv_fail(record_line, "empty header");
        } else {
            if (record.size() != table.header.size())
                csv_fail(record_line, "expected " + std::to_string(table.header.size()) +
                                          " fields, got " + std::to_string(record.size()));
            table.rows.push_back(record);
        }
        record.clear();
        any_field = false;
        record_line = line;
    };

    for (size_t i = 0; i < data.size(); ++i) {
        char c = data[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < data.size() && data[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
        } else if (c == '"') {
            if (!field.empty() || field_was_quoted)
                csv_fail(line, "quote inside unquoted field");
            in_quotes = true;
            field_was_quoted = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < data.size() && data[i + 1] == '\n') ++i;
            ++line;
            end_record();
        } else {
            field += c;
        }
    }
    if (in_quotes) csv_fail(record_line, "unterminated quoted field");
    if (!field.empty() || field_was_quoted || any_field) end_record();
    if (table.header.empty()) throw Error("CSV: empty input");
    return table;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    try {
        return read_csv(in);
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

std::string clean_name(const std::string& raw) {
    std::string out;
    bool pending_sep = false;
    for (char ch : raw) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (std::isalnum(c)) {
            if (pending_sep && !out.empty()) out += '_';
            pending_sep = false;
            out += static_cast<char>(std::tolower(c));
        } else {
            pending_sep = true;
        }
    }
    if (out.empty()) out = "x";
    if (std::isdigit(static_cast<unsigned char>(out[0]))) out.insert(0, "x");
    return out;
}

std::vector<std::string> clean_names(const std::vector<std::string>& raw) {
    std::vector<std::string> out;
    std::unordered_map<std::string, int> seen;
    out.reserve(raw.size());
    for (const auto& name : raw) {
        std::string base = clean_name(name);
        int& count = seen[base];
        ++count;
        if (count == 1) {
            out.push_back(base);
        } else {
            std::string candidate;
            do {
                candidate = base + "_" + std::to_string(count);
                ++count;
            } while (seen.count(candidate));
            seen[candidate] = 1;
            --count;
            out.push_back(candidate);
        }
    }
    return out;
}

namespace {

size_t find_column(const std::vector<std::string>& header, const std::string& wanted,
                   const char* role) {
    std::string key = clean_name(wanted);
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == key) return i;
    throw Error(std::string("missing ") + role + " column \"" + key + "\"");
}

}  // namespace

std::vector<RawEdgeRow> parse_edges_csv(std::istream& in, const ColumnMap& columns) {
    CsvTable table = read_csv(in);
    table.header = clean_names(table.header);
    size_t ci_sender = find_column(table.header, columns.sender, "sender");
    size_t ci_receiver = find_column(table.header, columns.receiver, "receiver");
    size_t ci_time = find_column(table.header, columns.time, "timestamp");
    size_t ci_thread = find_column(table.header, columns.thread, "discussion");
    std::vector<RawEdgeRow> rows;
    rows.reserve(table.rows.size());
    for (size_t i = 0; i < table.rows.size(); ++i) {
        const auto& r = table.rows[i];
        RawEdgeRow row{trim(r[ci_sender]), trim(r[ci_receiver]), trim(r[ci_time]),
                       r[ci_thread]};
        if (row.sender.empty() || row.receiver.empty() || row.timestamp.empty())
            throw Error("edge row " + std::to_string(i + 1) +
                        ": empty sender, receiver or timestamp");
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<RawEdgeRow> parse_edges_csv_file(const std::string& path, const ColumnMap& columns) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    try {
        return parse_edges_csv(in, columns);
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

NodeParse parse_nodes_csv(std::istream& in) {
    CsvTable table = read_csv(in);
    table.header = clean_names(table.header);
    NodeParse result;
    std::unordered_set<std::string> labels;
    long long experience_col = -1;
    for (size_t j = 1; j < table.header.size(); ++j)
        if (table.header[j] == "experience") experience_col = static_cast<long long>(j);

    for (size_t i = 0; i < table.rows.size(); ++i) {
        const auto& r = table.rows[i];
        VertexRecord v;
        v.id = static_cast<int>(i) + 1;
        v.label = trim(r[0]);
        if (v.label.empty())
            throw Error("node row " + std::to_string(i + 1) + ": empty vertex id");
        if (!labels.insert(v.label).second)
            throw Error("duplicate vertex id \"" + v.label + "\"");
        for (size_t j = 1; j < table.header.size(); ++j)
            v.attributes.emplace_back(table.header[j], r[j]);
        if (experience_col >= 0) {
            std::string code = trim(r[static_cast<size_t>(experience_col)]);
            std::string level;
            if (code == "1")
                level = "Expert";
            else if (code == "2")
                level = "Student";
            else if (code == "3")
                level = "Teacher";
            else
                result.warnings.push_back("vertex \"" + v.label + "\": experience \"" + code +
                                          "\" not in 1..3, expert_level left empty");
            v.attributes.emplace_back("expert_level", level);
        }
        result.vertices.push_back(std::move(v));
    }
    return result;
}

NodeParse parse_nodes_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    try {
        return parse_nodes_csv(in);
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

namespace {

// Days between 1970-01-01 and y-m-d in the proleptic Gregorian calendar
// (Howard Hinnant's civil-days algorithm).
long long days_from_civil(long long y, unsigned m, unsigned d) {
    y -= m <= 2;
    const long long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long long>(doe) - 719468;
}

bool leap_year(long long y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

unsigned days_in_month(long long y, unsigned m) {
    static const unsigned lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && leap_year(y)) return 29;
    return lengths[m - 1];
}

std::vector<long long> split_numbers(const std::string& text, const char* seps) {
    std::vector<long long> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) throw Error("empty component");
        out.push_back(std::stoll(cur));
        cur.clear();
    };
    for (char c : text) {
        if (std::isdigit(static_cast<unsigned char>(c))) {
            cur += c;
        } else if (std::strchr(seps, c)) {
            flush();
        } else {
            throw Error("unexpected character");
        }
    }
    flush();
    return out;
}

double timestamp_from_parts(long long y, long long mo, long long d, long long h, long long mi,
                            long long s) {
    if (mo < 1 || mo > 12) throw Error("month out of range");
    if (d < 1 || d > days_in_month(y, static_cast<unsigned>(mo))) throw Error("day out of range");
    if (h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 || s > 60) throw Error("time out of range");
    return static_cast<double>(days_from_civil(y, static_cast<unsigned>(mo),
                                               static_cast<unsigned>(d)) *
                                   86400 +
                               h * 3600 + mi * 60 + s);
}

}  // namespace

double parse_timestamp(const std::string& text) {
    std::string s = trim(text);
    size_t space = s.find_first_of(" T");
    if (space == std::string::npos || space == 0 || space + 1 >= s.size())
        throw Error("cannot parse timestamp \"" + text + "\"");
    std::string date_part = trim(s.substr(0, space));
    std::string time_part = trim(s.substr(space + 1));
    try {
        std::vector<long long> d = split_numbers(date_part, "/-.");
        std::vector<long long> t = split_numbers(time_part, ":");
        if (d.size() != 3 || t.size() < 2 || t.size() > 3) throw Error("component count");
        long long sec = t.size() == 3 ? t[2] : 0;
        bool iso = date_part.find_first_of("/.") == std::string::npos && d[0] >= 1000;
        if (iso)  // year-month-day
            return timestamp_from_parts(d[0], d[1], d[2], t[0], t[1], sec);
        long long year = d[2];
        if (year < 100) year += year <= 68 ? 2000 : 1900;
        return timestamp_from_parts(year, d[0], d[1], t[0], t[1], sec);
    } catch (const std::exception&) {
        throw Error("cannot parse timestamp \"" + text + "\"");
    }
}

double round2(double x) {
    if (!std::isfinite(x)) return x;
    double scaled = x * 100.0;
    if (std::abs(scaled) >= 9e15) return x;  // past integer precision, already "rounded"
    double base = std::floor(scaled);
    double lo = base / 100.0;
    double hi = (base + 1.0) / 100.0;
    // Distances measured in extended precision against the representable
    // candidates, mirroring how R >= 4.0 picks the closer 2-decimal double.
    long double xe = x;
    long double dlo = xe - static_cast<long double>(lo);
    long double dhi = static_cast<long double>(hi) - xe;
    if (dlo < dhi) return lo;
    if (dhi < dlo) return hi;
    return std::fmod(base, 2.0) == 0.0 ? lo : hi;
}

std::vector<Time> dayizer(const std::vector<std::string>& timestamps) {
    std::vector<double> seconds;
    seconds.reserve(timestamps.size());
    for (size_t i = 0; i < timestamps.size(); ++i) {
        try {
            seconds.push_back(parse_timestamp(timestamps[i]));
        } catch (const Error& e) {
            throw Error("row " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    if (seconds.empty()) return {};
    double min_time = *std::min_element(seconds.begin(), seconds.end());
    std::vector<Time> days;
    days.reserve(seconds.size());
    for (double s : seconds) days.push_back(round2((s - min_time) / 86400.0));
    return days;
}

std::vector<RawEdgeRow> drop_loops(const std::vector<RawEdgeRow>& rows) {
    std::vector<RawEdgeRow> out;
    out.reserve(rows.size());
    for (const auto& row : rows)
        if (row.sender != row.receiver) out.push_back(row);
    return out;
}

std::vector<CleanEdgeRow> clean_pipeline(const std::vector<RawEdgeRow>& rows) {
    std::vector<RawEdgeRow> loop_free = drop_loops(rows);
    std::vector<std::string> stamps;
    stamps.reserve(loop_free.size());
    for (const auto& row : loop_free) stamps.push_back(row.timestamp);
    std::vector<Time> days = dayizer(stamps);

    std::map<std::string, std::vector<size_t>> threads;
    for (size_t i = 0; i < loop_free.size(); ++i)
        threads[loop_free[i].discussion_title].push_back(i);

    std::vector<char> keep(loop_free.size(), 0);
    std::vector<Time> start(loop_free.size(), 0), end(loop_free.size(), 0);
    for (const auto& [title, members] : threads) {
        if (members.size() < 2) continue;  // a discussion nobody answered
        Time lo = kInfTime, hi = -kInfTime;
        for (size_t i : members) {
            lo = std::min(lo, days[i]);
            hi = std::max(hi, days[i]);
        }
        for (size_t i : members) {
            keep[i] = 1;
            start[i] = lo;
            end[i] = hi;
        }
    }

    std::vector<CleanEdgeRow> out;
    for (size_t i = 0; i < loop_free.size(); ++i) {
        if (!keep[i]) continue;
        out.push_back({loop_free[i].sender, loop_free[i].receiver, days[i],
                       loop_free[i].discussion_title, start[i], end[i], end[i] - start[i]});
    }
    return out;
}

std::vector<WeightedDyad> weighted_base_rows(const std::vector<RawEdgeRow>& rows) {
    std::map<std::pair<std::string, std::string>, int> tally;
    for (const auto& row : rows) ++tally[{row.sender, row.receiver}];
    std::vector<WeightedDyad> out;
    out.reserve(tally.size());
    for (const auto& [dyad, weight] : tally) out.push_back({dyad.first, dyad.second, weight});
    return out;
}

std::string to_string(SpellMode mode) {
    return mode == SpellMode::kDiscussionSpan ? "discussion-span" : "post-to-end";
}

SpellMode spell_mode_from_string(const std::string& name) {
    if (name == "discussion-span") return SpellMode::kDiscussionSpan;
    if (name == "post-to-end") return SpellMode::kPostToEnd;
    throw Error("unknown spell mode \"" + name + "\" (use discussion-span or post-to-end)");
}

TemporalNetwork assemble_network(const std::vector<WeightedDyad>& base,
                                 const std::vector<CleanEdgeRow>& rows,
                                 std::vector<VertexRecord> vertices, SpellMode mode) {
    std::unordered_map<std::string, int> id_of;
    for (const auto& v : vertices) id_of[v.label] = v.id;
    auto lookup = [&](const std::string& label) {
        auto it = id_of.find(label);
        if (it == id_of.end()) throw Error("edge endpoint \"" + label + "\" not in node table");
        return it->second;
    };

    std::map<std::pair<int, int>, TemporalEdge> edges;
    for (const auto& dyad : base) {
        int tail = lookup(dyad.sender), head = lookup(dyad.receiver);
        auto [it, fresh] = edges.try_emplace({tail, head});
        if (!fresh) throw Error("duplicate dyad in weighted table (" + dyad.sender + ", " +
                                dyad.receiver + ")");
        it->second.tail = tail;
        it->second.head = head;
        it->second.weight = dyad.weight;
    }

    Time lo = kInfTime, hi = -kInfTime;
    for (const auto& row : rows) {
        int tail = lookup(row.sender), head = lookup(row.receiver);
        auto it = edges.find({tail, head});
        if (it == edges.end())
            throw Error("spell row (" + row.sender + ", " + row.receiver +
                        ") missing from the weighted dyad table");
        Time onset = mode == SpellMode::kDiscussionSpan ? row.start : row.new_date;
        it->second.spells.push_back({onset, row.end, false, false});
        lo = std::min(lo, onset);
        hi = std::max(hi, row.end);
    }
    if (rows.empty()) {
        lo = 0;
        hi = 0;
    }

    std::vector<TemporalEdge> edge_list;
    edge_list.reserve(edges.size());
    for (auto& [dyad, edge] : edges) edge_list.push_back(std::move(edge));
    return TemporalNetwork(std::move(vertices), std::move(edge_list), true, lo, hi);
}

TemporalNetwork ingest_files(const std::string& edges_path, const std::string& nodes_path,
                             const ColumnMap& columns, SpellMode mode, int min_degree,
                             std::vector<std::string>* warnings) {
    std::vector<RawEdgeRow> raw = parse_edges_csv_file(edges_path, columns);
    NodeParse nodes = parse_nodes_csv_file(nodes_path);
    if (warnings)
        warnings->insert(warnings->end(), nodes.warnings.begin(), nodes.warnings.end());

    TemporalNetwork net = assemble_network(weighted_base_rows(drop_loops(raw)),
                                           clean_pipeline(raw), std::move(nodes.vertices), mode);
    if (min_degree < 0) return net;
    std::vector<int> keep;
    for (const auto& v : net.vertices())
        if (static_degree(net, v.id) >= min_degree) keep.push_back(v.id);
    if (keep.empty())
        throw Error("degree filter >= " + std::to_string(min_degree) + " keeps no vertices");
    return induced_subgraph(net, keep);
}

}  // namespace tempnet
