#include "tempnet/metrics_graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "parallel.hpp"
#include "slice_graph.hpp"

namespace tempnet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<std::vector<char>> arc_matrix(const StaticSlice& slice) {
    const auto n = static_cast<std::size_t>(slice.vertex_count);
    std::vector<std::vector<char>> a(n, std::vector<char>(n, 0));
    for (const auto& [tail, head] : slice.arcs)
        a[static_cast<std::size_t>(tail - 1)][static_cast<std::size_t>(head - 1)] = 1;
    return a;
}

// Weak-component label per vertex and the component count.
std::pair<std::vector<int>, int> weak_components_of(const StaticSlice& slice) {
    const auto n = static_cast<std::size_t>(slice.vertex_count);
    std::vector<std::vector<int>> adj(n);
    for (const auto& [tail, head] : slice.arcs) {
        adj[static_cast<std::size_t>(tail - 1)].push_back(head - 1);
        adj[static_cast<std::size_t>(head - 1)].push_back(tail - 1);
    }
    std::vector<int> label(n, -1);
    int components = 0;
    std::deque<int> queue;
    for (std::size_t s = 0; s < n; ++s) {
        if (label[s] >= 0) continue;
        label[s] = components;
        queue.assign(1, static_cast<int>(s));
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : adj[static_cast<std::size_t>(v)])
                if (label[static_cast<std::size_t>(w)] < 0) {
                    label[static_cast<std::size_t>(w)] = components;
                    queue.push_back(w);
                }
        }
        ++components;
    }
    return {std::move(label), components};
}

int strong_components_of(const StaticSlice& slice) {
    // Kosaraju: forward finish order, then sweep the transposed graph.
    const auto n = static_cast<std::size_t>(slice.vertex_count);
    std::vector<std::vector<int>> fwd(n), rev(n);
    for (const auto& [tail, head] : slice.arcs) {
        fwd[static_cast<std::size_t>(tail - 1)].push_back(head - 1);
        rev[static_cast<std::size_t>(head - 1)].push_back(tail - 1);
    }
    std::vector<char> seen(n, 0);
    std::vector<int> order;
    order.reserve(n);
    std::vector<std::pair<int, std::size_t>> stack;  // vertex, next child index
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        seen[s] = 1;
        stack.assign(1, {static_cast<int>(s), 0});
        while (!stack.empty()) {
            auto& [v, child] = stack.back();
            const auto& out = fwd[static_cast<std::size_t>(v)];
            if (child < out.size()) {
                int w = out[child++];
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back({w, 0});
                }
            } else {
                order.push_back(v);
                stack.pop_back();
            }
        }
    }
    std::fill(seen.begin(), seen.end(), 0);
    int components = 0;
    std::deque<int> queue;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (seen[static_cast<std::size_t>(*it)]) continue;
        ++components;
        seen[static_cast<std::size_t>(*it)] = 1;
        queue.assign(1, *it);
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : rev[static_cast<std::size_t>(v)])
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    queue.push_back(w);
                }
        }
    }
    return components;
}

// Directed reachability closure by BFS from every vertex; reach[v][v] = 1.
std::vector<std::vector<char>> reachability(const StaticSlice& slice) {
    const auto n = static_cast<std::size_t>(slice.vertex_count);
    std::vector<std::vector<int>> adj(n);
    for (const auto& [tail, head] : slice.arcs)
        adj[static_cast<std::size_t>(tail - 1)].push_back(head - 1);
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    std::deque<int> queue;
    for (std::size_t s = 0; s < n; ++s) {
        auto& row = reach[s];
        row[s] = 1;
        queue.assign(1, static_cast<int>(s));
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : adj[static_cast<std::size_t>(v)])
                if (!row[static_cast<std::size_t>(w)]) {
                    row[static_cast<std::size_t>(w)] = 1;
                    queue.push_back(w);
                }
        }
    }
    return reach;
}

}  // namespace

double density(const StaticSlice& slice) {
    const double n = slice.vertex_count;
    if (slice.vertex_count < 2) return kNaN;
    const double m = static_cast<double>(slice.arcs.size());
    return slice.directed ? m / (n * (n - 1)) : 2.0 * m / (n * (n - 1));
}

double temporal_edge_density(const TemporalNetwork& net, AggUnit unit) {
    const Time period = net.obs_end() - net.obs_start();
    const double n = net.vertex_count();
    double units = unit == AggUnit::kEdge
                       ? static_cast<double>(net.edges().size())
                       : (net.directed() ? n * (n - 1) : n * (n - 1) / 2.0);
    if (period <= 0 || units <= 0) return kNaN;
    double total = 0;
    for (const auto& edge : net.edges()) {
        // union length of the (onset-sorted) spells
        Time covered_until = -kInfTime;
        for (const auto& spell : edge.spells) {
            Time from = std::max(spell.onset, covered_until);
            if (spell.terminus > from) total += spell.terminus - from;
            covered_until = std::max(covered_until, spell.terminus);
        }
    }
    return total / (units * period);
}

DyadStats dyad_stats(const StaticSlice& slice) {
    DyadStats stats;
    auto a = arc_matrix(slice);
    const auto n = static_cast<std::size_t>(slice.vertex_count);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (a[i][j] && a[j][i])
                ++stats.mutual;
            else if (a[i][j] || a[j][i])
                ++stats.asym;
            else
                ++stats.null_count;
        }
    stats.mutuality = stats.mutual;
    const double arcs = static_cast<double>(2 * stats.mutual + stats.asym);
    stats.edgewise_reciprocity = arcs > 0 ? 2.0 * static_cast<double>(stats.mutual) / arcs : kNaN;
    const double dyads =
        static_cast<double>(stats.mutual + stats.asym + stats.null_count);
    stats.dyadic_reciprocity =
        dyads > 0 ? static_cast<double>(stats.mutual + stats.null_count) / dyads : kNaN;
    return stats;
}

namespace {

std::vector<double> centralization_scores(const StaticSlice& slice, CentralizationMetric metric,
                                          GraphMode gmode) {
    switch (metric) {
        case CentralizationMetric::kDegree:
            if (gmode == GraphMode::kGraph) {
                // undirected degree: distinct neighbors
                auto adj = detail_graph::adjacency(slice, GraphMode::kGraph);
                std::vector<double> deg(adj.size());
                for (std::size_t v = 0; v < adj.size(); ++v)
                    deg[v] = static_cast<double>(adj[v].size());
                return deg;
            }
            return slice_degree(slice, DegreeCmode::kFreeman);
        case CentralizationMetric::kInDegree:
            return slice_degree(slice, DegreeCmode::kInDegree);
        case CentralizationMetric::kOutDegree:
            return slice_degree(slice, DegreeCmode::kOutDegree);
        case CentralizationMetric::kBetweenness:
            return slice_betweenness(slice, gmode);
        case CentralizationMetric::kCloseness:
            return slice_closeness(slice, gmode);
        case CentralizationMetric::kEvcent:
            return slice_evcent(slice, gmode);
    }
    throw Error("unknown centralization metric");
}

double centralization_tmax(int n_int, CentralizationMetric metric, GraphMode gmode) {
    const double n = n_int;
    if (metric == CentralizationMetric::kDegree)
        return gmode == GraphMode::kGraph ? (n - 1) * (n - 2) : 2 * (n - 1) * (n - 2);
    if (metric == CentralizationMetric::kInDegree || metric == CentralizationMetric::kOutDegree)
        return (n - 1) * (n - 1);
    if (metric == CentralizationMetric::kBetweenness)
        return gmode == GraphMode::kGraph ? (n - 1) * (n - 1) * (n - 2) / 2.0
                                          : (n - 1) * (n - 1) * (n - 2);
    if (metric == CentralizationMetric::kCloseness && gmode == GraphMode::kGraph)
        return (n - 1) * (n - 2) / (2.0 * n - 3.0);
    // no closed form used: score of the star K_{1,n-1} (mutual arcs)
    StaticSlice star;
    star.vertex_count = n_int;
    star.directed = true;
    for (int leaf = 2; leaf <= n_int; ++leaf) {
        star.arcs.emplace_back(1, leaf);
        star.arcs.emplace_back(leaf, 1);
    }
    std::sort(star.arcs.begin(), star.arcs.end());
    auto scores = centralization_scores(star, metric, gmode);
    double max = *std::max_element(scores.begin(), scores.end());
    double sum = 0;
    for (double value : scores) sum += max - value;
    return sum;
}

}  // namespace

double centralization(const StaticSlice& slice, CentralizationMetric metric, GraphMode gmode) {
    if (slice.vertex_count < 3) return kNaN;
    auto scores = centralization_scores(slice, metric, gmode);
    double max = *std::max_element(scores.begin(), scores.end());
    double sum = 0;
    for (double value : scores) sum += max - value;
    double tmax = centralization_tmax(slice.vertex_count, metric, gmode);
    if (!(tmax > 0) || !std::isfinite(sum)) return kNaN;
    const double ratio = sum / tmax;
    // an exactly-maximal configuration can land a few ulps past 1 when the
    // scores and the closed-form maximum round differently
    return ratio > 1.0 && ratio < 1.0 + 1e-12 ? 1.0 : ratio;
}

const std::array<const char*, 16> TriadCensus::kNames = {
    "003", "012", "102", "021D", "021U", "021C", "111D", "111U",
    "030T", "030C", "201", "120D", "120U", "120C", "210", "300"};

namespace {

// Triad class index (into TriadCensus::kNames) of one vertex triple.
int classify_triad(bool ij, bool ji, bool ik, bool ki, bool jk, bool kj) {
    // dyad states between the three unordered pairs
    int mutual = (ij && ji) + (ik && ki) + (jk && kj);
    int asym = (ij != ji) + (ik != ki) + (jk != kj);
    switch (mutual * 10 + asym) {
        case 0: return 0;    // 003
        case 1: return 1;    // 012
        case 10: return 2;   // 102
        case 2: {            // 021D / 021U / 021C
            // the two asymmetric arcs as (tail, head) in local vertex ids
            int tails[2] = {0, 0}, heads[2] = {0, 0}, m = 0;
            auto note = [&](bool fwd, bool bwd, int a, int b) {
                if (fwd && !bwd) { tails[m] = a; heads[m] = b; ++m; }
                else if (bwd && !fwd) { tails[m] = b; heads[m] = a; ++m; }
            };
            note(ij, ji, 0, 1);
            note(ik, ki, 0, 2);
            note(jk, kj, 1, 2);
            if (tails[0] == tails[1]) return 3;  // 021D, common sender
            if (heads[0] == heads[1]) return 4;  // 021U, common target
            return 5;                            // 021C, chain
        }
        case 11: {  // 111D / 111U: one mutual pair plus one arc
            // the third vertex is the one outside the mutual pair
            bool third_sends;
            if (ij && ji)       third_sends = (ik != ki) ? ki : kj;   // third is k
            else if (ik && ki)  third_sends = (ij != ji) ? ji : jk;   // third is j
            else                third_sends = (ij != ji) ? ij : ik;   // third is i
            return third_sends ? 6 : 7;  // arc into the pair: 111D; out of it: 111U
        }
        case 3: {  // 030T / 030C
            int out_i = (ij && !ji) + (ik && !ki);
            int out_j = (ji && !ij) + (jk && !kj);
            int out_k = (ki && !ik) + (kj && !jk);
            return (out_i == 2 || out_j == 2 || out_k == 2) ? 8 : 9;
        }
        case 20: return 10;  // 201
        case 12: {           // 120D / 120U / 120C
            // the two asymmetric arcs touch the vertex outside the mutual pair
            int third;
            if (ij && ji) third = 2;
            else if (ik && ki) third = 1;
            else third = 0;
            auto sends = [&](int a, int b) {  // a -> b asymmetric?
                if (a > b) { std::swap(a, b); bool f, r;
                    if (a == 0 && b == 1) { f = ji; r = ij; }
                    else if (a == 0)      { f = ki; r = ik; }
                    else                  { f = kj; r = jk; }
                    return f && !r;
                }
                bool f, r;
                if (a == 0 && b == 1) { f = ij; r = ji; }
                else if (a == 0)      { f = ik; r = ki; }
                else                  { f = jk; r = kj; }
                return f && !r;
            };
            int others[2] = {third == 0 ? 1 : 0, third == 2 ? 1 : 2};
            bool out1 = sends(third, others[0]), out2 = sends(third, others[1]);
            if (out1 && out2) return 11;   // 120D, third sends to both
            if (!out1 && !out2) return 12; // 120U, both send to third
            return 13;                     // 120C
        }
        case 21: return 14;  // 210
        case 30: return 15;  // 300
    }
    throw Error("triad classification fell through");
}

}  // namespace

TriadCensus triad_census(const StaticSlice& slice) {
    TriadCensus census;
    auto a = arc_matrix(slice);
    const auto n = static_cast<std::size_t>(slice.vertex_count);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                ++census.counts[static_cast<std::size_t>(
                    classify_triad(a[i][j], a[j][i], a[i][k], a[k][i], a[j][k], a[k][j]))];
    return census;
}

StructureStats structure_stats(const StaticSlice& slice) {
    StructureStats stats;
    stats.weak_components = weak_components_of(slice).second;
    stats.strong_components = strong_components_of(slice);
    stats.triads = triad_census(slice);

    auto a = arc_matrix(slice);
    const auto n = static_cast<std::size_t>(slice.vertex_count);
    long long paths = 0, closed = 0;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j || !a[i][j]) continue;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == j || k == i || !a[j][k]) continue;
                ++paths;
                if (a[i][k]) ++closed;
            }
        }
    stats.transitivity = paths > 0 ? static_cast<double>(closed) / static_cast<double>(paths)
                                   : kNaN;
    return stats;
}

KrackhardtStats krackhardt_stats(const StaticSlice& slice) {
    KrackhardtStats stats;
    const auto n = static_cast<std::size_t>(slice.vertex_count);
    const double pairs = static_cast<double>(n) * (static_cast<double>(n) - 1) / 2.0;

    auto [label, k] = weak_components_of(slice);
    std::vector<long long> sizes(static_cast<std::size_t>(k), 0);
    for (int c : label) ++sizes[static_cast<std::size_t>(c)];

    double joined = 0;
    for (long long size : sizes) joined += static_cast<double>(size) * (size - 1) / 2.0;
    stats.connectedness = pairs > 0 ? joined / pairs : kNaN;

    std::set<std::pair<int, int>> undirected;
    for (const auto& [tail, head] : slice.arcs)
        undirected.insert({std::min(tail, head), std::max(tail, head)});
    const double m = static_cast<double>(undirected.size());
    const double tree_edges = static_cast<double>(n) - k;
    const double excess_cap = pairs - tree_edges;
    stats.efficiency = excess_cap > 0 ? 1.0 - (m - tree_edges) / excess_cap : kNaN;

    auto reach = reachability(slice);
    long long reachable = 0, reciprocated = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j || !reach[i][j]) continue;
            ++reachable;
            if (reach[j][i]) ++reciprocated;
        }
    stats.hierarchy = reachable > 0
                          ? 1.0 - static_cast<double>(reciprocated) / static_cast<double>(reachable)
                          : kNaN;

    double lub_cap = 0;
    for (long long size : sizes) lub_cap += static_cast<double>(size - 1) * (size - 2) / 2.0;
    if (lub_cap > 0) {
        long long violations = 0;
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v) {
                if (label[u] != label[v]) continue;
                bool bounded = false;
                for (std::size_t w = 0; w < n && !bounded; ++w)
                    bounded = reach[w][u] && reach[w][v];
                if (!bounded) ++violations;
            }
        stats.lubness = 1.0 - static_cast<double>(violations) / lub_cap;
    } else {
        stats.lubness = kNaN;
    }
    return stats;
}

namespace {

MetricSeries assemble_metric_series(
    const TemporalNetwork& net, const SliceSpec& spec, int jobs, std::vector<std::string> names,
    const std::function<std::vector<double>(const StaticSlice&)>& kernel) {
    MetricSeries series;
    series.times = slice_times(spec);
    series.names = std::move(names);
    series.values.resize(series.times.size());
    detail::parallel_for(series.times.size(), jobs, [&](std::size_t i) {
        StaticSlice slice =
            extract_window(net, series.times[i], series.times[i] + spec.aggregate_dur);
        series.values[i] = kernel(slice);
        if (series.values[i].size() != series.names.size())
            throw Error("metric kernel width mismatch");
    });
    return series;
}

}  // namespace

MetricSeries node_mix(const TemporalNetwork& net, const std::string& attribute,
                      const SliceSpec& spec, int jobs) {
    bool known = false;
    for (const auto& v : net.vertices())
        if (v.attribute(attribute)) known = true;
    if (!known) throw Error("unknown vertex attribute \"" + attribute + "\"");

    // category per vertex; absent or empty values count as NA
    std::vector<std::string> category(static_cast<std::size_t>(net.vertex_count()));
    std::set<std::string> distinct;
    for (const auto& v : net.vertices()) {
        const std::string* value = v.attribute(attribute);
        std::string c = value && !value->empty() ? *value : "NA";
        category[static_cast<std::size_t>(v.id - 1)] = c;
        distinct.insert(c);
    }
    std::vector<std::string> cats(distinct.begin(), distinct.end());
    std::map<std::pair<std::string, std::string>, std::size_t> column;
    std::vector<std::string> names;
    for (const auto& g : cats)
        for (const auto& h : cats) {
            column[{g, h}] = names.size();
            names.push_back(g + "." + h);
        }

    return assemble_metric_series(net, spec, jobs, names, [&](const StaticSlice& slice) {
        std::vector<double> row(column.size(), 0.0);
        for (const auto& [tail, head] : slice.arcs)
            row[column.at({category[static_cast<std::size_t>(tail - 1)],
                           category[static_cast<std::size_t>(head - 1)]})] += 1;
        return row;
    });
}

std::vector<std::string> metric_selectors() {
    return {"gden",          "grecip",
            "grecip.dyadic", "mutuality",
            "dyad.census",   "triad.census",
            "gtrans",        "components",
            "components.strong", "connectedness",
            "efficiency",    "hierarchy",
            "lubness",       "centralization.degree",
            "centralization.indegree", "centralization.outdegree",
            "centralization.betweenness", "centralization.closeness",
            "centralization.evcent", "nodemix.<attribute>"};
}

MetricSeries metric_series(const TemporalNetwork& net, const std::string& selector,
                           const SliceSpec& spec, const MetricOptions& options) {
    using Scalar = std::function<double(const StaticSlice&)>;
    auto scalar_series = [&](const Scalar& fn) {
        return assemble_metric_series(net, spec, options.jobs, {selector},
                                      [&fn](const StaticSlice& slice) {
                                          return std::vector<double>{fn(slice)};
                                      });
    };

    if (selector == "gden") return scalar_series(density);
    if (selector == "grecip" || selector == "grecip.edgewise")
        return scalar_series([](const StaticSlice& s) { return dyad_stats(s).edgewise_reciprocity; });
    if (selector == "grecip.dyadic")
        return scalar_series([](const StaticSlice& s) { return dyad_stats(s).dyadic_reciprocity; });
    if (selector == "mutuality")
        return scalar_series(
            [](const StaticSlice& s) { return static_cast<double>(dyad_stats(s).mutuality); });
    if (selector == "gtrans")
        return scalar_series([](const StaticSlice& s) { return structure_stats(s).transitivity; });
    if (selector == "components")
        return scalar_series([](const StaticSlice& s) {
            return static_cast<double>(weak_components_of(s).second);
        });
    if (selector == "components.strong")
        return scalar_series(
            [](const StaticSlice& s) { return static_cast<double>(strong_components_of(s)); });
    if (selector == "connectedness")
        return scalar_series([](const StaticSlice& s) { return krackhardt_stats(s).connectedness; });
    if (selector == "efficiency")
        return scalar_series([](const StaticSlice& s) { return krackhardt_stats(s).efficiency; });
    if (selector == "hierarchy")
        return scalar_series([](const StaticSlice& s) { return krackhardt_stats(s).hierarchy; });
    if (selector == "lubness")
        return scalar_series([](const StaticSlice& s) { return krackhardt_stats(s).lubness; });
    if (selector == "dyad.census")
        return assemble_metric_series(net, spec, options.jobs, {"Mut", "Asym", "Null"},
                                      [](const StaticSlice& slice) {
                                          DyadStats d = dyad_stats(slice);
                                          return std::vector<double>{
                                              static_cast<double>(d.mutual),
                                              static_cast<double>(d.asym),
                                              static_cast<double>(d.null_count)};
                                      });
    if (selector == "triad.census") {
        std::vector<std::string> names(TriadCensus::kNames.begin(), TriadCensus::kNames.end());
        return assemble_metric_series(net, spec, options.jobs, names,
                                      [](const StaticSlice& slice) {
                                          TriadCensus census = triad_census(slice);
                                          std::vector<double> row;
                                          row.reserve(16);
                                          for (long long c : census.counts)
                                              row.push_back(static_cast<double>(c));
                                          return row;
                                      });
    }
    if (selector.rfind("centralization.", 0) == 0) {
        std::string which = selector.substr(15);
        CentralizationMetric metric;
        if (which == "degree") metric = CentralizationMetric::kDegree;
        else if (which == "indegree") metric = CentralizationMetric::kInDegree;
        else if (which == "outdegree") metric = CentralizationMetric::kOutDegree;
        else if (which == "betweenness") metric = CentralizationMetric::kBetweenness;
        else if (which == "closeness") metric = CentralizationMetric::kCloseness;
        else if (which == "evcent") metric = CentralizationMetric::kEvcent;
        else throw Error("unknown centralization metric \"" + which + "\"");
        GraphMode gmode = options.gmode;
        return scalar_series(
            [metric, gmode](const StaticSlice& s) { return centralization(s, metric, gmode); });
    }
    if (selector.rfind("nodemix.", 0) == 0)
        return node_mix(net, selector.substr(8), spec, options.jobs);

    std::ostringstream message;
    message << "unknown metric \"" << selector << "\"; valid selectors:";
    for (const auto& name : metric_selectors()) message << " " << name;
    throw Error(message.str());
}

}  // namespace tempnet
