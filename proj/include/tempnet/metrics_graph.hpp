#pragma once

#include <array>
#include <string>
#include <vector>

#include "tempnet/metrics_node.hpp"

namespace tempnet {

// Arc density: m / (n(n-1)) directed, 2m / (n(n-1)) undirected; NaN when
// n < 2.
double density(const StaticSlice& slice);

// Denominator unit for temporal edge density: per existing edge, or per
// possible ordered dyad.
enum class AggUnit { kEdge, kDyad };

// Total observed activity (the union length of each edge's spells, so
// overlaps count once) divided by the maximum possible: unit count times the
// observation period length. NaN when the period is empty or there is no
// edge.
double temporal_edge_density(const TemporalNetwork& net, AggUnit unit = AggUnit::kEdge);

struct DyadStats {
    long long mutual = 0;
    long long asym = 0;
    long long null_count = 0;
    double edgewise_reciprocity = 0;  // 2M / (2M + A), NaN when no arcs
    double dyadic_reciprocity = 0;    // (M + N) / (M + A + N), NaN when n < 2
    long long mutuality = 0;          // = mutual
};

DyadStats dyad_stats(const StaticSlice& slice);

enum class CentralizationMetric { kDegree, kInDegree, kOutDegree, kBetweenness, kCloseness, kEvcent };

// Freeman graph-level centralization: sum of (max - value) over the chosen
// vertex metric, divided by the theoretical maximum of that sum. Closed-form
// maxima: degree/graph (n-1)(n-2), degree/digraph 2(n-1)(n-2), in/outdegree
// (n-1)^2, betweenness/graph (n-1)^2(n-2)/2, betweenness/digraph
// (n-1)^2(n-2), closeness/graph (n-1)(n-2)/(2n-3); any other combination
// (eigenvector in particular) uses the score the star graph K_{1,n-1}
// attains, computed at runtime. NaN when n < 3.
double centralization(const StaticSlice& slice, CentralizationMetric metric,
                      GraphMode gmode = GraphMode::kGraph);

// Counts per triad isomorphism class, in the conventional order
// 003 012 102 021D 021U 021C 111D 111U 030T 030C 201 120D 120U 120C 210 300.
struct TriadCensus {
    std::array<long long, 16> counts{};
    static const std::array<const char*, 16> kNames;
};

TriadCensus triad_census(const StaticSlice& slice);

struct StructureStats {
    int weak_components = 0;    // isolates count as components
    int strong_components = 0;
    TriadCensus triads;
    double transitivity = 0;    // closed i->j->k fraction, NaN when no 2-paths
};

StructureStats structure_stats(const StaticSlice& slice);

// Krackhardt's four dimensions of hierarchy. connectedness = fraction of
// unordered pairs joined in the underlying undirected graph; efficiency =
// 1 - (m - (n - k)) / (C(n,2) - (n - k)) with m undirected edges and k weak
// components; hierarchy = 1 - reciprocated/reachable over ordered reachable
// pairs; lubness = 1 - (pairs lacking a common ancestor under reflexive
// reachability) / (sum over weak components of C(n_i - 1, 2)). Each is NaN
// when its denominator is 0.
struct KrackhardtStats {
    double connectedness = 0;
    double efficiency = 0;
    double hierarchy = 0;
    double lubness = 0;
};

KrackhardtStats krackhardt_stats(const StaticSlice& slice);

struct MetricSeries {
    std::vector<Time> times;
    std::vector<std::string> names;           // column names
    std::vector<std::vector<double>> values;  // values[i][j]: names[j] at times[i]
};

// Arc counts between vertex categories of one attribute: per slice, column
// "<g>.<h>" counts arcs whose tail is in category g and head in category h.
// Categories are the sorted distinct values; vertices missing the attribute
// fall in category "NA".
MetricSeries node_mix(const TemporalNetwork& net, const std::string& attribute,
                      const SliceSpec& spec, int jobs = 1);

struct MetricOptions {
    GraphMode gmode = GraphMode::kGraph;
    AggUnit agg_unit = AggUnit::kEdge;
    int jobs = 1;
};

// Per-slice series for a named metric. Selectors: gden, grecip (edgewise),
// grecip.dyadic, mutuality, dyad.census (Mut/Asym/Null), triad.census (16
// columns), gtrans, components, components.strong, connectedness,
// efficiency, hierarchy, lubness, centralization.<degree|indegree|outdegree|
// betweenness|closeness|evcent>, nodemix.<attribute>. Unknown selectors
// raise Error listing the valid names.
MetricSeries metric_series(const TemporalNetwork& net, const std::string& selector,
                           const SliceSpec& spec, const MetricOptions& options = {});

std::vector<std::string> metric_selectors();

}  // namespace tempnet
