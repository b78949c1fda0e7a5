#pragma once

#include <string>
#include <vector>

#include "tempnet/core.hpp"

namespace tempnet {

// Window-iteration parameters: slices start at start, start + interval, ...
// while <= end; each slice covers [t, t + aggregate_dur) (a zero-length
// window is the point query at t).
struct SliceSpec {
    Time start = 0;
    Time end = 0;
    Time time_interval = 1;
    Time aggregate_dur = 0;
};

// Slice start times: start + k * time_interval for k = 0..floor(span/step),
// with a small fuzz so fractional steps that should land on `end` do.
std::vector<Time> slice_times(const SliceSpec& spec);

std::vector<std::pair<Time, StaticSlice>> slice_iter(const TemporalNetwork& net,
                                                     const SliceSpec& spec);

// graph = symmetrize arcs (an arc either way links the pair), digraph = keep
// arc directions.
enum class GraphMode { kGraph, kDigraph };

// Degree flavors: freeman counts both directions, and does so in digraph
// mode too.
enum class DegreeCmode { kFreeman, kInDegree, kOutDegree };

// Closeness for a vertex that cannot reach every other vertex: kStandard
// yields 0 ((n-1)/sum with an infinite sum); kHarmonic averages 1/distance
// over the others, unreachable contributing 0.
enum class ClosenessVariant { kStandard, kHarmonic };

// Per-slice kernels; result index v-1 is vertex v.
std::vector<double> slice_degree(const StaticSlice& slice, DegreeCmode cmode);
std::vector<double> slice_closeness(const StaticSlice& slice, GraphMode gmode,
                                    ClosenessVariant variant = ClosenessVariant::kStandard);
// Pair-dependency betweenness (all shortest paths counted, no tie-breaking);
// undirected scores are ordered-pair sums halved, so a triangle scores 0.
std::vector<double> slice_betweenness(const StaticSlice& slice, GraphMode gmode);
// Leading eigenvector of the (symmetrized in graph mode) adjacency matrix:
// nonnegative, unit Euclidean length, all zeros for an empty slice. Power
// iteration on A + I (the shift breaks bipartite period-2 oscillation
// without moving the leading eigenvector), all-ones start, tolerance 1e-10
// on the iterate infinity norm, capped at 10000 rounds.
std::vector<double> slice_evcent(const StaticSlice& slice, GraphMode gmode);

// Geodesic distances from every vertex (n x n, kInfTime for unreachable,
// 0 on the diagonal); shared by closeness and the graph-level measures.
std::vector<std::vector<double>> slice_geodesics(const StaticSlice& slice, GraphMode gmode);

struct NodeSeries {
    std::vector<Time> times;
    std::vector<std::string> vertex_labels;
    std::vector<std::vector<double>> values;  // values[i][v] at times[i]
    std::string metric_name;                  // degree, closeness, betweenness, evcent
    std::string option;                       // cmode=... or gmode=...
};

NodeSeries degree_series(const TemporalNetwork& net, const SliceSpec& spec,
                         DegreeCmode cmode = DegreeCmode::kFreeman, int jobs = 1);
NodeSeries closeness_series(const TemporalNetwork& net, const SliceSpec& spec,
                            GraphMode gmode = GraphMode::kGraph,
                            ClosenessVariant variant = ClosenessVariant::kStandard, int jobs = 1);
NodeSeries betweenness_series(const TemporalNetwork& net, const SliceSpec& spec,
                              GraphMode gmode = GraphMode::kGraph, int jobs = 1);
NodeSeries evcent_series(const TemporalNetwork& net, const SliceSpec& spec,
                         GraphMode gmode = GraphMode::kGraph, int jobs = 1);

}  // namespace tempnet
