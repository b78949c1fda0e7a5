#pragma once

#include <string>

#include "tempnet/core.hpp"
#include "tempnet/dynamics.hpp"
#include "tempnet/metrics_graph.hpp"
#include "tempnet/paths.hpp"

namespace tempnet {

// Number formatting used by every writer: values with 6 significant digits,
// times rounded to 2 decimals with trailing zeros trimmed ("72.01", "14",
// "0.09"). NaN becomes an empty CSV cell / JSON null; infinity prints "Inf".
std::string fmt_value(double x);
std::string fmt_time(Time t);

// Writes via a temp file in the same directory plus rename, so readers never
// observe partial output.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// Canonical on-disk network bundle: a directory holding
//   vertices.csv  id,label,<attribute columns>
//   spells.csv    onset,terminus,tail,head,onset_censored,terminus_censored
//   meta.json     directedness, observation period, counts, spell mode, and
//                 the weighted dyad list (which also covers edges that never
//                 received a spell)
// Writing is deterministic: identical network and mode give identical bytes.
void write_bundle(const TemporalNetwork& net, const std::string& dir,
                  const std::string& spell_mode);
TemporalNetwork read_bundle(const std::string& dir);

// Human-readable summary (the `summary` subcommand's output).
std::string summary_text(const ObservationSummary& summary);

// Serializers. CSV puts t first; JSON is an object with the column layout
// and a records array.
std::string metric_series_csv(const MetricSeries& series);
std::string metric_series_json(const MetricSeries& series);

std::string node_series_csv_wide(const NodeSeries& series);
std::string node_series_csv_long(const NodeSeries& series);
std::string node_series_json(const NodeSeries& series);

// Path-tree table, one row per vertex in id order:
// tdist,previous,gsteps,start,end,direction,type with Inf/0/Inf for
// unreachable rows.
std::string path_tree_csv(const PathTree& tree);
std::string path_tree_json(const PathTree& tree);
// The tree as DOT (vertex labels from the network), for external renderers.
std::string path_tree_dot(const PathTree& tree, const TemporalNetwork& net);

std::string event_series_csv(const EventSeries& series);
std::string event_series_json(const EventSeries& series);

// One window's graph with vertex labels and attributes, for layout tools.
std::string slice_dot(const StaticSlice& slice, const TemporalNetwork& net);
std::string slice_json(const StaticSlice& slice, const TemporalNetwork& net);

}  // namespace tempnet
