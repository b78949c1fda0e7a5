#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "tempnet/types.hpp"

namespace tempnet {

// Immutable temporal network: dense 1..n vertex table, one TemporalEdge per
// ordered dyad, and an observation period covering all spells. Safe for
// shared read-only access from concurrent workers.
class TemporalNetwork {
public:
    TemporalNetwork() = default;
    TemporalNetwork(std::vector<VertexRecord> vertices, std::vector<TemporalEdge> edges,
                    bool directed, Time obs_start, Time obs_end);

    // Merges spell rows by ordered dyad: weight = row count, spell list holds
    // every row. Observation period is [min onset, max terminus], or [0, 0]
    // when there are no rows. Rejects unknown endpoints and inverted spells
    // with the offending row index in the message.
    static TemporalNetwork build(std::vector<VertexRecord> vertices,
                                 const std::vector<SpellRow>& spell_rows, bool directed);

    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    const VertexRecord& vertex(int id) const { return vertices_.at(static_cast<size_t>(id - 1)); }
    const std::vector<VertexRecord>& vertices() const { return vertices_; }
    const std::vector<TemporalEdge>& edges() const { return edges_; }
    bool directed() const { return directed_; }
    Time obs_start() const { return obs_start_; }
    Time obs_end() const { return obs_end_; }

    // Edge indices incident to a vertex, by direction.
    const std::vector<int>& out_edges(int v) const { return out_edges_.at(static_cast<size_t>(v - 1)); }
    const std::vector<int>& in_edges(int v) const { return in_edges_.at(static_cast<size_t>(v - 1)); }

    const TemporalEdge* find_edge(int tail, int head) const;

private:
    void index_edges();
    void validate() const;

    std::vector<VertexRecord> vertices_;
    std::vector<TemporalEdge> edges_;  // sorted by (tail, head)
    bool directed_ = true;
    Time obs_start_ = 0;
    Time obs_end_ = 0;
    std::vector<std::vector<int>> out_edges_;
    std::vector<std::vector<int>> in_edges_;
};

struct ObservationSummary {
    int vertex_count = 0;
    int edge_count = 0;
    std::size_t spell_count = 0;
    std::size_t distinct_change_times = 0;  // |{onsets} ∪ {termini}|
    Time obs_start = 0;
    Time obs_end = 0;
    std::vector<std::string> attribute_names;
};

ObservationSummary observation_summary(const TemporalNetwork& net);

// Point queries treat spells as closed intervals [onset, terminus]; both
// endpoints are active instants. Window queries treat spells as half-open
// against a half-open window [onset, terminus), except that a point spell
// [p, p] is active in [a, b) iff a <= p < b, and a zero-length window [x, x)
// degrades to the point query at x.
bool spell_active_at(const EdgeSpell& spell, Time at);
bool spell_active_in(const EdgeSpell& spell, Time onset, Time terminus);
bool is_active(const TemporalEdge& edge, Time at);
bool is_active_in(const TemporalEdge& edge, Time onset, Time terminus);

// Static graph of the dyads active during one window. The vertex set is the
// parent's (vertices have no activity spells of their own).
struct StaticSlice {
    int vertex_count = 0;
    bool directed = true;
    Time window_onset = 0;
    Time window_terminus = 0;
    std::vector<std::pair<int, int>> arcs;  // sorted (tail, head) dyads
};

StaticSlice extract_window(const TemporalNetwork& net, Time onset, Time terminus);

// Keeps the selected vertices (re-indexed densely, original order) and every
// edge whose endpoints both survive; spells are untouched and the parent
// observation period is retained. Empty selections are rejected.
TemporalNetwork induced_subgraph(const TemporalNetwork& net, const std::vector<int>& keep_ids);
TemporalNetwork induced_subgraph(const TemporalNetwork& net,
                                 const std::function<bool(const VertexRecord&)>& keep);

// Dyadic degree on the base network: number of distinct dyads incident to v,
// counting both directions (edge count, not weight sum).
int static_degree(const TemporalNetwork& net, int v);

struct WeightedArc {
    int tail = 0;
    int head = 0;
    int weight = 0;  // spell count of the dyad
};

// Collapses the whole observation period into one weighted arc per dyad.
std::vector<WeightedArc> aggregate_static(const TemporalNetwork& net);

}  // namespace tempnet
