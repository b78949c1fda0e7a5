#include "tempnet/core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_set>

namespace tempnet {

TemporalNetwork::TemporalNetwork(std::vector<VertexRecord> vertices,
                                 std::vector<TemporalEdge> edges, bool directed,
                                 Time obs_start, Time obs_end)
    : vertices_(std::move(vertices)),
      edges_(std::move(edges)),
      directed_(directed),
      obs_start_(obs_start),
      obs_end_(obs_end) {
    std::sort(edges_.begin(), edges_.end(), [](const TemporalEdge& a, const TemporalEdge& b) {
        return std::pair(a.tail, a.head) < std::pair(b.tail, b.head);
    });
    for (auto& edge : edges_) {
        std::sort(edge.spells.begin(), edge.spells.end(),
                  [](const EdgeSpell& a, const EdgeSpell& b) {
                      return std::pair(a.onset, a.terminus) < std::pair(b.onset, b.terminus);
                  });
    }
    validate();
    index_edges();
}

TemporalNetwork TemporalNetwork::build(std::vector<VertexRecord> vertices,
                                       const std::vector<SpellRow>& spell_rows, bool directed) {
    const int n = static_cast<int>(vertices.size());
    std::map<std::pair<int, int>, TemporalEdge> by_dyad;
    Time lo = kInfTime, hi = -kInfTime;
    for (std::size_t i = 0; i < spell_rows.size(); ++i) {
        const SpellRow& row = spell_rows[i];
        if (row.tail < 1 || row.tail > n || row.head < 1 || row.head > n)
            throw Error("spell row " + std::to_string(i) + ": unknown vertex id " +
                        std::to_string(row.tail < 1 || row.tail > n ? row.tail : row.head));
        if (!(row.onset <= row.terminus))
            throw Error("spell row " + std::to_string(i) + ": onset " + std::to_string(row.onset) +
                        " exceeds terminus " + std::to_string(row.terminus));
        auto& edge = by_dyad[{row.tail, row.head}];
        edge.tail = row.tail;
        edge.head = row.head;
        edge.weight += 1;
        edge.spells.push_back({row.onset, row.terminus, row.onset_censored, row.terminus_censored});
        lo = std::min(lo, row.onset);
        hi = std::max(hi, row.terminus);
    }
    if (spell_rows.empty()) {
        lo = 0;
        hi = 0;
    }
    std::vector<TemporalEdge> edges;
    edges.reserve(by_dyad.size());
    for (auto& [dyad, edge] : by_dyad) edges.push_back(std::move(edge));
    return TemporalNetwork(std::move(vertices), std::move(edges), directed, lo, hi);
}

void TemporalNetwork::validate() const {
    const int n = vertex_count();
    std::unordered_set<std::string> labels;
    for (int i = 0; i < n; ++i) {
        if (vertices_[static_cast<size_t>(i)].id != i + 1)
            throw Error("vertex ids must form a dense 1..n range (got " +
                        std::to_string(vertices_[static_cast<size_t>(i)].id) + " at position " +
                        std::to_string(i + 1) + ")");
        if (!labels.insert(vertices_[static_cast<size_t>(i)].label).second)
            throw Error("duplicate vertex label: " + vertices_[static_cast<size_t>(i)].label);
    }
    std::set<std::pair<int, int>> dyads;
    for (const auto& edge : edges_) {
        if (edge.tail < 1 || edge.tail > n || edge.head < 1 || edge.head > n)
            throw Error("edge endpoint out of range");
        if (edge.tail == edge.head)
            throw Error("loop edge on vertex " + std::to_string(edge.tail));
        if (!dyads.insert({edge.tail, edge.head}).second)
            throw Error("duplicate dyad (" + std::to_string(edge.tail) + ", " +
                        std::to_string(edge.head) + ")");
        for (const auto& spell : edge.spells) {
            if (!(spell.onset <= spell.terminus) || !std::isfinite(spell.onset) ||
                !std::isfinite(spell.terminus))
                throw Error("invalid spell on dyad (" + std::to_string(edge.tail) + ", " +
                            std::to_string(edge.head) + ")");
            if (spell.onset < obs_start_ || spell.terminus > obs_end_)
                throw Error("spell outside observation period on dyad (" +
                            std::to_string(edge.tail) + ", " + std::to_string(edge.head) + ")");
        }
    }
}

void TemporalNetwork::index_edges() {
    out_edges_.assign(vertices_.size(), {});
    in_edges_.assign(vertices_.size(), {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        out_edges_[static_cast<size_t>(edges_[e].tail - 1)].push_back(static_cast<int>(e));
        in_edges_[static_cast<size_t>(edges_[e].head - 1)].push_back(static_cast<int>(e));
    }
}

const TemporalEdge* TemporalNetwork::find_edge(int tail, int head) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair(tail, head),
                               [](const TemporalEdge& e, const std::pair<int, int>& key) {
                                   return std::pair(e.tail, e.head) < key;
                               });
    if (it != edges_.end() && it->tail == tail && it->head == head) return &*it;
    return nullptr;
}

ObservationSummary observation_summary(const TemporalNetwork& net) {
    ObservationSummary s;
    s.vertex_count = net.vertex_count();
    s.edge_count = static_cast<int>(net.edges().size());
    s.obs_start = net.obs_start();
    s.obs_end = net.obs_end();
    std::set<Time> change_times;
    for (const auto& edge : net.edges()) {
        s.spell_count += edge.spells.size();
        for (const auto& spell : edge.spells) {
            change_times.insert(spell.onset);
            change_times.insert(spell.terminus);
        }
    }
    s.distinct_change_times = change_times.size();
    std::set<std::string> names;
    for (const auto& v : net.vertices())
        for (const auto& [key, value] : v.attributes) names.insert(key);
    s.attribute_names.assign(names.begin(), names.end());
    return s;
}

bool spell_active_at(const EdgeSpell& spell, Time at) {
    return spell.onset <= at && at <= spell.terminus;
}

bool spell_active_in(const EdgeSpell& spell, Time onset, Time terminus) {
    if (onset == terminus) return spell_active_at(spell, onset);
    if (spell.onset == spell.terminus)  // point spell
        return onset <= spell.onset && spell.onset < terminus;
    return spell.onset < terminus && spell.terminus > onset;
}

bool is_active(const TemporalEdge& edge, Time at) {
    for (const auto& spell : edge.spells)
        if (spell_active_at(spell, at)) return true;
    return false;
}

bool is_active_in(const TemporalEdge& edge, Time onset, Time terminus) {
    if (!(onset <= terminus)) throw Error("is_active_in: window onset exceeds terminus");
    for (const auto& spell : edge.spells)
        if (spell_active_in(spell, onset, terminus)) return true;
    return false;
}

StaticSlice extract_window(const TemporalNetwork& net, Time onset, Time terminus) {
    if (!(onset <= terminus)) throw Error("extract_window: onset exceeds terminus");
    StaticSlice slice;
    slice.vertex_count = net.vertex_count();
    slice.directed = net.directed();
    slice.window_onset = onset;
    slice.window_terminus = terminus;
    for (const auto& edge : net.edges())
        if (is_active_in(edge, onset, terminus)) slice.arcs.emplace_back(edge.tail, edge.head);
    return slice;
}

TemporalNetwork induced_subgraph(const TemporalNetwork& net, const std::vector<int>& keep_ids) {
    if (keep_ids.empty()) throw Error("induced_subgraph: empty vertex selection");
    std::vector<int> ids = keep_ids;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::vector<int> remap(static_cast<size_t>(net.vertex_count()) + 1, 0);
    std::vector<VertexRecord> vertices;
    vertices.reserve(ids.size());
    for (int id : ids) {
        if (id < 1 || id > net.vertex_count())
            throw Error("induced_subgraph: vertex id " + std::to_string(id) + " out of range");
        VertexRecord v = net.vertex(id);
        v.id = static_cast<int>(vertices.size()) + 1;
        remap[static_cast<size_t>(id)] = v.id;
        vertices.push_back(std::move(v));
    }
    std::vector<TemporalEdge> edges;
    for (const auto& edge : net.edges()) {
        int t = remap[static_cast<size_t>(edge.tail)];
        int h = remap[static_cast<size_t>(edge.head)];
        if (t == 0 || h == 0) continue;
        TemporalEdge copy = edge;
        copy.tail = t;
        copy.head = h;
        edges.push_back(std::move(copy));
    }
    return TemporalNetwork(std::move(vertices), std::move(edges), net.directed(), net.obs_start(),
                           net.obs_end());
}

TemporalNetwork induced_subgraph(const TemporalNetwork& net,
                                 const std::function<bool(const VertexRecord&)>& keep) {
    std::vector<int> ids;
    for (const auto& v : net.vertices())
        if (keep(v)) ids.push_back(v.id);
    return induced_subgraph(net, ids);
}

int static_degree(const TemporalNetwork& net, int v) {
    if (v < 1 || v > net.vertex_count())
        throw Error("static_degree: vertex id " + std::to_string(v) + " out of range");
    return static_cast<int>(net.out_edges(v).size() + net.in_edges(v).size());
}

std::vector<WeightedArc> aggregate_static(const TemporalNetwork& net) {
    std::vector<WeightedArc> arcs;
    arcs.reserve(net.edges().size());
    for (const auto& edge : net.edges())
        arcs.push_back({edge.tail, edge.head, static_cast<int>(edge.spells.size())});
    return arcs;
}

}  // namespace tempnet
