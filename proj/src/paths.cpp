#include "tempnet/paths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>
#include <vector>

namespace tempnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct OrientedArc {
    int to = 0;
    std::vector<EdgeSpell> spells;  // sorted ascending by onset
};

// Forward orientation uses arcs and spells as stored; backward flips every
// arc and negates its spells so the same earliest-arrival sweep answers the
// latest-departure question on mirrored time.
std::vector<std::vector<OrientedArc>> orient(const TemporalNetwork& net, PathDirection direction) {
    std::vector<std::vector<OrientedArc>> adj(net.vertex_count() + 1);
    for (const TemporalEdge& e : net.edges()) {
        OrientedArc arc;
        if (direction == PathDirection::kFwd) {
            arc.to = e.head;
            arc.spells = e.spells;
            adj[e.tail].push_back(std::move(arc));
        } else {
            arc.to = e.tail;
            arc.spells.reserve(e.spells.size());
            for (const EdgeSpell& s : e.spells)
                arc.spells.push_back({-s.terminus, -s.onset, s.terminus_censored, s.onset_censored});
            std::sort(arc.spells.begin(), arc.spells.end(),
                      [](const EdgeSpell& a, const EdgeSpell& b) {
                          return a.onset < b.onset || (a.onset == b.onset && a.terminus < b.terminus);
                      });
            adj[e.head].push_back(std::move(arc));
        }
    }
    return adj;
}

// Earliest feasible contact over an arc for a walker whose clock reads tau.
// Spells are onset-sorted, so the first feasible spell at contact tau (or the
// first whose onset beats the incumbent) ends the scan.
double earliest_contact(const std::vector<EdgeSpell>& spells, double tau, double horizon,
                        double step_time, TraversalRule rule) {
    double best = kInf;
    for (const EdgeSpell& s : spells) {
        if (s.onset > horizon) break;
        if (best <= s.onset || best <= tau) break;
        double c = std::max(tau, s.onset);
        double need = rule == TraversalRule::kArriveWithinSpell ? c + step_time : c;
        if (need > s.terminus) continue;
        if (c < best) best = c;
    }
    return best;
}

}  // namespace

PathTree earliest_path_tree(const TemporalNetwork& net, int seed, Time start, Time end,
                            PathDirection direction, Time step_time, TraversalRule rule) {
    const int n = net.vertex_count();
    if (seed < 1 || seed > n)
        throw Error("earliest_path_tree: seed " + std::to_string(seed) + " out of range 1.." +
                    std::to_string(n));
    if (!std::isfinite(start) || !std::isfinite(end))
        throw Error("earliest_path_tree: start and end must be finite");
    if (start > end) throw Error("earliest_path_tree: start must not exceed end");
    if (!std::isfinite(step_time) || step_time < 0)
        throw Error("earliest_path_tree: step time must be finite and non-negative");

    // Mirrored window for the backward sweep.
    const double lo = direction == PathDirection::kFwd ? start : -end;
    const double hi = direction == PathDirection::kFwd ? end : -start;
    const auto adj = orient(net, direction);

    std::vector<double> arrival(n + 1, kInf);
    std::vector<double> hops(n + 1, kInf);
    std::vector<int> prev(n + 1, 0);
    arrival[seed] = lo;
    hops[seed] = 0;

    using State = std::tuple<double, double, int>;  // (arrival, hops, vertex)
    std::priority_queue<State, std::vector<State>, std::greater<State>> heap;
    heap.emplace(lo, 0.0, seed);

    while (!heap.empty()) {
        auto [a, g, u] = heap.top();
        heap.pop();
        if (a != arrival[u] || g != hops[u]) continue;  // stale entry
        if (a > hi) continue;  // reached past the horizon: cannot relay
        for (const OrientedArc& arc : adj[u]) {
            double c = earliest_contact(arc.spells, a, hi, step_time, rule);
            if (c == kInf) continue;
            double a2 = c + step_time;
            double g2 = g + 1;
            int v = arc.to;
            // Lexicographic improvement on (arrival, hops, predecessor id).
            if (a2 > arrival[v]) continue;
            if (a2 == arrival[v]) {
                if (g2 > hops[v]) continue;
                if (g2 == hops[v]) {
                    if (u < prev[v]) prev[v] = u;
                    continue;
                }
            }
            arrival[v] = a2;
            hops[v] = g2;
            prev[v] = u;
            heap.emplace(a2, g2, v);
        }
    }

    PathTree tree;
    tree.seed = seed;
    tree.direction = direction;
    tree.start = start;
    tree.end = end;
    tree.step_time = step_time;
    tree.type = direction == PathDirection::kFwd ? "earliest.arrive" : "latest.depart";
    tree.tdist.assign(n, kInf);
    tree.previous.assign(n, 0);
    tree.gsteps.assign(n, kInf);
    for (int v = 1; v <= n; ++v) {
        if (arrival[v] == kInf) continue;
        tree.tdist[v - 1] = arrival[v] - lo;
        tree.previous[v - 1] = prev[v];
        tree.gsteps[v - 1] = hops[v];
    }
    return tree;
}

std::vector<int> reachable_set(const PathTree& tree) {
    std::vector<int> out;
    for (int v = 1; v <= static_cast<int>(tree.tdist.size()); ++v)
        if (std::isfinite(tree.tdist[v - 1])) out.push_back(v);
    return out;
}

std::vector<TransmissionEvent> transmission_timeline(const PathTree& tree) {
    std::vector<TransmissionEvent> events;
    for (int v = 1; v <= static_cast<int>(tree.tdist.size()); ++v) {
        if (v == tree.seed || !std::isfinite(tree.tdist[v - 1])) continue;
        TransmissionEvent ev;
        ev.vertex = v;
        ev.generation = tree.gsteps[v - 1];
        ev.clock_time = tree.direction == PathDirection::kFwd ? tree.start + tree.tdist[v - 1]
                                                              : tree.end - tree.tdist[v - 1];
        ev.parent = tree.previous[v - 1];
        events.push_back(ev);
    }
    std::sort(events.begin(), events.end(), [](const TransmissionEvent& a, const TransmissionEvent& b) {
        return a.clock_time < b.clock_time || (a.clock_time == b.clock_time && a.vertex < b.vertex);
    });
    return events;
}

std::vector<std::pair<int, int>> tree_as_edgelist(const PathTree& tree) {
    std::vector<std::pair<int, int>> arcs;
    for (int v = 1; v <= static_cast<int>(tree.tdist.size()); ++v)
        if (v != tree.seed && std::isfinite(tree.tdist[v - 1]))
            arcs.emplace_back(tree.previous[v - 1], v);
    return arcs;
}

}  // namespace tempnet
