#pragma once

#include <string>
#include <vector>

#include "tempnet/core.hpp"

namespace tempnet {

enum class PathDirection { kFwd, kBkwd };

// Whether a hop that makes contact at time c (within a spell) must also fit
// its per-hop duration inside the spell: kDepartWithinSpell only needs
// c <= spell terminus; kArriveWithinSpell needs c + step_time <= terminus.
enum class TraversalRule { kDepartWithinSpell, kArriveWithinSpell };

// Earliest-arrival tree from a seed. tdist is arrival time minus start
// (forward) or end minus latest departure (backward); unreachable vertices
// hold infinity with previous 0. gsteps counts tree hops and decreases by
// exactly one along every predecessor chain.
struct PathTree {
    int seed = 0;
    PathDirection direction = PathDirection::kFwd;
    Time start = 0;
    Time end = 0;
    Time step_time = 0;
    std::string type;             // earliest.arrive (fwd) / latest.depart (bkwd)
    std::vector<double> tdist;    // index v-1 for vertex v
    std::vector<int> previous;
    std::vector<double> gsteps;
};

// Time-respecting search: from a vertex whose clock reads tau, an arc spell
// [o, t] is usable at contact time c = max(tau, o) when c <= t (closed
// spell), c <= end, and the traversal rule holds; the hop arrives at
// c + step_time, which may exceed end (such vertices are reached but cannot
// relay further). Ties on arrival prefer fewer hops, then the smaller
// predecessor id, making the tree deterministic. The backward direction runs
// the same search on the time-reversed network (arcs flipped, spells
// negated), answering "latest departure that still reaches the seed".
PathTree earliest_path_tree(const TemporalNetwork& net, int seed, Time start, Time end,
                            PathDirection direction = PathDirection::kFwd, Time step_time = 0,
                            TraversalRule rule = TraversalRule::kDepartWithinSpell);

// Vertex ids with finite tdist, ascending (seed included).
std::vector<int> reachable_set(const PathTree& tree);

struct TransmissionEvent {
    int vertex = 0;
    double generation = 0;  // gsteps
    Time clock_time = 0;    // start + tdist (fwd), end - tdist (bkwd)
    int parent = 0;
};

// One event per reachable non-seed vertex, ordered by (clock_time, vertex).
std::vector<TransmissionEvent> transmission_timeline(const PathTree& tree);

// Arcs (previous(v), v) for each reachable non-seed v: a directed forest
// rooted at the seed.
std::vector<std::pair<int, int>> tree_as_edgelist(const PathTree& tree);

}  // namespace tempnet
