#pragma once

#include <vector>

#include "tempnet/metrics_node.hpp"

namespace tempnet::detail_graph {

// Neighbor lists for a slice; graph mode links both endpoints of every arc.
std::vector<std::vector<int>> adjacency(const StaticSlice& slice, GraphMode gmode);

}  // namespace tempnet::detail_graph
