#pragma once

#include <string>
#include <vector>

#include "tempnet/core.hpp"

namespace testutil {

inline std::vector<tempnet::VertexRecord> vertices(int n) {
    std::vector<tempnet::VertexRecord> out;
    for (int v = 1; v <= n; ++v) {
        tempnet::VertexRecord rec;
        rec.id = v;
        rec.label = "v" + std::to_string(v);
        out.push_back(std::move(rec));
    }
    return out;
}

inline tempnet::TemporalNetwork net_from_rows(int n, const std::vector<tempnet::SpellRow>& rows) {
    return tempnet::TemporalNetwork::build(vertices(n), rows, true);
}

inline tempnet::StaticSlice slice_of(int n, std::vector<std::pair<int, int>> arcs,
                                     bool directed = true) {
    tempnet::StaticSlice s;
    s.vertex_count = n;
    s.directed = directed;
    std::sort(arcs.begin(), arcs.end());
    s.arcs = std::move(arcs);
    return s;
}

}  // namespace testutil
