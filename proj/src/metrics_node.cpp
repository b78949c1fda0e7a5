#include "tempnet/metrics_node.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <set>

#include "parallel.hpp"
#include "slice_graph.hpp"

namespace tempnet {

std::vector<Time> slice_times(const SliceSpec& spec) {
    if (!(spec.start <= spec.end)) throw Error("slice spec: start exceeds end");
    if (!(spec.time_interval > 0)) throw Error("slice spec: time interval must be positive");
    if (spec.aggregate_dur < 0) throw Error("slice spec: negative aggregation window");
    auto count = static_cast<std::size_t>(
        std::floor((spec.end - spec.start) / spec.time_interval + 1e-9));
    std::vector<Time> times;
    times.reserve(count + 1);
    for (std::size_t k = 0; k <= count; ++k)
        times.push_back(spec.start + static_cast<Time>(k) * spec.time_interval);
    return times;
}

std::vector<std::pair<Time, StaticSlice>> slice_iter(const TemporalNetwork& net,
                                                     const SliceSpec& spec) {
    std::vector<std::pair<Time, StaticSlice>> slices;
    for (Time t : slice_times(spec))
        slices.emplace_back(t, extract_window(net, t, t + spec.aggregate_dur));
    return slices;
}

namespace detail_graph {

// Neighbor lists for a slice; graph mode links both endpoints of every arc.
std::vector<std::vector<int>> adjacency(const StaticSlice& slice, GraphMode gmode) {
    const auto n = static_cast<std::size_t>(slice.vertex_count);
    std::vector<std::set<int>> nbrs(n);
    for (const auto& [tail, head] : slice.arcs) {
        nbrs[static_cast<std::size_t>(tail - 1)].insert(head - 1);
        if (gmode == GraphMode::kGraph) nbrs[static_cast<std::size_t>(head - 1)].insert(tail - 1);
    }
    std::vector<std::vector<int>> adj(n);
    for (std::size_t v = 0; v < n; ++v) adj[v].assign(nbrs[v].begin(), nbrs[v].end());
    return adj;
}

}  // namespace detail_graph

std::vector<double> slice_degree(const StaticSlice& slice, DegreeCmode cmode) {
    std::vector<double> deg(static_cast<std::size_t>(slice.vertex_count), 0.0);
    for (const auto& [tail, head] : slice.arcs) {
        if (cmode != DegreeCmode::kInDegree) deg[static_cast<std::size_t>(tail - 1)] += 1;
        if (cmode != DegreeCmode::kOutDegree) deg[static_cast<std::size_t>(head - 1)] += 1;
    }
    return deg;
}

std::vector<std::vector<double>> slice_geodesics(const StaticSlice& slice, GraphMode gmode) {
    const auto n = static_cast<std::size_t>(slice.vertex_count);
    auto adj = detail_graph::adjacency(slice, gmode);
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, kInfTime));
    std::deque<int> queue;
    for (std::size_t s = 0; s < n; ++s) {
        auto& d = dist[s];
        d[s] = 0;
        queue.clear();
        queue.push_back(static_cast<int>(s));
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : adj[static_cast<std::size_t>(v)])
                if (d[static_cast<std::size_t>(w)] == kInfTime) {
                    d[static_cast<std::size_t>(w)] = d[static_cast<std::size_t>(v)] + 1;
                    queue.push_back(w);
                }
        }
    }
    return dist;
}

std::vector<double> slice_closeness(const StaticSlice& slice, GraphMode gmode,
                                    ClosenessVariant variant) {
    const auto n = static_cast<std::size_t>(slice.vertex_count);
    auto dist = slice_geodesics(slice, gmode);
    std::vector<double> scores(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
        if (variant == ClosenessVariant::kStandard) {
            double sum = 0;
            for (std::size_t u = 0; u < n; ++u)
                if (u != v) sum += dist[v][u];
            // an unreachable vertex pushes the sum to infinity, and the
            // ratio to 0; a 1-vertex slice is 0/0 = NaN
            scores[v] = static_cast<double>(n - 1) / sum;
        } else {
            double sum = 0;
            for (std::size_t u = 0; u < n; ++u)
                if (u != v && dist[v][u] != kInfTime) sum += 1.0 / dist[v][u];
            scores[v] = sum / static_cast<double>(n - 1);
        }
    }
    return scores;
}

std::vector<double> slice_betweenness(const StaticSlice& slice, GraphMode gmode) {
    const auto n = static_cast<std::size_t>(slice.vertex_count);
    auto adj = detail_graph::adjacency(slice, gmode);
    std::vector<double> bc(n, 0.0);
    std::vector<double> sigma(n), delta(n);
    std::vector<double> dist(n);
    std::vector<std::vector<int>> preds(n);
    std::vector<int> order;
    std::deque<int> queue;
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(dist.begin(), dist.end(), -1.0);
        for (auto& p : preds) p.clear();
        order.clear();
        queue.clear();
        sigma[s] = 1;
        dist[s] = 0;
        queue.push_back(static_cast<int>(s));
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            order.push_back(v);
            for (int w : adj[static_cast<std::size_t>(v)]) {
                auto wi = static_cast<std::size_t>(w);
                auto vi = static_cast<std::size_t>(v);
                if (dist[wi] < 0) {
                    dist[wi] = dist[vi] + 1;
                    queue.push_back(w);
                }
                if (dist[wi] == dist[vi] + 1) {
                    sigma[wi] += sigma[vi];
                    preds[wi].push_back(v);
                }
            }
        }
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            auto wi = static_cast<std::size_t>(*it);
            for (int v : preds[wi]) {
                auto vi = static_cast<std::size_t>(v);
                delta[vi] += sigma[vi] / sigma[wi] * (1.0 + delta[wi]);
            }
            if (wi != s) bc[wi] += delta[wi];
        }
    }
    if (gmode == GraphMode::kGraph)
        for (auto& value : bc) value /= 2.0;
    return bc;
}

std::vector<double> slice_evcent(const StaticSlice& slice, GraphMode gmode) {
    const auto n = static_cast<std::size_t>(slice.vertex_count);
    std::vector<double> x(n, 0.0);
    if (n == 0 || slice.arcs.empty()) return x;

    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (const auto& [tail, head] : slice.arcs) {
        a[static_cast<std::size_t>(tail - 1)][static_cast<std::size_t>(head - 1)] = 1.0;
        if (gmode == GraphMode::kGraph)
            a[static_cast<std::size_t>(head - 1)][static_cast<std::size_t>(tail - 1)] = 1.0;
    }

    std::fill(x.begin(), x.end(), 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> next(n);
    for (int iter = 0; iter < 10000; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            double sum = x[i];  // the +I shift: keeps bipartite slices from cycling
            for (std::size_t j = 0; j < n; ++j) sum += a[i][j] * x[j];
            next[i] = sum;
        }
        double norm = 0;
        for (double value : next) norm += value * value;
        norm = std::sqrt(norm);
        if (norm == 0) break;
        double change = 0;
        for (std::size_t i = 0; i < n; ++i) {
            next[i] /= norm;
            change = std::max(change, std::abs(next[i] - x[i]));
        }
        x.swap(next);
        if (change < 1e-10) break;
    }
    return x;
}

namespace {

NodeSeries assemble_series(const TemporalNetwork& net, const SliceSpec& spec, int jobs,
                           std::string metric_name, std::string option,
                           const std::function<std::vector<double>(const StaticSlice&)>& kernel) {
    NodeSeries series;
    series.metric_name = std::move(metric_name);
    series.option = std::move(option);
    series.times = slice_times(spec);
    for (const auto& v : net.vertices()) series.vertex_labels.push_back(v.label);
    series.values.resize(series.times.size());
    detail::parallel_for(series.times.size(), jobs, [&](std::size_t i) {
        StaticSlice slice =
            extract_window(net, series.times[i], series.times[i] + spec.aggregate_dur);
        series.values[i] = kernel(slice);
    });
    return series;
}

}  // namespace

NodeSeries degree_series(const TemporalNetwork& net, const SliceSpec& spec, DegreeCmode cmode,
                         int jobs) {
    const char* name = cmode == DegreeCmode::kFreeman     ? "freeman"
                       : cmode == DegreeCmode::kInDegree ? "indegree"
                                                         : "outdegree";
    return assemble_series(net, spec, jobs, "degree", std::string("cmode=") + name,
                           [cmode](const StaticSlice& s) { return slice_degree(s, cmode); });
}

NodeSeries closeness_series(const TemporalNetwork& net, const SliceSpec& spec, GraphMode gmode,
                            ClosenessVariant variant, int jobs) {
    std::string option = gmode == GraphMode::kGraph ? "gmode=graph" : "gmode=digraph";
    if (variant == ClosenessVariant::kHarmonic) option += ",harmonic";
    return assemble_series(
        net, spec, jobs, "closeness", option,
        [gmode, variant](const StaticSlice& s) { return slice_closeness(s, gmode, variant); });
}

NodeSeries betweenness_series(const TemporalNetwork& net, const SliceSpec& spec, GraphMode gmode,
                              int jobs) {
    return assemble_series(
        net, spec, jobs, "betweenness",
        gmode == GraphMode::kGraph ? "gmode=graph" : "gmode=digraph",
        [gmode](const StaticSlice& s) { return slice_betweenness(s, gmode); });
}

NodeSeries evcent_series(const TemporalNetwork& net, const SliceSpec& spec, GraphMode gmode,
                         int jobs) {
    return assemble_series(net, spec, jobs, "evcent",
                           gmode == GraphMode::kGraph ? "gmode=graph" : "gmode=digraph",
                           [gmode](const StaticSlice& s) { return slice_evcent(s, gmode); });
}

}  // namespace tempnet
