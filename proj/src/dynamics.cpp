#include "tempnet/dynamics.hpp"

#include <cmath>

namespace tempnet {

namespace {

EventSeries bin_events(const TemporalNetwork& net, Time width, EventKind kind) {
    if (!(width > 0)) throw Error("event series: time interval must be positive");
    const Time s = net.obs_start();
    const Time e = net.obs_end();
    // floor with a small forgiveness so spans that are exact multiples of the
    // width (up to double rounding, e.g. 72.01 / 0.01) land on the boundary.
    const long long bins = static_cast<long long>(std::floor((e - s) / width + 1e-9)) + 1;

    EventSeries out;
    out.kind = kind;
    out.bin_width = width;
    out.times.resize(static_cast<size_t>(bins));
    out.counts.assign(static_cast<size_t>(bins), 0);
    for (long long k = 0; k < bins; ++k) out.times[static_cast<size_t>(k)] = s + k * width;

    for (const TemporalEdge& edge : net.edges()) {
        for (const EdgeSpell& spell : edge.spells) {
            const Time x = kind == EventKind::kFormation ? spell.onset : spell.terminus;
            long long idx = static_cast<long long>(std::floor((x - s) / width + 1e-9));
            if (idx < 0) idx = 0;
            if (idx >= bins) idx = bins - 1;  // final bin is closed at obs_end
            ++out.counts[static_cast<size_t>(idx)];
        }
    }
    return out;
}

}  // namespace

EventSeries formation_series(const TemporalNetwork& net, Time time_interval) {
    return bin_events(net, time_interval, EventKind::kFormation);
}

EventSeries dissolution_series(const TemporalNetwork& net, Time time_interval) {
    return bin_events(net, time_interval, EventKind::kDissolution);
}

std::vector<double> smooth_counts(const EventSeries& series, int half_width) {
    if (half_width < 0) throw Error("smooth_counts: half width must be non-negative");
    const long long n = static_cast<long long>(series.counts.size());
    std::vector<double> out(static_cast<size_t>(n), 0.0);
    for (long long i = 0; i < n; ++i) {
        long long lo = i - half_width;
        long long hi = i + half_width;
        if (lo < 0) lo = 0;
        if (hi > n - 1) hi = n - 1;
        double sum = 0;
        for (long long j = lo; j <= hi; ++j) sum += static_cast<double>(series.counts[static_cast<size_t>(j)]);
        out[static_cast<size_t>(i)] = sum / static_cast<double>(hi - lo + 1);
    }
    return out;
}

}  // namespace tempnet
