#pragma once

#include <vector>

#include "tempnet/core.hpp"

namespace tempnet {

enum class EventKind { kFormation, kDissolution };

// Spell boundary counts per time bin. Bins are [obs_start + k*w,
// obs_start + (k+1)*w) with the final bin closed so obs_end lands inside;
// counting is per spell (a dyad with three spells forms three times), so the
// counts always sum to the network's spell count.
struct EventSeries {
    std::vector<Time> times;  // bin start times
    std::vector<long long> counts;
    EventKind kind = EventKind::kFormation;
    Time bin_width = 0;
};

// Spell onsets per bin.
EventSeries formation_series(const TemporalNetwork& net, Time time_interval);
// Spell termini per bin.
EventSeries dissolution_series(const TemporalNetwork& net, Time time_interval);

// Centered moving average over a window of the given half-width in bins
// (window size 2*half_width + 1, truncated at the ends); used to read peak
// locations off noisy event series.
std::vector<double> smooth_counts(const EventSeries& series, int half_width);

}  // namespace tempnet
