#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tempnet {

// Model time: real-valued serial days. No calendar arithmetic happens past
// ingestion; everything downstream treats time as a plain number.
using Time = double;

inline constexpr Time kInfTime = std::numeric_limits<Time>::infinity();

// Domain/data errors (bad input files, invalid arguments, broken configs).
// The CLI maps these to exit code 2; anything else is an internal error (1).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// One activity interval attached to a dyad. onset <= terminus; a spell with
// onset == terminus is a point event (instantaneous contact).
struct EdgeSpell {
    Time onset = 0;
    Time terminus = 0;
    bool onset_censored = false;
    bool terminus_censored = false;
};

// Raw input row for network construction: one activity interval on an
// ordered dyad, endpoints given as 1-based vertex ids.
struct SpellRow {
    Time onset = 0;
    Time terminus = 0;
    int tail = 0;
    int head = 0;
    bool onset_censored = false;
    bool terminus_censored = false;
};

struct VertexRecord {
    int id = 0;          // 1-based, dense within a network
    std::string label;   // unique vertex name
    // Attribute values kept as raw strings in original column order so
    // serialization round-trips byte for byte.
    std::vector<std::pair<std::string, std::string>> attributes;

    const std::string* attribute(const std::string& name) const {
        for (const auto& [key, value] : attributes)
            if (key == name) return &value;
        return nullptr;
    }
};

// All activity of one ordered dyad. Spells are sorted by (onset, terminus)
// and kept verbatim: overlapping spells are not merged, activity is their
// union, and formation/dissolution counts see every spell.
struct TemporalEdge {
    int tail = 0;
    int head = 0;
    int weight = 0;  // number of source rows merged into this dyad
    std::vector<EdgeSpell> spells;
};

}  // namespace tempnet
