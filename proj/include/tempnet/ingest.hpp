#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tempnet/core.hpp"

namespace tempnet {

// Comma-separated table per RFC 4180: quoted fields may contain commas,
// escaped quotes ("") and newlines; CRLF and a UTF-8 BOM are tolerated.
// Parse failures carry the 1-based source line number.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;  // each exactly header-sized
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

// Header normalization: trim, lowercase, non-alphanumerics to underscores,
// collapse repeats, strip leading/trailing underscores, prefix "x" when the
// result starts with a digit (or is empty), and suffix _2, _3, ... on
// duplicates.
std::string clean_name(const std::string& raw);
std::vector<std::string> clean_names(const std::vector<std::string>& raw);

// Logical edge-file columns after header normalization; each may be remapped.
struct ColumnMap {
    std::string sender = "sender";
    std::string receiver = "receiver";
    std::string time = "timestamp";
    std::string thread = "discussion_title";
};

struct RawEdgeRow {
    std::string sender;
    std::string receiver;
    std::string timestamp;
    std::string discussion_title;
};

std::vector<RawEdgeRow> parse_edges_csv(std::istream& in, const ColumnMap& columns = {});
std::vector<RawEdgeRow> parse_edges_csv_file(const std::string& path,
                                             const ColumnMap& columns = {});

struct NodeParse {
    std::vector<VertexRecord> vertices;   // ids 1..n in file order; label = first column
    std::vector<std::string> warnings;    // e.g. unmapped experience codes
};

// First column is the unique vertex label; remaining columns become string
// attributes. A numeric `experience` column additionally yields an
// `expert_level` attribute (1=Expert, 2=Student, 3=Teacher; anything else is
// left empty with a warning).
NodeParse parse_nodes_csv(std::istream& in);
NodeParse parse_nodes_csv_file(const std::string& path);

// Timestamp text to seconds since the Unix epoch (UTC). Primary pattern is
// month/day/year hour:minute with '/', '-' or '.' separators and optional
// seconds; two-digit years map 00-68 to 2000s and 69-99 to 1900s. ISO-8601
// "Y-m-d H:M[:S]" (space or 'T') is accepted as a fallback.
double parse_timestamp(const std::string& text);

// Rounds to 2 decimals by choosing whichever representable hundredth is
// closer to x (exact ties to the even hundredth), the way R >= 4.0 rounds.
// Minute-grained inputs sit a hair off the midpoint in binary, so results
// follow the stored value rather than the decimal-looking tie.
double round2(double x);

// Serial days: (t - min t) in seconds / 86400, rounded to 2 decimals. The
// minimum maps to 0.00. Unparseable entries raise Error with the 1-based
// index of the offending row.
std::vector<Time> dayizer(const std::vector<std::string>& timestamps);

struct CleanEdgeRow {
    std::string sender;
    std::string receiver;
    Time new_date = 0;  // serial day of the post
    std::string discussion_title;
    Time start = 0;     // min new_date within the discussion
    Time end = 0;       // max new_date within the discussion
    Time duration = 0;  // end - start
};

std::vector<RawEdgeRow> drop_loops(const std::vector<RawEdgeRow>& rows);

// Cleaning pipeline, in order: drop loops (sender == receiver), convert
// timestamps to serial days over the loop-free rows, drop single-post
// discussions, then stamp each surviving row with its discussion's
// start/end/duration. Row order is preserved.
std::vector<CleanEdgeRow> clean_pipeline(const std::vector<RawEdgeRow>& rows);

struct WeightedDyad {
    std::string sender;
    std::string receiver;
    int weight = 0;  // occurrence count
};

// One row per ordered (sender, receiver) pair with its occurrence count.
// Expects loop-free rows (see drop_loops); the tally runs before the
// single-post-discussion filter, so it can contain dyads that never receive
// an activity spell.
std::vector<WeightedDyad> weighted_base_rows(const std::vector<RawEdgeRow>& rows);

// Spell derivation for a post in a discussion running [start, end]:
//   kDiscussionSpan - every post spans the whole discussion [start, end]
//   kPostToEnd      - a post is active from its own time [new_date, end]
enum class SpellMode { kDiscussionSpan, kPostToEnd };

std::string to_string(SpellMode mode);
SpellMode spell_mode_from_string(const std::string& name);

// Builds the temporal network: the edge set and weights come from the
// weighted dyad table (the base network), spells from the cleaned rows under
// the chosen mode. Dyads absent from the cleaned rows keep empty spell lists
// (they are never active). Sender/receiver values must match vertex labels.
TemporalNetwork assemble_network(const std::vector<WeightedDyad>& base,
                                 const std::vector<CleanEdgeRow>& rows,
                                 std::vector<VertexRecord> vertices,
                                 SpellMode mode = SpellMode::kDiscussionSpan);

// Full pipeline: parse both files, clean, tally, assemble. min_degree, when
// >= 0, keeps only vertices whose static degree is >= min_degree (so
// "degree more than 20" is min_degree = 21).
TemporalNetwork ingest_files(const std::string& edges_path, const std::string& nodes_path,
                             const ColumnMap& columns = {},
                             SpellMode mode = SpellMode::kDiscussionSpan, int min_degree = -1,
                             std::vector<std::string>* warnings = nullptr);

}  // namespace tempnet
