#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mallows/core.hpp"
#include "mallows/stats.hpp"

// Ranking files:
//
//   # comment
//   alt <id> <name...>
//   [k:] id,id,...,id
//
// ids are positive integers, names run to the end of the line, k is an
// optional positive multiplicity. All alt lines come before the first
// ranking. A ranking may omit declared alternatives; it is then kept and
// flagged incomplete.
namespace mallows::ingest {

struct ParsedRanking {
    std::vector<AltId> order; // dense indices into ParsedProfile::alternatives
    std::size_t line = 0;
    bool incomplete = false;
};

struct ParsedProfile {
    std::string source;
    std::vector<Alternative> alternatives; // sorted by external id
    std::vector<ParsedRanking> rankings;   // multiplicities expanded

    bool complete() const;
    // Throws DomainError if any ranking is incomplete.
    Profile to_profile() const;
};

// Throws ParseError (with 1-based line number) on malformed input, a repeated
// id in a ranking, an unknown id, or a file without rankings.
ParsedProfile parse_profile(std::istream& in, const std::string& source = "<stream>");
ParsedProfile parse_profile(const std::filesystem::path& path);

// Canonical form: sorted alt lines, one line per ranking, no comments.
void write_profile(std::ostream& out, const Profile& profile);
void write_profile(const std::filesystem::path& path, const Profile& profile);

// Keeps the alternatives present in every ranking. Throws DomainError if no
// alternative is common to all rankings.
Profile complete_by_intersection(const ParsedProfile& parsed);

// Sorted matches of a shell glob pattern. Throws IoError if nothing matches.
std::vector<std::filesystem::path> expand_glob(const std::string& pattern);

enum class LabelFrom { filename, dir };
std::string label_for(const std::filesystem::path& path, LabelFrom from);

struct ScatterPoint {
    std::string path;
    std::string label;
    std::size_t m = 0;
    std::size_t n = 0;
    double distance = 0.0;
};

// One point per file: parse, complete, positionwise distance from ID.
std::vector<ScatterPoint> dataset_scatter(const std::vector<std::filesystem::path>& paths,
                                          const std::vector<std::string>& labels, unsigned threads = 1);

void write_scatter_csv(std::ostream& out, const std::vector<ScatterPoint>& points);
std::string scatter_svg(const std::vector<ScatterPoint>& points);

struct GroupSpec {
    std::string label;
    std::vector<std::filesystem::path> files;
};

// {"groups": [{"label": "...", "files": ["glob", ...]}, ...]}; relative
// patterns are resolved against the manifest's directory.
std::vector<GroupSpec> load_group_manifest(const std::filesystem::path& manifest);

struct GroupRow {
    std::string label;
    stats::GroupStatistics statistics;
};

// group_statistics over each group's completed profiles. Throws DomainError
// for an empty group.
std::vector<GroupRow> group_report(const std::vector<GroupSpec>& groups, unsigned threads = 1);

// property,<label>,... with one row per statistic.
void write_group_report_csv(std::ostream& out, const std::vector<GroupRow>& rows);

} // namespace mallows::ingest
