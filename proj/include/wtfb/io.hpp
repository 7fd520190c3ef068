#pragma once

#include <map>
#include <string>
#include <vector>

#include "wtfb/binary_bounds.hpp"

namespace wtfb::io {

// Locale-independent decimal formatting; CSV and JSON payloads carry at least
// 15 significant digits so re-parsing is exact at double precision.
std::string fmt(double v);
std::string fmt17(double v);

// Provenance block attached to every output artifact. The timestamp honors
// SOURCE_DATE_EPOCH so repeated runs can be byte-identical.
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::uint64_t seed = 0;
    std::string tool_version;
    std::string timestamp; // UTC ISO-8601

    static RunManifest make(std::string command, std::map<std::string, std::string> parameters,
                            std::uint64_t seed);
    std::string to_json() const;
    std::vector<std::string> comment_lines() const; // "# key: value" block
};

extern const char* const kToolVersion;

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header_comments;
};

std::string render_csv(const CsvTable& table);
void write_file(const std::string& path, const std::string& contents);

// Sweep serialization: one row per p2 with the gamma order documented in the
// header comments.
CsvTable sweep_to_csv(double p1, const std::vector<SweepRow>& rows, const RunManifest& manifest);

// Static comparison plot of the four bound curves, one polyline each.
std::string sweep_to_svg(double p1, const std::vector<SweepRow>& rows, const RunManifest& manifest);

} // namespace wtfb::io
