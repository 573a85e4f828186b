#pragma once

#include <rejsched/core/types.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace rejsched {

/// Line-oriented job trace.
///
///     # comment
///     m=2 epsilon=1/4 speedup=0 seed=7
///     1 0 3/2 4,-
///     2 3 1 2,5
///
/// The header is the first non-blank, non-comment line; `m` and `epsilon`
/// are required, `speedup` and `seed` default to 0. Each job line is
/// `id release weight sizes`, sizes comma-separated with '-' for a machine
/// that cannot run the job. No validation beyond syntax happens here.
struct TraceFile {
    Instance instance;
    std::uint64_t seed = 0;

    friend bool operator==(const TraceFile&, const TraceFile&) = default;
};

/// Throws MissingHeader or MalformedLine (with the line number).
[[nodiscard]] TraceFile parse_trace(std::istream& in);
/// Also IOFailure when the file cannot be opened.
[[nodiscard]] TraceFile parse_trace(const std::filesystem::path& path);

void serialize_trace(const TraceFile& file, std::ostream& out);
/// Throws IOFailure.
void serialize_trace(const TraceFile& file, const std::filesystem::path& path);

[[nodiscard]] std::string serialize_trace(const TraceFile& file);

}  // namespace rejsched
