#pragma once

#include <set>
#include <string>
#include <vector>

#include "cam/source.hpp"

namespace cam {

/// One `@@` hunk. Starts and lengths mirror the header; changed_lines holds
/// the post-image lines introduced by '+' body lines, so a pure deletion has
/// an empty set.
struct Hunk {
    int old_start = 0;
    int old_len = 0;
    int new_start = 0;
    int new_len = 0;
    std::vector<int> changed_lines;  // ascending
};

struct FileDiff {
    std::string path;  // post-image path, "a/"/"b/" prefixes stripped
    std::vector<Hunk> hunks;
};

struct CommitDiff {
    std::vector<FileDiff> files;

    int hunk_count() const;
    bool empty() const { return hunk_count() == 0; }
    bool mentions(const std::string& file) const;
    bool line_changed(const std::string& file, int line) const;
    std::set<int> changed_lines(const std::string& file) const;
    int changed_line_count() const;
};

/// Parses unified diff text (git or plain). Accepts zero-context hunks and
/// "\ No newline at end of file" markers; ignores git header noise. Throws
/// MalformedDiffError when a hunk header is unparseable or body line counts
/// do not match the header. Empty input yields an empty diff.
CommitDiff parse_unified_diff(const std::string& text);

/// Re-emits the header of a hunk, "@@ -a,b +c,d @@".
std::string hunk_header(const Hunk& hunk);

enum class LocationClass { OnChange, OutsideChange };

const char* location_class_name(LocationClass loc);

/// A span is on the change when its start line is one of the changed
/// post-image lines of its file. Spans in files the diff does not mention
/// (including the empty diff) are outside the change.
LocationClass classify(const Span& span, const CommitDiff& diff);

} // namespace cam
