#include "cam/diff.hpp"

#include <cctype>
#include <sstream>

#include "cam/errors.hpp"

namespace cam {

namespace {

// Diff paths are repo-relative while programs are often loaded through
// longer (or absolute) paths; treat the two as the same file when one ends
// with the other at a path component boundary.
bool paths_match(const std::string& a, const std::string& b) {
    if (a == b) return true;
    auto tail = [](const std::string& longer, const std::string& shorter) {
        return longer.size() > shorter.size() &&
               longer.compare(longer.size() - shorter.size(), shorter.size(), shorter) == 0 &&
               longer[longer.size() - shorter.size() - 1] == '/';
    };
    return tail(a, b) || tail(b, a);
}

} // namespace

int CommitDiff::hunk_count() const {
    int count = 0;
    for (const auto& file : files) count += static_cast<int>(file.hunks.size());
    return count;
}

bool CommitDiff::mentions(const std::string& file) const {
    for (const auto& entry : files)
        if (paths_match(entry.path, file)) return true;
    return false;
}

bool CommitDiff::line_changed(const std::string& file, int line) const {
    for (const auto& entry : files) {
        if (!paths_match(entry.path, file)) continue;
        for (const auto& hunk : entry.hunks)
            for (int changed : hunk.changed_lines)
                if (changed == line) return true;
    }
    return false;
}

std::set<int> CommitDiff::changed_lines(const std::string& file) const {
    std::set<int> lines;
    for (const auto& entry : files) {
        if (!paths_match(entry.path, file)) continue;
        for (const auto& hunk : entry.hunks)
            lines.insert(hunk.changed_lines.begin(), hunk.changed_lines.end());
    }
    return lines;
}

int CommitDiff::changed_line_count() const {
    int count = 0;
    for (const auto& entry : files) {
        std::set<int> lines;
        for (const auto& hunk : entry.hunks)
            lines.insert(hunk.changed_lines.begin(), hunk.changed_lines.end());
        count += static_cast<int>(lines.size());
    }
    return count;
}

namespace {

std::string strip_prefix(const std::string& path) {
    if (path.size() >= 2 && (path[0] == 'a' || path[0] == 'b') && path[1] == '/')
        return path.substr(2);
    return path;
}

// Target path from a "+++ " line: drops the marker, a trailing tab section,
// and the b/ prefix. "+++ /dev/null" keeps the null path as-is.
std::string parse_target_path(const std::string& line) {
    std::string path = line.substr(4);
    auto tab = path.find('\t');
    if (tab != std::string::npos) path = path.substr(0, tab);
    return strip_prefix(path);
}

bool starts_with(const std::string& text, const char* prefix) {
    return text.rfind(prefix, 0) == 0;
}

// "-a[,b]" or "+a[,b]"; width defaults to 1 when ",b" is absent.
bool parse_range(const std::string& text, std::size_t& pos, char marker, int& start,
                 int& len) {
    if (pos >= text.size() || text[pos] != marker) return false;
    ++pos;
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
        return false;
    long value = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + (text[pos] - '0');
        if (value > 1000000000L) return false;
        ++pos;
    }
    start = static_cast<int>(value);
    len = 1;
    if (pos < text.size() && text[pos] == ',') {
        ++pos;
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            return false;
        value = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            value = value * 10 + (text[pos] - '0');
            if (value > 1000000000L) return false;
            ++pos;
        }
        len = static_cast<int>(value);
    }
    return true;
}

bool parse_hunk_header(const std::string& line, Hunk& hunk) {
    if (!starts_with(line, "@@ ")) return false;
    std::size_t pos = 3;
    if (!parse_range(line, pos, '-', hunk.old_start, hunk.old_len)) return false;
    if (pos >= line.size() || line[pos] != ' ') return false;
    ++pos;
    if (!parse_range(line, pos, '+', hunk.new_start, hunk.new_len)) return false;
    return starts_with(line.substr(pos), " @@");
}

} // namespace

CommitDiff parse_unified_diff(const std::string& text) {
    CommitDiff diff;
    std::istringstream in(text);
    std::string line;

    FileDiff* current_file = nullptr;
    Hunk* current_hunk = nullptr;
    int old_remaining = 0;
    int new_remaining = 0;
    int new_line = 0;
    int line_no = 0;

    auto finish_hunk = [&]() {
        if (current_hunk && (old_remaining != 0 || new_remaining != 0))
            throw MalformedDiffError("hunk body shorter than its header at line " +
                                     std::to_string(line_no));
        current_hunk = nullptr;
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        if (starts_with(line, "+++ ")) {
            finish_hunk();
            diff.files.push_back(FileDiff{parse_target_path(line), {}});
            current_file = &diff.files.back();
            continue;
        }
        if (starts_with(line, "@@ ")) {
            finish_hunk();
            Hunk hunk;
            if (!parse_hunk_header(line, hunk))
                throw MalformedDiffError("bad hunk header at line " +
                                         std::to_string(line_no) + ": " + line);
            if (!current_file)
                throw MalformedDiffError("hunk before any file header at line " +
                                         std::to_string(line_no));
            current_file->hunks.push_back(hunk);
            current_hunk = &current_file->hunks.back();
            old_remaining = hunk.old_len;
            new_remaining = hunk.new_len;
            new_line = hunk.new_start;
            continue;
        }
        if (current_hunk) {
            if (starts_with(line, "\\")) continue;  // "\ No newline at end of file"
            if (old_remaining == 0 && new_remaining == 0) {
                current_hunk = nullptr;
                // falls through to header noise handling
            } else if (starts_with(line, "+")) {
                if (new_remaining == 0)
                    throw MalformedDiffError("hunk body longer than its header at line " +
                                             std::to_string(line_no));
                current_hunk->changed_lines.push_back(new_line);
                ++new_line;
                --new_remaining;
                continue;
            } else if (starts_with(line, "-")) {
                if (old_remaining == 0)
                    throw MalformedDiffError("hunk body longer than its header at line " +
                                             std::to_string(line_no));
                --old_remaining;
                continue;
            } else if (line.empty() || line[0] == ' ') {
                if (old_remaining == 0 || new_remaining == 0)
                    throw MalformedDiffError("hunk body longer than its header at line " +
                                             std::to_string(line_no));
                --old_remaining;
                --new_remaining;
                ++new_line;
                continue;
            } else {
                throw MalformedDiffError("unexpected line inside hunk at line " +
                                         std::to_string(line_no) + ": " + line);
            }
        }
        // anything else (diff --git, index, ---, mode lines) is header noise
    }
    finish_hunk();
    return diff;
}

std::string hunk_header(const Hunk& hunk) {
    std::ostringstream out;
    out << "@@ -" << hunk.old_start << ',' << hunk.old_len << " +" << hunk.new_start << ','
        << hunk.new_len << " @@";
    return out.str();
}

const char* location_class_name(LocationClass loc) {
    return loc == LocationClass::OnChange ? "OnChange" : "OutsideChange";
}

LocationClass classify(const Span& span, const CommitDiff& diff) {
    return diff.line_changed(span.file, span.start_line) ? LocationClass::OnChange
                                                         : LocationClass::OutsideChange;
}

} // namespace cam
