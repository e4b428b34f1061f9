#pragma once

#include <string>

#include "cam/ast.hpp"

namespace cam {

/// Parses a program or test file. `file` is recorded in every span and in
/// the returned unit; it is how diffs are matched to code later on.
///
/// Throws SyntaxError with a line and column on any lexical or grammatical
/// problem, and DuplicateFunctionError when two functions share a name.
/// Node ids are assigned in pre-order before returning, so parsing the same
/// text twice yields identical ids.
ProgramUnit parse_program(const std::string& source, const std::string& file);

/// Checks the rules for a mutation subject: no assertions anywhere.
/// Throws SyntaxError on violation.
void validate_subject(const ProgramUnit& program);

/// Checks the rules for a test file: test functions (name starts with
/// "test_") take no parameters, contain no return statements, and keep all
/// assertions directly in the function body; helper functions contain no
/// assertions at all. Throws SyntaxError on violation.
void validate_tests(const ProgramUnit& tests);

inline bool is_test_function(const std::string& name) {
    return name.rfind("test_", 0) == 0;
}

} // namespace cam
