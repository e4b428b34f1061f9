#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cam {

/// Base class for every error raised by the toolkit.
struct Error : std::runtime_error {
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Lexical or grammatical error in a program or test file.
struct SyntaxError : Error {
    SyntaxError(const std::string& file, int line, int column, const std::string& message)
        : Error(file + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          file(file), line(line), column(column), detail(message) {}

    std::string file;
    int line = 0;
    int column = 0;
    std::string detail;
};

/// Two top-level functions share a name.
struct DuplicateFunctionError : Error {
    explicit DuplicateFunctionError(const std::string& name)
        : Error("duplicate function: " + name), name(name) {}
    std::string name;
};

/// A unified diff could not be parsed.
struct MalformedDiffError : Error {
    explicit MalformedDiffError(const std::string& message)
        : Error("malformed diff: " + message) {}
};

/// A mutant references a node that is absent from the program it is applied to.
struct StaleMutantError : Error {
    explicit StaleMutantError(const std::string& message)
        : Error("stale mutant: " + message) {}
};

/// The two edits of a higher-order mutant target the same or nested nodes.
struct ConflictingTargetsError : Error {
    explicit ConflictingTargetsError(const std::string& message)
        : Error("conflicting mutant targets: " + message) {}
};

/// The test suite does not pass on the unmutated program.
struct RedSuiteError : Error {
    explicit RedSuiteError(std::vector<std::string> failing)
        : Error(format(failing)), failing_tests(std::move(failing)) {}

    std::vector<std::string> failing_tests;

  private:
    static std::string format(const std::vector<std::string>& failing) {
        std::string msg = "test suite fails on the unmutated program:";
        for (const auto& name : failing) msg += " " + name;
        return msg;
    }
};

/// Lookup of a mutant id that has no row in the matrix.
struct UnknownMutantError : Error {
    explicit UnknownMutantError(const std::string& id)
        : Error("unknown mutant: " + id) {}
};

/// Lookup of an assertion id that has no column in the matrix.
struct UnknownAssertionError : Error {
    explicit UnknownAssertionError(const std::string& id)
        : Error("unknown assertion: " + id) {}
};

/// A mutant pair has no corresponding higher-order row in the matrix.
struct MissingHomRowError : Error {
    explicit MissingHomRowError(const std::string& id)
        : Error("missing higher-order mutant row: " + id) {}
};

/// A ratio whose denominator set is empty.
struct EmptyDenominatorError : Error {
    explicit EmptyDenominatorError(const std::string& what)
        : Error("empty denominator: " + what) {}
};

/// A simulation was asked to draw from an empty mutant pool.
struct EmptyPoolError : Error {
    explicit EmptyPoolError(const std::string& strategy)
        : Error("empty mutant pool for strategy: " + strategy) {}
};

/// Paired samples of unequal length.
struct LengthMismatchError : Error {
    LengthMismatchError(std::size_t a, std::size_t b)
        : Error("sample length mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

/// Too few observations for a statistic.
struct TooFewSamplesError : Error {
    explicit TooFewSamplesError(std::size_t n)
        : Error("too few samples: " + std::to_string(n)) {}
};

/// Artifact file that cannot be read or does not match the expected shape.
struct ArtifactError : Error {
    explicit ArtifactError(const std::string& message)
        : Error("bad artifact: " + message) {}
};

} // namespace cam
