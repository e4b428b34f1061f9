#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cam/ast.hpp"
#include "cam/value.hpp"

namespace cam {

enum class RunStatus { Pass, AssertionFailure, RuntimeError, Timeout };

enum class ErrorKind {
    None,
    DivisionByZero,
    IndexOutOfBounds,
    TypeError,
    UndefinedVariable,
    Redeclaration,
    UnknownFunction,
    ArityMismatch,
    RecursionLimit,
    MissingReturn,
};

const char* run_status_name(RunStatus status);
const char* error_kind_name(ErrorKind kind);

/// A static assertion location inside a test function. Ordinals are 1-based
/// in source order; the id is "<test name>#<ordinal>".
struct AssertionSite {
    std::string test_name;
    int ordinal = 0;
    std::string assertion_id;
    NodeId node = k_no_node;
};

/// One executed assertion: the values both operands evaluated to, whether
/// they compared equal.
struct AssertionRecord {
    std::string assertion_id;
    Value expected;
    Value actual;
    bool passed = false;
};

struct RunOptions {
    /// Evaluation budget; one step is charged per AST node evaluated.
    std::size_t step_budget = 100000;
};

/// Everything one test execution produced.
struct TestOutcome {
    std::string test_name;
    RunStatus status = RunStatus::Pass;
    ErrorKind error = ErrorKind::None;
    std::string message;
    /// Records in execution order; a prefix of the test's assertion sites.
    std::vector<AssertionRecord> assertions;
    /// When the run died while evaluating an assertion's operands, the id of
    /// that assertion and the failure it hit ("DivisionByZero", "Timeout", ...).
    std::optional<std::pair<std::string, std::string>> faulted_assertion;
    /// covered[id] is true when the node began evaluating at least once.
    /// Sized by the combined node count of subject and tests.
    std::vector<bool> covered;
    std::size_t steps_used = 0;

    bool covered_node(NodeId id) const {
        return id >= 0 && static_cast<std::size_t>(id) < covered.size() && covered[id];
    }
};

/// Names of the test functions in `tests`, in source order.
std::vector<std::string> list_tests(const ProgramUnit& tests);

/// The static assertion sites of one test, in source order.
std::vector<AssertionSite> assertion_sites(const ProgramUnit& tests,
                                           const std::string& test_name);

/// Runs one test function against a subject program. Functions of the test
/// unit and the subject share one namespace; a name collision raises
/// DuplicateFunctionError. The subject's nodes keep their ids in the
/// coverage vector; test nodes are offset by the subject's node count.
///
/// Execution is deterministic: the same inputs produce the same outcome,
/// records, coverage and step count.
TestOutcome run_test(const ProgramUnit& subject, const ProgramUnit& tests,
                     const std::string& test_name, const RunOptions& options = {});

/// Outcome of evaluating a single call, used by fixture tooling to compute
/// expected values.
struct CallResult {
    RunStatus status = RunStatus::Pass;
    ErrorKind error = ErrorKind::None;
    Value value;   // meaningful when status == Pass
};

CallResult eval_call(const ProgramUnit& subject, const std::string& function,
                     const std::vector<Value>& args, const RunOptions& options = {});

} // namespace cam
