#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cam/diff.hpp"
#include "cam/mutation.hpp"
#include "cam/parser.hpp"

namespace cam::testing {

// Files under tests/data.
std::string data_path(const std::string& name);
std::string read_data(const std::string& name);

ProgramUnit load_subject(const std::string& name);
ProgramUnit load_tests(const std::string& name);
CommitDiff load_diff(const std::string& name);

// Pre-order collection over the typed AST.
std::vector<const Expr*> collect_exprs(const ProgramUnit& program,
                                       const std::function<bool(const Expr&)>& pred);
std::vector<const Stmt*> collect_stmts(const ProgramUnit& program,
                                       const std::function<bool(const Stmt&)>& pred);
const Expr* first_expr(const ProgramUnit& program,
                       const std::function<bool(const Expr&)>& pred);
const Stmt* first_stmt(const ProgramUnit& program,
                       const std::function<bool(const Stmt&)>& pred);

// Hand-built constant replacement (the catalog generator only rewrites
// literal constants; fixtures also pin variables and whole expressions).
Mutant constant_mutant(int id, const Expr& target, std::int64_t value,
                       const CommitDiff& diff);

/// The buffered-reader worked example: the post-commit subject, its two
/// tests, the one-line diff, and the four catalog mutants
///   m1: `i == 0`  ->  `i != 0`        (line 142, on the change)
///   m2: loop bound `len` -> `0`        (line 139)
///   m3: loop counter read `i` -> `++i` (line 139)
///   m4: delete `c = read1(...);`       (line 140)
/// paired as (m2,m1), (m3,m1), (m4,m1).
struct ReaderFixture {
    ProgramUnit subject;
    ProgramUnit tests;
    CommitDiff diff;
    std::vector<Mutant> foms;
    std::vector<HomPair> pairs;
};
ReaderFixture reader_fixture();

/// One of three two-mutant scenarios over a sort-and-combine function,
/// exercised by a single test. Mutant 1 sits outside the change, mutant 2
/// on it; the pair is (1, 2).
struct ScenarioFixture {
    ProgramUnit subject;
    ProgramUnit tests;
    CommitDiff diff;
    std::vector<Mutant> foms;
    std::vector<HomPair> pairs;
};

/// The mutants interact: combined behaviour differs from both (values
/// observed at the assertion: outside 0, on-change 1, combined -1).
ScenarioFixture interacting_scenario();
/// The combined mutant behaves exactly like the on-change one.
ScenarioFixture shadowed_scenario();
/// The two mutants sit on branches no single run takes together.
ScenarioFixture unreachable_scenario();

/// A randomly generated subject + green test suite + one-line diff, with
/// the full catalog over an operator subset chosen to keep the catalog at
/// or under `max_foms`.
struct GeneratedFixture {
    std::string subject_text;
    std::string tests_text;
    std::string diff_text;
    ProgramUnit subject;
    ProgramUnit tests;
    CommitDiff diff;
    std::vector<Mutant> foms;
    std::vector<HomPair> pairs;
};
GeneratedFixture make_random_fixture(std::uint64_t seed, std::size_t max_foms = 50,
                                     int max_tests = 10);

} // namespace cam::testing
