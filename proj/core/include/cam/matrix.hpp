#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "cam/interpreter.hpp"
#include "cam/mutation.hpp"
#include "cam/value.hpp"

namespace cam {

enum class CellKind { Value, Exceptional, NotReached };

/// One matrix cell: what an assertion observed under one program variant.
/// Value cells carry both operand values even when the assertion failed;
/// Exceptional cells name the error that fired while the assertion itself
/// was evaluating; NotReached covers assertions execution never arrived at.
struct Cell {
    CellKind kind = CellKind::NotReached;
    Value expected;
    Value actual;
    std::string exception;

    bool is_value() const { return kind == CellKind::Value; }

    /// "V:<expected>|<actual>", "E:<kind>" or "N".
    std::string encode() const;
    static Cell decode(const std::string& text);

    friend bool operator==(const Cell&, const Cell&) = default;
};

/// Assertion-level matrix over the baseline program, every first-order
/// mutant, and every paired higher-order mutant.
struct MutantAssertionMatrix {
    std::vector<std::string> tests;                      // suite order
    std::vector<AssertionSite> columns;                  // test order, then ordinal
    std::vector<Cell> baseline_row;
    std::vector<std::vector<Cell>> fom_rows;             // catalog order
    std::vector<std::vector<Cell>> hom_rows;             // pair order
    std::vector<int> fom_ids;                            // Mutant::id per fom row
    std::vector<std::pair<int, int>> hom_xy;             // (x, y) per hom row
    std::vector<int> hom_ids;                            // HomPair::id per hom row

    // Tests whose run on the mutant reached the mutated code.
    std::vector<std::vector<bool>> fom_covering;         // fom row x test
    std::vector<std::vector<bool>> hom_covering;         // hom row x test

    std::size_t column_index(const std::string& assertion_id) const;  // UnknownAssertionError
    std::size_t fom_row(int mutant_id) const;                         // UnknownMutantError
    std::size_t hom_row(int x, int y) const;                          // MissingHomRowError
    const Cell& fom_cell(int mutant_id, const std::string& assertion_id) const;
    const Cell& hom_cell(int x, int y, const std::string& assertion_id) const;
};

/// Pass/fail outcomes folded to kill bits: a test kills a mutant when its
/// outcome on the mutant is AssertionFailure, RuntimeError or Timeout.
struct KillMatrix {
    std::vector<std::string> tests;
    std::vector<int> fom_ids;
    std::vector<std::vector<bool>> fom_kills;          // fom row x test
    std::vector<std::vector<RunStatus>> fom_status;    // fom row x test
    std::vector<int> hom_ids;
    std::vector<std::vector<bool>> hom_kills;
    std::vector<std::vector<RunStatus>> hom_status;

    std::size_t fom_row(int mutant_id) const;  // UnknownMutantError
    bool killable(int mutant_id) const;
    std::vector<std::string> killing_tests(int mutant_id) const;
    std::vector<std::size_t> killing_test_indices(int mutant_id) const;
    /// Mutants with an empty kill set, ascending by id.
    std::vector<int> equivalent_mutants() const;
};

struct MatrixBundle {
    MutantAssertionMatrix matrix;
    KillMatrix kills;
};

struct ExecOptions {
    std::size_t step_budget = 100000;
    /// Worker threads; 0 means use the CAM_THREADS environment variable or,
    /// failing that, the hardware count. Results do not depend on it.
    int threads = 0;
};

/// Runs every test against the baseline, every first-order mutant and every
/// paired higher-order mutant. Throws RedSuiteError (listing the failing
/// tests) when the baseline is not green. The baseline row always holds
/// passing Value cells.
MatrixBundle build_matrices(const ProgramUnit& subject, const ProgramUnit& tests,
                            const std::vector<Mutant>& foms, const std::vector<HomPair>& pairs,
                            const ExecOptions& options = {});

/// Tests whose execution on the mutant reaches the mutated code. Accepts
/// first-order labels ("m3") and higher-order labels ("h2").
std::vector<std::string> covering_tests(const MutantAssertionMatrix& matrix,
                                        const std::string& mutant_label);

} // namespace cam
