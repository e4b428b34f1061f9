#pragma once

#include <cstddef>
#include <vector>

#include "cam/mutation.hpp"
#include "cam/parser.hpp"
#include "cam/relevance.hpp"

namespace cam::testing {

/// Recomputes the relevance report the slow way: every variant is applied,
/// printed back to source, reparsed and run test by test, and the
/// interaction condition is evaluated straight off the recorded assertion
/// values. Shares no code with the matrix pipeline beyond the interpreter,
/// so agreement is meaningful.
RelevanceReport brute_force_relevance(const ProgramUnit& subject, const ProgramUnit& tests,
                                      const std::vector<Mutant>& foms,
                                      const std::vector<HomPair>& pairs,
                                      const RelevanceOptions& options = {},
                                      std::size_t step_budget = 100000);

} // namespace cam::testing
