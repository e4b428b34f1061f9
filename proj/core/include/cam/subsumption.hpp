#pragma once

#include <string>
#include <vector>

#include "cam/matrix.hpp"
#include "cam/relevance.hpp"

namespace cam {

/// Mutants with identical (non-empty) kill sets, indistinguishable by the
/// test suite.
struct SubsumeClass {
    std::vector<int> mutants;               // ascending Mutant::id
    std::vector<std::string> killing_tests; // suite order
};

struct SubsumptionResult {
    /// The killable mutants the analysis ran over, ascending.
    std::vector<int> universe;
    /// Mutants from the universe with empty kill sets, ascending; excluded
    /// from the classes.
    std::vector<int> equivalent;
    /// Disjoint classes ordered by smallest member id.
    std::vector<SubsumeClass> classes;
    /// Cover edges of the subsumption order between class indices:
    /// (a, b) when class a subsumes class b directly.
    std::vector<std::pair<std::size_t, std::size_t>> hasse;
    /// Members of the minimal classes: the mutants subsumed only by their
    /// indistinguishable peers. Ascending.
    std::vector<int> subsuming_mutants;

    bool subsumes(std::size_t class_a, std::size_t class_b) const;
};

/// Dynamic subsumption over the given universe of mutant ids: class A
/// subsumes class B when every test killing A also kills B. Equivalent
/// mutants take no part in the order.
SubsumptionResult subsumption(const KillMatrix& kills, const std::vector<int>& universe);

/// Subsuming mutants of the killable commit-relevant universe.
std::vector<int> subsuming_commit_relevant(const KillMatrix& kills,
                                           const RelevanceReport& relevance);

} // namespace cam
