#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cam/matrix.hpp"

namespace cam {

/// Proof that an outside-change mutant interacts with the change: the
/// on-change partner and the assertion where the pair's higher-order mutant
/// disagreed with both constituents.
struct Witness {
    int y = 0;                 // on-change Mutant::id
    std::string assertion_id;

    friend bool operator==(const Witness&, const Witness&) = default;
};

struct OutsideRelevant {
    int x = 0;                 // outside-change Mutant::id
    Witness witness;

    friend bool operator==(const OutsideRelevant&, const OutsideRelevant&) = default;
};

struct RelevanceReport {
    /// On-change mutants that made it in (killable ones, or all of them when
    /// include_unkillable_on_change was set). Catalog order.
    std::vector<int> relevant_on_change;
    /// Outside-change mutants with an interaction witness, catalog order;
    /// the witness is the first one found in deterministic scan order.
    std::vector<OutsideRelevant> relevant_outside;
    /// Everything else, catalog order.
    std::vector<int> not_relevant;
    bool include_unkillable_on_change = false;

    bool is_relevant(int mutant_id) const;
    std::vector<int> relevant_ids() const;  // ascending

    friend bool operator==(const RelevanceReport&, const RelevanceReport&) = default;
};

struct RelevanceOptions {
    /// Definition 1 wants on-change mutants to be killable; setting this
    /// admits every on-change mutant regardless.
    bool include_unkillable_on_change = false;
    /// Scan every pair and assertion even after a witness is found (the
    /// result must not change; used to cross-check the early exit).
    bool exhaustive = false;
};

/// Marks commit-relevant mutants. An outside-change mutant X is relevant
/// when some paired on-change mutant Y and some assertion show the combined
/// mutant XY disagreeing with both X and Y on the actual value; only
/// assertions that produced plain values in all three runs are consulted.
/// Scan order: pairs as given (grouped by X), tests in suite order,
/// assertions in ordinal order; the first hit wins and later pairs for the
/// same X are skipped.
RelevanceReport detect_relevant(const MutantAssertionMatrix& matrix, const KillMatrix& kills,
                                const std::vector<Mutant>& foms,
                                const std::vector<HomPair>& pairs,
                                const RelevanceOptions& options = {});

/// Re-checks the relevance condition for one (x, y) pair at one assertion.
/// Throws UnknownAssertionError / MissingHomRowError for bad coordinates.
bool check_witness(const MutantAssertionMatrix& matrix, int x, int y,
                   const std::string& assertion_id);

} // namespace cam
