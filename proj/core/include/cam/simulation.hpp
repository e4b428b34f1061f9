#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cam/matrix.hpp"
#include "cam/relevance.hpp"

namespace cam {

enum class SelectionStrategy { RandomAll, WithinChange, CommitRelevant, SubsumingCommitRelevant };

const char* selection_strategy_name(SelectionStrategy strategy);
std::optional<SelectionStrategy> selection_strategy_from_name(const std::string& name);
std::vector<SelectionStrategy> all_selection_strategies();

/// Relevant mutant score: percentage of killable commit-relevant mutants the
/// killed set contains. Throws EmptyDenominatorError when there are none.
double rms(const std::vector<int>& killed, const std::vector<int>& relevant_killable);

/// Same score against the subsuming commit-relevant mutants.
double rms_star(const std::vector<int>& killed, const std::vector<int>& subsuming_relevant);

struct SimulationConfig {
    SelectionStrategy strategy = SelectionStrategy::RandomAll;
    std::uint64_t seed = 0;
    int repetitions = 100;
    int max_picks = 20;
    int threads = 0;  // as ExecOptions::threads
};

/// One emitted row: state after `pick` picks of one repetition.
struct PickRow {
    int repetition = 0;       // 0-based
    int pick = 0;             // 1-based
    double rms = 0.0;
    double rms_star = 0.0;
    std::uint64_t executions = 0;  // cumulative test executions
};

struct SimulationResult {
    SelectionStrategy strategy = SelectionStrategy::RandomAll;
    std::uint64_t seed = 0;
    std::vector<PickRow> rows;            // repetition-major, picks 1..max_picks
    std::vector<int> median_intervals;    // 2, 4, ..., <= max_picks
    std::vector<double> median_rms;       // per interval, across repetitions
    std::vector<double> median_rms_star;
    std::vector<double> median_executions;
};

/// Test-selection walk. Per repetition (driven by a sub-generator derived
/// from seed and repetition index, so results do not depend on threading):
/// pick a live mutant uniformly from the strategy pool, pick one of its
/// killing tests uniformly, charge one execution per mutant still live in
/// the whole killable pool, then retire every live mutant that test kills.
/// Once the pool is exhausted picks stop, scores hold and executions stay.
///
/// Pools draw on killable mutants only: every killable one for RandomAll,
/// the report's on-change mutants for WithinChange, all relevant mutants for
/// CommitRelevant, and the subsuming subset of those for
/// SubsumingCommitRelevant. Throws EmptyPoolError when the pool is empty and
/// EmptyDenominatorError when no relevant killable mutant exists.
SimulationResult simulate(const KillMatrix& kills, const RelevanceReport& relevance,
                          const SimulationConfig& config);

/// The strategy's initial pool, ascending by mutant id. Same errors as
/// simulate for an empty pool.
std::vector<int> strategy_pool(const KillMatrix& kills, const RelevanceReport& relevance,
                               SelectionStrategy strategy);

std::string simulation_csv(const SimulationResult& result);

} // namespace cam
