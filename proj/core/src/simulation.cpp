#include "cam/simulation.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "cam/errors.hpp"
#include "cam/parallel.hpp"
#include "cam/rng.hpp"
#include "cam/subsumption.hpp"

namespace cam {

const char* selection_strategy_name(SelectionStrategy strategy) {
    switch (strategy) {
        case SelectionStrategy::RandomAll: return "RandomAll";
        case SelectionStrategy::WithinChange: return "WithinChange";
        case SelectionStrategy::CommitRelevant: return "CommitRelevant";
        case SelectionStrategy::SubsumingCommitRelevant: return "SubsumingCommitRelevant";
    }
    return "?";
}

std::optional<SelectionStrategy> selection_strategy_from_name(const std::string& name) {
    for (SelectionStrategy strategy : all_selection_strategies())
        if (name == selection_strategy_name(strategy)) return strategy;
    return std::nullopt;
}

std::vector<SelectionStrategy> all_selection_strategies() {
    return {SelectionStrategy::RandomAll, SelectionStrategy::WithinChange,
            SelectionStrategy::CommitRelevant, SelectionStrategy::SubsumingCommitRelevant};
}

namespace {

double score(const std::vector<int>& killed, const std::vector<int>& denominator,
             const char* what) {
    if (denominator.empty()) throw EmptyDenominatorError(what);
    std::unordered_set<int> killed_set(killed.begin(), killed.end());
    std::size_t hit = 0;
    for (int id : denominator)
        if (killed_set.count(id)) ++hit;
    return 100.0 * static_cast<double>(hit) / static_cast<double>(denominator.size());
}

std::vector<int> killable_ids(const KillMatrix& kills) {
    std::vector<int> ids;
    for (int id : kills.fom_ids)
        if (kills.killable(id)) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

} // namespace

double rms(const std::vector<int>& killed, const std::vector<int>& relevant_killable) {
    return score(killed, relevant_killable, "killable commit-relevant mutants");
}

double rms_star(const std::vector<int>& killed, const std::vector<int>& subsuming_relevant) {
    return score(killed, subsuming_relevant, "subsuming commit-relevant mutants");
}

std::vector<int> strategy_pool(const KillMatrix& kills, const RelevanceReport& relevance,
                               SelectionStrategy strategy) {
    std::vector<int> pool;
    switch (strategy) {
        case SelectionStrategy::RandomAll:
            pool = killable_ids(kills);
            break;
        case SelectionStrategy::WithinChange:
            for (int id : relevance.relevant_on_change)
                if (kills.killable(id)) pool.push_back(id);
            break;
        case SelectionStrategy::CommitRelevant:
            for (int id : relevance.relevant_ids())
                if (kills.killable(id)) pool.push_back(id);
            break;
        case SelectionStrategy::SubsumingCommitRelevant:
            pool = subsuming_commit_relevant(kills, relevance);
            break;
    }
    std::sort(pool.begin(), pool.end());
    if (pool.empty()) throw EmptyPoolError(selection_strategy_name(strategy));
    return pool;
}

SimulationResult simulate(const KillMatrix& kills, const RelevanceReport& relevance,
                          const SimulationConfig& config) {
    std::vector<int> pool = strategy_pool(kills, relevance, config.strategy);

    std::vector<int> relevant_killable;
    for (int id : relevance.relevant_ids())
        if (kills.killable(id)) relevant_killable.push_back(id);
    if (relevant_killable.empty())
        throw EmptyDenominatorError("killable commit-relevant mutants");
    std::vector<int> subsuming_relevant = subsuming_commit_relevant(kills, relevance);
    if (subsuming_relevant.empty())
        throw EmptyDenominatorError("subsuming commit-relevant mutants");

    std::vector<int> full = killable_ids(kills);

    // row and killing-test lookups used by every repetition
    std::unordered_map<int, std::vector<std::size_t>> killers;
    std::unordered_map<int, const std::vector<bool>*> kill_row;
    for (int id : full) {
        killers.emplace(id, kills.killing_test_indices(id));
        kill_row.emplace(id, &kills.fom_kills[kills.fom_row(id)]);
    }

    int reps = config.repetitions;
    int picks = config.max_picks;
    SimulationResult result;
    result.strategy = config.strategy;
    result.seed = config.seed;
    result.rows.assign(static_cast<std::size_t>(reps) * picks, PickRow{});

    parallel_for(static_cast<std::size_t>(reps), config.threads, [&](std::size_t rep) {
        auto rng = make_stream_rng(config.seed, rep);
        std::vector<int> live_full = full;
        std::vector<int> live_pool = pool;
        std::vector<int> killed;
        std::uint64_t executions = 0;
        double cur_rms = 0.0;
        double cur_star = 0.0;

        for (int pick = 1; pick <= picks; ++pick) {
            if (!live_pool.empty()) {
                int mutant = live_pool[bounded(rng, live_pool.size())];
                const auto& tests = killers.at(mutant);
                std::size_t test = tests[bounded(rng, tests.size())];
                executions += live_full.size();

                std::vector<int> survivors;
                survivors.reserve(live_full.size());
                std::unordered_set<int> retired;
                for (int id : live_full) {
                    if ((*kill_row.at(id))[test]) {
                        killed.push_back(id);
                        retired.insert(id);
                    } else {
                        survivors.push_back(id);
                    }
                }
                live_full = std::move(survivors);
                live_pool.erase(std::remove_if(live_pool.begin(), live_pool.end(),
                                               [&](int id) { return retired.count(id) != 0; }),
                                live_pool.end());
                cur_rms = rms(killed, relevant_killable);
                cur_star = rms_star(killed, subsuming_relevant);
            }
            PickRow& row =
                result.rows[static_cast<std::size_t>(rep) * picks + (pick - 1)];
            row.repetition = static_cast<int>(rep);
            row.pick = pick;
            row.rms = cur_rms;
            row.rms_star = cur_star;
            row.executions = executions;
        }
    });

    for (int interval = 2; interval <= picks; interval += 2) {
        result.median_intervals.push_back(interval);
        std::vector<double> rms_at;
        std::vector<double> star_at;
        std::vector<double> exec_at;
        rms_at.reserve(reps);
        star_at.reserve(reps);
        exec_at.reserve(reps);
        for (int rep = 0; rep < reps; ++rep) {
            const PickRow& row =
                result.rows[static_cast<std::size_t>(rep) * picks + (interval - 1)];
            rms_at.push_back(row.rms);
            star_at.push_back(row.rms_star);
            exec_at.push_back(static_cast<double>(row.executions));
        }
        result.median_rms.push_back(median(std::move(rms_at)));
        result.median_rms_star.push_back(median(std::move(star_at)));
        result.median_executions.push_back(median(std::move(exec_at)));
    }
    return result;
}

std::string simulation_csv(const SimulationResult& result) {
    std::ostringstream out;
    out << "repetition,pick,rms,rms_star,executions\n";
    for (const PickRow& row : result.rows) {
        out << row.repetition << ',' << row.pick << ',' << row.rms << ',' << row.rms_star
            << ',' << row.executions << '\n';
    }
    return out.str();
}

} // namespace cam
