#include "cam/subsumption.hpp"

#include <algorithm>

namespace cam {

namespace {

bool subset(const std::vector<bool>& a, const std::vector<bool>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && !b[i]) return false;
    return true;
}

} // namespace

bool SubsumptionResult::subsumes(std::size_t class_a, std::size_t class_b) const {
    // class kill sets are recoverable from killing_tests, but membership is
    // what callers compare; recompute via test name sets
    const auto& a = classes[class_a].killing_tests;
    const auto& b = classes[class_b].killing_tests;
    for (const auto& test : a)
        if (std::find(b.begin(), b.end(), test) == b.end()) return false;
    return true;
}

SubsumptionResult subsumption(const KillMatrix& kills, const std::vector<int>& universe) {
    SubsumptionResult result;

    std::vector<int> ids = universe;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    std::vector<int> killable_ids;
    for (int id : ids) {
        if (kills.killable(id))
            killable_ids.push_back(id);
        else
            result.equivalent.push_back(id);
    }
    result.universe = killable_ids;

    // group by identical kill rows; ids are ascending so the first member of
    // a class is its smallest and classes form in smallest-member order
    std::vector<std::vector<bool>> class_kills;
    for (int id : killable_ids) {
        const auto& row = kills.fom_kills[kills.fom_row(id)];
        bool placed = false;
        for (std::size_t c = 0; c < result.classes.size(); ++c) {
            if (class_kills[c] == row) {
                result.classes[c].mutants.push_back(id);
                placed = true;
                break;
            }
        }
        if (!placed) {
            SubsumeClass cls;
            cls.mutants.push_back(id);
            for (std::size_t t = 0; t < row.size(); ++t)
                if (row[t]) cls.killing_tests.push_back(kills.tests[t]);
            result.classes.push_back(std::move(cls));
            class_kills.push_back(row);
        }
    }

    std::size_t n = result.classes.size();
    std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (a != b) below[a][b] = subset(class_kills[a], class_kills[b]);

    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (!below[a][b]) continue;
            bool direct = true;
            for (std::size_t c = 0; c < n && direct; ++c)
                if (c != a && c != b && below[a][c] && below[c][b]) direct = false;
            if (direct) result.hasse.emplace_back(a, b);
        }
    }

    for (std::size_t b = 0; b < n; ++b) {
        bool minimal = true;
        for (std::size_t a = 0; a < n && minimal; ++a)
            if (below[a][b]) minimal = false;
        if (minimal)
            result.subsuming_mutants.insert(result.subsuming_mutants.end(),
                                            result.classes[b].mutants.begin(),
                                            result.classes[b].mutants.end());
    }
    std::sort(result.subsuming_mutants.begin(), result.subsuming_mutants.end());
    return result;
}

std::vector<int> subsuming_commit_relevant(const KillMatrix& kills,
                                           const RelevanceReport& relevance) {
    return subsumption(kills, relevance.relevant_ids()).subsuming_mutants;
}

} // namespace cam
