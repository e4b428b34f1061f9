#include "cam/relevance.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace cam {

bool RelevanceReport::is_relevant(int mutant_id) const {
    if (std::find(relevant_on_change.begin(), relevant_on_change.end(), mutant_id) !=
        relevant_on_change.end())
        return true;
    for (const auto& entry : relevant_outside)
        if (entry.x == mutant_id) return true;
    return false;
}

std::vector<int> RelevanceReport::relevant_ids() const {
    std::vector<int> ids = relevant_on_change;
    for (const auto& entry : relevant_outside) ids.push_back(entry.x);
    std::sort(ids.begin(), ids.end());
    return ids;
}

namespace {

bool witness_holds(const Cell& x_cell, const Cell& y_cell, const Cell& xy_cell) {
    if (!x_cell.is_value() || !y_cell.is_value() || !xy_cell.is_value()) return false;
    return !(xy_cell.actual == y_cell.actual) && !(xy_cell.actual == x_cell.actual);
}

} // namespace

RelevanceReport detect_relevant(const MutantAssertionMatrix& matrix, const KillMatrix& kills,
                                const std::vector<Mutant>& foms,
                                const std::vector<HomPair>& pairs,
                                const RelevanceOptions& options) {
    RelevanceReport report;
    report.include_unkillable_on_change = options.include_unkillable_on_change;

    for (const Mutant& m : foms) {
        if (m.location != LocationClass::OnChange) continue;
        if (options.include_unkillable_on_change || kills.killable(m.id))
            report.relevant_on_change.push_back(m.id);
    }

    std::unordered_map<int, OutsideRelevant> found;
    for (const HomPair& pair : pairs) {
        if (!options.exhaustive && found.count(pair.x)) continue;
        const auto& x_row = matrix.fom_rows[matrix.fom_row(pair.x)];
        const auto& y_row = matrix.fom_rows[matrix.fom_row(pair.y)];
        const auto& xy_row = matrix.hom_rows[matrix.hom_row(pair.x, pair.y)];
        for (std::size_t col = 0; col < matrix.columns.size(); ++col) {
            if (!witness_holds(x_row[col], y_row[col], xy_row[col])) continue;
            if (!found.count(pair.x)) {
                OutsideRelevant entry;
                entry.x = pair.x;
                entry.witness = Witness{pair.y, matrix.columns[col].assertion_id};
                found.emplace(pair.x, std::move(entry));
            }
            if (!options.exhaustive) break;
        }
    }

    std::unordered_set<int> relevant(report.relevant_on_change.begin(),
                                     report.relevant_on_change.end());
    for (const Mutant& m : foms) {
        auto it = found.find(m.id);
        if (it == found.end()) continue;
        report.relevant_outside.push_back(it->second);
        relevant.insert(m.id);
    }
    for (const Mutant& m : foms)
        if (!relevant.count(m.id)) report.not_relevant.push_back(m.id);
    return report;
}

bool check_witness(const MutantAssertionMatrix& matrix, int x, int y,
                   const std::string& assertion_id) {
    std::size_t col = matrix.column_index(assertion_id);
    const Cell& x_cell = matrix.fom_rows[matrix.fom_row(x)][col];
    const Cell& y_cell = matrix.fom_rows[matrix.fom_row(y)][col];
    const Cell& xy_cell = matrix.hom_rows[matrix.hom_row(x, y)][col];
    return witness_holds(x_cell, y_cell, xy_cell);
}

} // namespace cam
