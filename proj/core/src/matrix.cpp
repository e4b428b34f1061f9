#include "cam/matrix.hpp"

#include <algorithm>
#include <utility>

#include "cam/errors.hpp"
#include "cam/parallel.hpp"

namespace cam {

std::string Cell::encode() const {
    switch (kind) {
        case CellKind::Value: return "V:" + expected.to_string() + "|" + actual.to_string();
        case CellKind::Exceptional: return "E:" + exception;
        case CellKind::NotReached: return "N";
    }
    return "N";
}

namespace {

Value decode_value(const std::string& text) {
    if (text == "true") return Value::boolean(true);
    if (text == "false") return Value::boolean(false);
    if (!text.empty() && text.front() == '[') {
        if (text.back() != ']') throw ArtifactError("bad array literal in cell: " + text);
        std::vector<std::int64_t> elems;
        std::size_t pos = 1;
        while (pos < text.size() - 1) {
            std::size_t end = text.find(',', pos);
            if (end == std::string::npos || end > text.size() - 1)
                end = text.size() - 1;
            std::string item = text.substr(pos, end - pos);
            while (!item.empty() && item.front() == ' ') item.erase(item.begin());
            while (!item.empty() && item.back() == ' ') item.pop_back();
            if (item.empty()) throw ArtifactError("bad array literal in cell: " + text);
            elems.push_back(std::stoll(item));
            pos = end + 1;
        }
        return Value::array(std::move(elems));
    }
    return Value::integer(std::stoll(text));
}

} // namespace

Cell Cell::decode(const std::string& text) {
    Cell cell;
    if (text == "N") {
        cell.kind = CellKind::NotReached;
        return cell;
    }
    if (text.rfind("E:", 0) == 0) {
        cell.kind = CellKind::Exceptional;
        cell.exception = text.substr(2);
        return cell;
    }
    if (text.rfind("V:", 0) == 0) {
        std::string body = text.substr(2);
        // arrays contain no '|', so the first one separates the operands
        std::size_t sep = body.find('|');
        if (sep == std::string::npos) throw ArtifactError("bad value cell: " + text);
        cell.kind = CellKind::Value;
        cell.expected = decode_value(body.substr(0, sep));
        cell.actual = decode_value(body.substr(sep + 1));
        return cell;
    }
    throw ArtifactError("bad cell encoding: " + text);
}

std::size_t MutantAssertionMatrix::column_index(const std::string& assertion_id) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i].assertion_id == assertion_id) return i;
    throw UnknownAssertionError(assertion_id);
}

std::size_t MutantAssertionMatrix::fom_row(int mutant_id) const {
    for (std::size_t i = 0; i < fom_ids.size(); ++i)
        if (fom_ids[i] == mutant_id) return i;
    throw UnknownMutantError("m" + std::to_string(mutant_id));
}

std::size_t MutantAssertionMatrix::hom_row(int x, int y) const {
    for (std::size_t i = 0; i < hom_xy.size(); ++i)
        if (hom_xy[i].first == x && hom_xy[i].second == y) return i;
    throw MissingHomRowError("m" + std::to_string(x) + "+m" + std::to_string(y));
}

const Cell& MutantAssertionMatrix::fom_cell(int mutant_id,
                                            const std::string& assertion_id) const {
    return fom_rows[fom_row(mutant_id)][column_index(assertion_id)];
}

const Cell& MutantAssertionMatrix::hom_cell(int x, int y,
                                            const std::string& assertion_id) const {
    return hom_rows[hom_row(x, y)][column_index(assertion_id)];
}

std::size_t KillMatrix::fom_row(int mutant_id) const {
    for (std::size_t i = 0; i < fom_ids.size(); ++i)
        if (fom_ids[i] == mutant_id) return i;
    throw UnknownMutantError("m" + std::to_string(mutant_id));
}

bool KillMatrix::killable(int mutant_id) const {
    const auto& kills = fom_kills[fom_row(mutant_id)];
    return std::find(kills.begin(), kills.end(), true) != kills.end();
}

std::vector<std::string> KillMatrix::killing_tests(int mutant_id) const {
    std::vector<std::string> names;
    for (std::size_t index : killing_test_indices(mutant_id)) names.push_back(tests[index]);
    return names;
}

std::vector<std::size_t> KillMatrix::killing_test_indices(int mutant_id) const {
    const auto& kills = fom_kills[fom_row(mutant_id)];
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < kills.size(); ++i)
        if (kills[i]) indices.push_back(i);
    return indices;
}

std::vector<int> KillMatrix::equivalent_mutants() const {
    std::vector<int> ids;
    for (std::size_t row = 0; row < fom_ids.size(); ++row) {
        const auto& kills = fom_kills[row];
        if (std::find(kills.begin(), kills.end(), true) == kills.end())
            ids.push_back(fom_ids[row]);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

namespace {

struct ColumnLayout {
    std::vector<AssertionSite> columns;
    std::vector<std::size_t> test_offset;   // first column of each test
    std::vector<std::size_t> test_arity;    // assertion count of each test
};

ColumnLayout layout_columns(const ProgramUnit& tests, const std::vector<std::string>& names) {
    ColumnLayout layout;
    for (const auto& name : names) {
        layout.test_offset.push_back(layout.columns.size());
        auto sites = assertion_sites(tests, name);
        layout.test_arity.push_back(sites.size());
        for (auto& site : sites) layout.columns.push_back(std::move(site));
    }
    return layout;
}

struct VariantRow {
    std::vector<Cell> cells;
    std::vector<bool> kills;
    std::vector<RunStatus> status;
    std::vector<bool> covering;
};

// Runs the whole suite against one program variant and folds the outcomes
// into matrix cells, kill bits and coverage of the given anchor nodes.
VariantRow run_variant(const ProgramUnit& variant, const ProgramUnit& tests,
                       const std::vector<std::string>& names, const ColumnLayout& layout,
                       const std::vector<NodeId>& anchors, const RunOptions& run_options) {
    VariantRow row;
    row.cells.assign(layout.columns.size(), Cell{});
    row.kills.reserve(names.size());
    row.status.reserve(names.size());
    row.covering.reserve(names.size());
    for (std::size_t t = 0; t < names.size(); ++t) {
        TestOutcome outcome = run_test(variant, tests, names[t], run_options);
        std::size_t offset = layout.test_offset[t];
        for (std::size_t i = 0; i < outcome.assertions.size(); ++i) {
            const AssertionRecord& record = outcome.assertions[i];
            Cell& cell = row.cells[offset + i];
            cell.kind = CellKind::Value;
            cell.expected = record.expected;
            cell.actual = record.actual;
        }
        if (outcome.faulted_assertion) {
            std::size_t next = outcome.assertions.size();
            if (next < layout.test_arity[t]) {
                Cell& cell = row.cells[offset + next];
                cell.kind = CellKind::Exceptional;
                cell.exception = outcome.faulted_assertion->second;
            }
        }
        row.kills.push_back(outcome.status != RunStatus::Pass);
        row.status.push_back(outcome.status);
        bool covered = false;
        for (NodeId anchor : anchors) covered = covered || outcome.covered_node(anchor);
        row.covering.push_back(covered);
    }
    return row;
}

} // namespace

MatrixBundle build_matrices(const ProgramUnit& subject, const ProgramUnit& tests,
                            const std::vector<Mutant>& foms, const std::vector<HomPair>& pairs,
                            const ExecOptions& options) {
    RunOptions run_options;
    run_options.step_budget = options.step_budget;

    std::vector<std::string> names = list_tests(tests);
    ColumnLayout layout = layout_columns(tests, names);

    // baseline first; a red suite stops everything
    VariantRow baseline = run_variant(subject, tests, names, layout, {}, run_options);
    std::vector<std::string> failing;
    for (std::size_t t = 0; t < names.size(); ++t)
        if (baseline.status[t] != RunStatus::Pass) failing.push_back(names[t]);
    if (!failing.empty()) throw RedSuiteError(std::move(failing));

    std::unordered_map<int, const Mutant*> by_id;
    for (const Mutant& m : foms) by_id.emplace(m.id, &m);
    auto mutant_by_id = [&](int id) -> const Mutant& {
        auto it = by_id.find(id);
        if (it == by_id.end()) throw UnknownMutantError("m" + std::to_string(id));
        return *it->second;
    };

    std::vector<VariantRow> fom_slots(foms.size());
    std::vector<VariantRow> hom_slots(pairs.size());
    parallel_for(foms.size() + pairs.size(), options.threads, [&](std::size_t index) {
        if (index < foms.size()) {
            const Mutant& m = foms[index];
            ProgramUnit variant = apply_mutant(subject, m);
            fom_slots[index] =
                run_variant(variant, tests, names, layout, {m.anchor}, run_options);
        } else {
            const HomPair& pair = pairs[index - foms.size()];
            const Mutant& x = mutant_by_id(pair.x);
            const Mutant& y = mutant_by_id(pair.y);
            ProgramUnit variant = apply_hom(subject, x, y);
            hom_slots[index - foms.size()] =
                run_variant(variant, tests, names, layout, {x.anchor, y.anchor}, run_options);
        }
    });

    MatrixBundle bundle;
    MutantAssertionMatrix& matrix = bundle.matrix;
    KillMatrix& kills = bundle.kills;

    matrix.tests = names;
    matrix.columns = std::move(layout.columns);
    matrix.baseline_row = std::move(baseline.cells);
    kills.tests = names;

    for (std::size_t i = 0; i < foms.size(); ++i) {
        matrix.fom_ids.push_back(foms[i].id);
        matrix.fom_rows.push_back(std::move(fom_slots[i].cells));
        matrix.fom_covering.push_back(std::move(fom_slots[i].covering));
        kills.fom_ids.push_back(foms[i].id);
        kills.fom_kills.push_back(std::move(fom_slots[i].kills));
        kills.fom_status.push_back(std::move(fom_slots[i].status));
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        matrix.hom_ids.push_back(pairs[i].id);
        matrix.hom_xy.emplace_back(pairs[i].x, pairs[i].y);
        matrix.hom_rows.push_back(std::move(hom_slots[i].cells));
        matrix.hom_covering.push_back(std::move(hom_slots[i].covering));
        kills.hom_ids.push_back(pairs[i].id);
        kills.hom_kills.push_back(std::move(hom_slots[i].kills));
        kills.hom_status.push_back(std::move(hom_slots[i].status));
    }
    return bundle;
}

std::vector<std::string> covering_tests(const MutantAssertionMatrix& matrix,
                                        const std::string& mutant_label) {
    if (mutant_label.empty() || (mutant_label[0] != 'm' && mutant_label[0] != 'h'))
        throw UnknownMutantError(mutant_label);
    int id = 0;
    try {
        id = std::stoi(mutant_label.substr(1));
    } catch (const std::exception&) {
        throw UnknownMutantError(mutant_label);
    }

    const std::vector<bool>* covering = nullptr;
    if (mutant_label[0] == 'm') {
        covering = &matrix.fom_covering[matrix.fom_row(id)];
    } else {
        for (std::size_t i = 0; i < matrix.hom_ids.size(); ++i)
            if (matrix.hom_ids[i] == id) covering = &matrix.hom_covering[i];
        if (!covering) throw UnknownMutantError(mutant_label);
    }
    std::vector<std::string> names;
    for (std::size_t t = 0; t < matrix.tests.size(); ++t)
        if ((*covering)[t]) names.push_back(matrix.tests[t]);
    return names;
}

} // namespace cam
