#include "cam/artifacts.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cam/errors.hpp"

namespace cam {

using json = nlohmann::ordered_json;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArtifactError("cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw ArtifactError("cannot read " + path);
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ArtifactError("cannot write " + path);
    out << content;
    out.flush();
    if (!out) throw ArtifactError("cannot write " + path);
}

namespace {

json parse(const std::string& text, const char* what) {
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded())
        throw ArtifactError(std::string(what) + " is not valid JSON");
    return value;
}

template <class T>
T field(const json& object, const char* key, const char* what) {
    auto it = object.find(key);
    if (it == object.end())
        throw ArtifactError(std::string(what) + " is missing field " + key);
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw ArtifactError(std::string(what) + " has a bad " + key + " field");
    }
}

json edit_to_json(const MutationEdit& edit) {
    return std::visit(
        overloaded{
            [](const ReplaceBinaryOperator& e) {
                return json{{"kind", "replace_binary_operator"},
                            {"new_op", binary_op_token(e.new_op)}};
            },
            [](const InsertUnary& e) {
                return json{{"kind", "insert_unary"}, {"op", unary_op_token(e.op)}};
            },
            [](const ReplaceWithIntConstant& e) {
                return json{{"kind", "replace_with_int_constant"}, {"value", e.value}};
            },
            [](const RemoveNegation&) { return json{{"kind", "remove_negation"}}; },
            [](const DeleteStatement&) { return json{{"kind", "delete_statement"}}; },
        },
        edit);
}

BinaryOp binary_op_from_token(const std::string& token) {
    static const BinaryOp all[] = {
        BinaryOp::Add, BinaryOp::Sub,        BinaryOp::Mul,       BinaryOp::Div,
        BinaryOp::Mod, BinaryOp::Eq,         BinaryOp::Ne,        BinaryOp::Lt,
        BinaryOp::Le,  BinaryOp::Gt,         BinaryOp::Ge,        BinaryOp::LogicalAnd,
        BinaryOp::LogicalOr, BinaryOp::BitAnd, BinaryOp::BitOr,   BinaryOp::BitXor};
    for (BinaryOp op : all)
        if (token == binary_op_token(op)) return op;
    throw ArtifactError("unknown binary operator token: " + token);
}

UnaryOp unary_op_from_token(const std::string& token) {
    static const UnaryOp all[] = {UnaryOp::Neg, UnaryOp::Not, UnaryOp::PreInc,
                                  UnaryOp::PreDec};
    for (UnaryOp op : all)
        if (token == unary_op_token(op)) return op;
    throw ArtifactError("unknown unary operator token: " + token);
}

MutationEdit edit_from_json(const json& object) {
    std::string kind = field<std::string>(object, "kind", "edit");
    if (kind == "replace_binary_operator")
        return ReplaceBinaryOperator{
            binary_op_from_token(field<std::string>(object, "new_op", "edit"))};
    if (kind == "insert_unary")
        return InsertUnary{unary_op_from_token(field<std::string>(object, "op", "edit"))};
    if (kind == "replace_with_int_constant")
        return ReplaceWithIntConstant{field<std::int64_t>(object, "value", "edit")};
    if (kind == "remove_negation") return RemoveNegation{};
    if (kind == "delete_statement") return DeleteStatement{};
    throw ArtifactError("unknown edit kind: " + kind);
}

json mutant_to_json(const Mutant& m) {
    json object;
    object["id"] = m.id;
    object["label"] = m.label();
    object["operator"] = mutation_operator_name(m.op);
    object["file"] = m.span.file;
    object["start_line"] = m.span.start_line;
    object["end_line"] = m.span.end_line;
    object["target"] = m.target;
    object["anchor"] = m.anchor;
    object["original"] = m.original;
    object["replacement"] = m.replacement;
    object["location"] = location_class_name(m.location);
    object["edit"] = edit_to_json(m.edit);
    return object;
}

Mutant mutant_from_json(const json& object) {
    Mutant m;
    m.id = field<int>(object, "id", "mutant");
    std::string op = field<std::string>(object, "operator", "mutant");
    auto parsed = mutation_operator_from_name(op);
    if (!parsed) throw ArtifactError("unknown mutation operator: " + op);
    m.op = *parsed;
    m.span.file = field<std::string>(object, "file", "mutant");
    m.span.start_line = field<int>(object, "start_line", "mutant");
    m.span.end_line = field<int>(object, "end_line", "mutant");
    m.target = field<NodeId>(object, "target", "mutant");
    m.anchor = field<NodeId>(object, "anchor", "mutant");
    m.original = field<std::string>(object, "original", "mutant");
    m.replacement = field<std::string>(object, "replacement", "mutant");
    std::string location = field<std::string>(object, "location", "mutant");
    if (location == "OnChange") m.location = LocationClass::OnChange;
    else if (location == "OutsideChange") m.location = LocationClass::OutsideChange;
    else throw ArtifactError("unknown location class: " + location);
    auto it = object.find("edit");
    if (it == object.end()) throw ArtifactError("mutant is missing field edit");
    m.edit = edit_from_json(*it);
    return m;
}

json pair_to_json(const HomPair& pair) {
    return json{{"id", pair.id}, {"label", pair.label()}, {"x", pair.x}, {"y", pair.y}};
}

HomPair pair_from_json(const json& object) {
    HomPair pair;
    pair.id = field<int>(object, "id", "pair");
    pair.x = field<int>(object, "x", "pair");
    pair.y = field<int>(object, "y", "pair");
    return pair;
}

json catalog_to_json(const std::vector<Mutant>& foms, const std::vector<HomPair>& pairs) {
    json object;
    object["mutants"] = json::array();
    for (const Mutant& m : foms) object["mutants"].push_back(mutant_to_json(m));
    object["pairs"] = json::array();
    for (const HomPair& pair : pairs) object["pairs"].push_back(pair_to_json(pair));
    return object;
}

std::string dump(const json& value) { return value.dump(2) + "\n"; }

} // namespace

std::string write_mutants_json(const std::vector<Mutant>& foms,
                               const std::vector<HomPair>& pairs) {
    return dump(catalog_to_json(foms, pairs));
}

MutantCatalog read_mutants_json(const std::string& text) {
    json object = parse(text, "mutant catalog");
    MutantCatalog catalog;
    auto mutants = field<json>(object, "mutants", "mutant catalog");
    for (const json& entry : mutants) catalog.foms.push_back(mutant_from_json(entry));
    auto pairs = field<json>(object, "pairs", "mutant catalog");
    for (const json& entry : pairs) catalog.pairs.push_back(pair_from_json(entry));
    return catalog;
}

namespace {

json cells_to_json(const std::vector<Cell>& cells) {
    json row = json::array();
    for (const Cell& cell : cells) row.push_back(cell.encode());
    return row;
}

std::vector<Cell> cells_from_json(const json& row) {
    std::vector<Cell> cells;
    for (const json& cell : row) cells.push_back(Cell::decode(cell.get<std::string>()));
    return cells;
}

json statuses_to_json(const std::vector<RunStatus>& statuses) {
    json row = json::array();
    for (RunStatus status : statuses) row.push_back(run_status_name(status));
    return row;
}

RunStatus status_from_name(const std::string& name) {
    if (name == "Pass") return RunStatus::Pass;
    if (name == "AssertionFailure") return RunStatus::AssertionFailure;
    if (name == "RuntimeError") return RunStatus::RuntimeError;
    if (name == "Timeout") return RunStatus::Timeout;
    throw ArtifactError("unknown run status: " + name);
}

json bools_to_json(const std::vector<bool>& bits) {
    json row = json::array();
    for (bool bit : bits) row.push_back(bit);
    return row;
}

std::vector<bool> bools_from_json(const json& row) {
    std::vector<bool> bits;
    for (const json& bit : row) bits.push_back(bit.get<bool>());
    return bits;
}

} // namespace

std::string write_matrix_json(const MatrixArtifact& artifact) {
    const MutantAssertionMatrix& matrix = artifact.matrix;
    const KillMatrix& kills = artifact.kills;

    json object;
    object["program_file"] = artifact.program_file;
    object["step_budget"] = artifact.step_budget;
    object["tests"] = matrix.tests;

    json columns = json::array();
    for (const AssertionSite& site : matrix.columns) {
        columns.push_back(json{{"id", site.assertion_id},
                               {"test", site.test_name},
                               {"ordinal", site.ordinal},
                               {"node", site.node}});
    }
    object["columns"] = std::move(columns);
    object["baseline"] = cells_to_json(matrix.baseline_row);

    json foms = json::array();
    for (std::size_t i = 0; i < matrix.fom_ids.size(); ++i) {
        json row;
        row["id"] = matrix.fom_ids[i];
        row["label"] = "m" + std::to_string(matrix.fom_ids[i]);
        row["cells"] = cells_to_json(matrix.fom_rows[i]);
        row["status"] = statuses_to_json(kills.fom_status[i]);
        row["kills"] = bools_to_json(kills.fom_kills[i]);
        row["covering"] = bools_to_json(matrix.fom_covering[i]);
        foms.push_back(std::move(row));
    }
    object["fom_rows"] = std::move(foms);

    json homs = json::array();
    for (std::size_t i = 0; i < matrix.hom_ids.size(); ++i) {
        json row;
        row["id"] = matrix.hom_ids[i];
        row["label"] = "h" + std::to_string(matrix.hom_ids[i]);
        row["x"] = matrix.hom_xy[i].first;
        row["y"] = matrix.hom_xy[i].second;
        row["cells"] = cells_to_json(matrix.hom_rows[i]);
        row["status"] = statuses_to_json(kills.hom_status[i]);
        row["kills"] = bools_to_json(kills.hom_kills[i]);
        row["covering"] = bools_to_json(matrix.hom_covering[i]);
        homs.push_back(std::move(row));
    }
    object["hom_rows"] = std::move(homs);
    object["catalog"] = catalog_to_json(artifact.foms, artifact.pairs);
    return dump(object);
}

MatrixArtifact read_matrix_json(const std::string& text) {
    json object = parse(text, "matrix artifact");
    MatrixArtifact artifact;
    artifact.program_file = field<std::string>(object, "program_file", "matrix artifact");
    artifact.step_budget = field<std::size_t>(object, "step_budget", "matrix artifact");

    MutantAssertionMatrix& matrix = artifact.matrix;
    KillMatrix& kills = artifact.kills;
    matrix.tests = field<std::vector<std::string>>(object, "tests", "matrix artifact");
    kills.tests = matrix.tests;

    auto columns = field<json>(object, "columns", "matrix artifact");
    for (const json& entry : columns) {
        AssertionSite site;
        site.assertion_id = field<std::string>(entry, "id", "matrix column");
        site.test_name = field<std::string>(entry, "test", "matrix column");
        site.ordinal = field<int>(entry, "ordinal", "matrix column");
        site.node = field<NodeId>(entry, "node", "matrix column");
        matrix.columns.push_back(std::move(site));
    }
    matrix.baseline_row = cells_from_json(field<json>(object, "baseline", "matrix artifact"));

    auto foms = field<json>(object, "fom_rows", "matrix artifact");
    for (const json& row : foms) {
        int id = field<int>(row, "id", "matrix row");
        matrix.fom_ids.push_back(id);
        kills.fom_ids.push_back(id);
        matrix.fom_rows.push_back(cells_from_json(field<json>(row, "cells", "matrix row")));
        matrix.fom_covering.push_back(
            bools_from_json(field<json>(row, "covering", "matrix row")));
        kills.fom_kills.push_back(bools_from_json(field<json>(row, "kills", "matrix row")));
        std::vector<RunStatus> statuses;
        for (const json& name : field<json>(row, "status", "matrix row"))
            statuses.push_back(status_from_name(name.get<std::string>()));
        kills.fom_status.push_back(std::move(statuses));
    }

    auto homs = field<json>(object, "hom_rows", "matrix artifact");
    for (const json& row : homs) {
        int id = field<int>(row, "id", "matrix row");
        matrix.hom_ids.push_back(id);
        kills.hom_ids.push_back(id);
        matrix.hom_xy.emplace_back(field<int>(row, "x", "matrix row"),
                                   field<int>(row, "y", "matrix row"));
        matrix.hom_rows.push_back(cells_from_json(field<json>(row, "cells", "matrix row")));
        matrix.hom_covering.push_back(
            bools_from_json(field<json>(row, "covering", "matrix row")));
        kills.hom_kills.push_back(bools_from_json(field<json>(row, "kills", "matrix row")));
        std::vector<RunStatus> statuses;
        for (const json& name : field<json>(row, "status", "matrix row"))
            statuses.push_back(status_from_name(name.get<std::string>()));
        kills.hom_status.push_back(std::move(statuses));
    }

    auto catalog = field<json>(object, "catalog", "matrix artifact");
    for (const json& entry : field<json>(catalog, "mutants", "matrix catalog"))
        artifact.foms.push_back(mutant_from_json(entry));
    for (const json& entry : field<json>(catalog, "pairs", "matrix catalog"))
        artifact.pairs.push_back(pair_from_json(entry));
    return artifact;
}

std::string matrix_csv(const MutantAssertionMatrix& matrix) {
    std::ostringstream out;
    out << "mutant";
    for (const AssertionSite& site : matrix.columns) out << ',' << site.assertion_id;
    out << '\n';
    out << "baseline";
    for (const Cell& cell : matrix.baseline_row) out << ',' << cell.encode();
    out << '\n';
    for (std::size_t i = 0; i < matrix.fom_ids.size(); ++i) {
        out << 'm' << matrix.fom_ids[i];
        for (const Cell& cell : matrix.fom_rows[i]) out << ',' << cell.encode();
        out << '\n';
    }
    for (std::size_t i = 0; i < matrix.hom_ids.size(); ++i) {
        out << 'h' << matrix.hom_ids[i];
        for (const Cell& cell : matrix.hom_rows[i]) out << ',' << cell.encode();
        out << '\n';
    }
    return out.str();
}

std::string write_relevance_json(const RelevanceReport& report) {
    json object;
    object["include_unkillable_on_change"] = report.include_unkillable_on_change;
    object["relevant_on_change"] = report.relevant_on_change;
    json outside = json::array();
    for (const OutsideRelevant& entry : report.relevant_outside) {
        outside.push_back(json{{"x", entry.x},
                               {"witness_y", entry.witness.y},
                               {"witness_assertion", entry.witness.assertion_id}});
    }
    object["relevant_outside"] = std::move(outside);
    object["not_relevant"] = report.not_relevant;
    object["relevant_ids"] = report.relevant_ids();
    return dump(object);
}

RelevanceReport read_relevance_json(const std::string& text) {
    json object = parse(text, "relevance report");
    RelevanceReport report;
    report.include_unkillable_on_change =
        field<bool>(object, "include_unkillable_on_change", "relevance report");
    report.relevant_on_change =
        field<std::vector<int>>(object, "relevant_on_change", "relevance report");
    for (const json& entry : field<json>(object, "relevant_outside", "relevance report")) {
        OutsideRelevant outside;
        outside.x = field<int>(entry, "x", "relevance entry");
        outside.witness.y = field<int>(entry, "witness_y", "relevance entry");
        outside.witness.assertion_id =
            field<std::string>(entry, "witness_assertion", "relevance entry");
        report.relevant_outside.push_back(std::move(outside));
    }
    report.not_relevant = field<std::vector<int>>(object, "not_relevant", "relevance report");
    return report;
}

namespace {

json subsumption_to_json(const SubsumptionResult& result) {
    json object;
    object["universe"] = result.universe;
    object["equivalent"] = result.equivalent;
    json classes = json::array();
    for (const SubsumeClass& cls : result.classes) {
        classes.push_back(
            json{{"mutants", cls.mutants}, {"killing_tests", cls.killing_tests}});
    }
    object["classes"] = std::move(classes);
    json hasse = json::array();
    for (const auto& [a, b] : result.hasse) hasse.push_back(json::array({a, b}));
    object["hasse"] = std::move(hasse);
    object["subsuming_mutants"] = result.subsuming_mutants;
    return object;
}

SubsumptionResult subsumption_from_json(const json& object, const char* what) {
    SubsumptionResult result;
    result.universe = field<std::vector<int>>(object, "universe", what);
    result.equivalent = field<std::vector<int>>(object, "equivalent", what);
    for (const json& entry : field<json>(object, "classes", what)) {
        SubsumeClass cls;
        cls.mutants = field<std::vector<int>>(entry, "mutants", what);
        cls.killing_tests = field<std::vector<std::string>>(entry, "killing_tests", what);
        result.classes.push_back(std::move(cls));
    }
    for (const json& entry : field<json>(object, "hasse", what)) {
        if (!entry.is_array() || entry.size() != 2)
            throw ArtifactError(std::string(what) + " has a bad hasse edge");
        result.hasse.emplace_back(entry[0].get<std::size_t>(), entry[1].get<std::size_t>());
    }
    result.subsuming_mutants = field<std::vector<int>>(object, "subsuming_mutants", what);
    return result;
}

} // namespace

std::string write_subsume_json(const SubsumeArtifact& artifact) {
    json object;
    object["all_killable"] = subsumption_to_json(artifact.all_killable);
    object["commit_relevant"] = subsumption_to_json(artifact.commit_relevant);
    return dump(object);
}

SubsumeArtifact read_subsume_json(const std::string& text) {
    json object = parse(text, "subsumption artifact");
    SubsumeArtifact artifact;
    artifact.all_killable = subsumption_from_json(
        field<json>(object, "all_killable", "subsumption artifact"), "subsumption result");
    artifact.commit_relevant = subsumption_from_json(
        field<json>(object, "commit_relevant", "subsumption artifact"), "subsumption result");
    return artifact;
}

std::string write_summary_json(const RunSummary& summary) {
    json object;
    object["program_file"] = summary.program_file;
    object["tests"] = summary.tests;
    object["hunks"] = summary.hunks;
    object["changed_lines"] = summary.changed_lines;
    object["mutants_total"] = summary.mutants_total;
    object["mutants_on_change"] = summary.mutants_on_change;
    object["mutants_outside"] = summary.mutants_outside;
    object["mutants_killable"] = summary.mutants_killable;
    object["mutants_equivalent"] = summary.mutants_equivalent;
    object["hom_pairs"] = summary.hom_pairs;
    object["relevant_total"] = summary.relevant_total;
    object["relevant_on_change"] = summary.relevant_on_change;
    object["relevant_outside"] = summary.relevant_outside;
    object["subsuming"] = summary.subsuming;
    object["subsuming_commit_relevant"] = summary.subsuming_commit_relevant;
    object["relevant_over_all"] =
        summary.relevant_over_all ? json(*summary.relevant_over_all) : json(nullptr);
    object["on_change_share_of_relevant"] = summary.on_change_share_of_relevant
                                                ? json(*summary.on_change_share_of_relevant)
                                                : json(nullptr);
    object["subsuming_relevant_over_relevant"] =
        summary.subsuming_relevant_over_relevant
            ? json(*summary.subsuming_relevant_over_relevant)
            : json(nullptr);
    object["seed"] = summary.seed;
    object["step_budget"] = summary.step_budget;
    object["operators"] = summary.operators;
    object["hom_cap"] = summary.hom_cap ? json(*summary.hom_cap) : json(nullptr);
    object["include_unkillable_on_change"] = summary.include_unkillable_on_change;
    object["generated_at"] = summary.generated_at;
    return dump(object);
}

RunSummary read_summary_json(const std::string& text) {
    json object = parse(text, "run summary");
    RunSummary summary;
    const char* what = "run summary";
    summary.program_file = field<std::string>(object, "program_file", what);
    summary.tests = field<int>(object, "tests", what);
    summary.hunks = field<int>(object, "hunks", what);
    summary.changed_lines = field<int>(object, "changed_lines", what);
    summary.mutants_total = field<int>(object, "mutants_total", what);
    summary.mutants_on_change = field<int>(object, "mutants_on_change", what);
    summary.mutants_outside = field<int>(object, "mutants_outside", what);
    summary.mutants_killable = field<int>(object, "mutants_killable", what);
    summary.mutants_equivalent = field<int>(object, "mutants_equivalent", what);
    summary.hom_pairs = field<int>(object, "hom_pairs", what);
    summary.relevant_total = field<int>(object, "relevant_total", what);
    summary.relevant_on_change = field<int>(object, "relevant_on_change", what);
    summary.relevant_outside = field<int>(object, "relevant_outside", what);
    summary.subsuming = field<int>(object, "subsuming", what);
    summary.subsuming_commit_relevant = field<int>(object, "subsuming_commit_relevant", what);
    auto read_ratio = [&](const char* key) -> std::optional<double> {
        auto it = object.find(key);
        if (it == object.end() || it->is_null()) return std::nullopt;
        return it->get<double>();
    };
    summary.relevant_over_all = read_ratio("relevant_over_all");
    summary.on_change_share_of_relevant = read_ratio("on_change_share_of_relevant");
    summary.subsuming_relevant_over_relevant = read_ratio("subsuming_relevant_over_relevant");
    summary.seed = field<std::uint64_t>(object, "seed", what);
    summary.step_budget = field<std::size_t>(object, "step_budget", what);
    summary.operators = field<std::vector<std::string>>(object, "operators", what);
    auto cap = object.find("hom_cap");
    if (cap != object.end() && !cap->is_null()) summary.hom_cap = cap->get<std::size_t>();
    summary.include_unkillable_on_change =
        field<bool>(object, "include_unkillable_on_change", what);
    auto generated = object.find("generated_at");
    if (generated != object.end() && generated->is_string())
        summary.generated_at = generated->get<std::string>();
    return summary;
}

namespace {

json correlation_to_json(const Correlation& correlation) {
    return json{{"coefficient", correlation.coefficient},
                {"p_value", correlation.p_value},
                {"n", correlation.n}};
}

} // namespace

std::string write_correlations_json(const std::vector<CorrelationRow>& rows) {
    json array = json::array();
    for (const CorrelationRow& row : rows) {
        array.push_back(json{{"label", row.label},
                             {"spearman", correlation_to_json(row.spearman)},
                             {"kendall", correlation_to_json(row.kendall)}});
    }
    json object;
    object["correlations"] = std::move(array);
    return dump(object);
}

std::string write_simulation_medians_json(const SimulationResult& result) {
    json object;
    object["strategy"] = selection_strategy_name(result.strategy);
    object["seed"] = result.seed;
    json intervals = json::array();
    for (std::size_t i = 0; i < result.median_intervals.size(); ++i) {
        intervals.push_back(json{{"picks", result.median_intervals[i]},
                                 {"median_rms", result.median_rms[i]},
                                 {"median_rms_star", result.median_rms_star[i]},
                                 {"median_executions", result.median_executions[i]}});
    }
    object["intervals"] = std::move(intervals);
    return dump(object);
}

} // namespace cam
