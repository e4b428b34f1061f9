#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cam/matrix.hpp"
#include "cam/mutation.hpp"
#include "cam/relevance.hpp"
#include "cam/simulation.hpp"
#include "cam/stats.hpp"
#include "cam/subsumption.hpp"

namespace cam {

// Serialized artifact formats. Everything is deterministic: serializing the
// same data twice yields identical bytes (the run summary's timestamp is the
// one deliberate exception, and callers may pin it).

std::string read_text_file(const std::string& path);              // ArtifactError
void write_text_file(const std::string& path, const std::string& content);

/// mutants.json: the catalog (id, operator, file, line, snippets, location,
/// target/anchor nodes, edit) plus the higher-order pairs.
std::string write_mutants_json(const std::vector<Mutant>& foms,
                               const std::vector<HomPair>& pairs);
struct MutantCatalog {
    std::vector<Mutant> foms;
    std::vector<HomPair> pairs;
};
MutantCatalog read_mutants_json(const std::string& text);  // ArtifactError

/// matrix.json: assertion columns, encoded cells for the baseline and every
/// mutant row, per-test outcomes, covering tests, and the catalog the rows
/// were built from.
struct MatrixArtifact {
    MutantAssertionMatrix matrix;
    KillMatrix kills;
    std::vector<Mutant> foms;
    std::vector<HomPair> pairs;
    std::string program_file;
    std::size_t step_budget = 0;
};
std::string write_matrix_json(const MatrixArtifact& artifact);
MatrixArtifact read_matrix_json(const std::string& text);

/// The assertion matrix alone as CSV: a header row of assertion ids, then
/// one row per mutant with encoded cells.
std::string matrix_csv(const MutantAssertionMatrix& matrix);

std::string write_relevance_json(const RelevanceReport& report);
RelevanceReport read_relevance_json(const std::string& text);

/// subsume.json: the subsumption analysis over all killable mutants and over
/// the killable commit-relevant ones.
struct SubsumeArtifact {
    SubsumptionResult all_killable;
    SubsumptionResult commit_relevant;
};
std::string write_subsume_json(const SubsumeArtifact& artifact);
SubsumeArtifact read_subsume_json(const std::string& text);

/// summary.json: the counts and ratios one run produced.
struct RunSummary {
    std::string program_file;
    int tests = 0;
    int hunks = 0;
    int changed_lines = 0;
    int mutants_total = 0;
    int mutants_on_change = 0;
    int mutants_outside = 0;
    int mutants_killable = 0;
    int mutants_equivalent = 0;
    int hom_pairs = 0;
    int relevant_total = 0;
    int relevant_on_change = 0;
    int relevant_outside = 0;
    int subsuming = 0;
    int subsuming_commit_relevant = 0;
    std::optional<double> relevant_over_all;
    std::optional<double> on_change_share_of_relevant;
    std::optional<double> subsuming_relevant_over_relevant;
    // configuration echo
    std::uint64_t seed = 0;
    std::size_t step_budget = 0;
    std::vector<std::string> operators;
    std::optional<std::size_t> hom_cap;
    bool include_unkillable_on_change = false;
    std::string generated_at;  // RFC 3339; excluded from artifact comparison
};
std::string write_summary_json(const RunSummary& summary);
RunSummary read_summary_json(const std::string& text);

/// correlations.json for `cam correlate`.
struct CorrelationRow {
    std::string label;   // e.g. "on_change_mutants_vs_relevant"
    Correlation spearman;
    Correlation kendall;
};
std::string write_correlations_json(const std::vector<CorrelationRow>& rows);

std::string write_simulation_medians_json(const SimulationResult& result);

} // namespace cam
