// cam: commit-aware mutation analysis over MiniLang programs.
//
// Subcommands wire the pipeline stages together and persist each stage as a
// JSON artifact, so any stage can be re-run from the previous one's output.

#include <cstdint>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cam/artifacts.hpp"
#include "cam/diff.hpp"
#include "cam/errors.hpp"
#include "cam/interpreter.hpp"
#include "cam/matrix.hpp"
#include "cam/mutation.hpp"
#include "cam/parser.hpp"
#include "cam/relevance.hpp"
#include "cam/simulation.hpp"
#include "cam/stats.hpp"
#include "cam/subsumption.hpp"

namespace {

using namespace cam;

std::string lower(std::string text) {
    for (char& c : text) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return text;
}

// Accepts the canonical names case-insensitively plus the short form
// "invneg" for InvertNegs.
MutationOperator operator_from_cli(const std::string& name) {
    std::string folded = lower(name);
    if (folded == "invneg") return MutationOperator::InvertNegs;
    for (MutationOperator op : all_mutation_operators())
        if (folded == lower(mutation_operator_name(op))) return op;
    throw Error("unknown mutation operator: " + name);
}

std::vector<MutationOperator> parse_operator_list(const std::string& csv) {
    std::vector<MutationOperator> ops;
    std::stringstream stream(csv);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        ops.push_back(operator_from_cli(item));
    }
    return ops;
}

std::string now_rfc3339() {
    std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buffer;
}

ProgramUnit load_subject(const std::string& path) {
    ProgramUnit unit = parse_program(read_text_file(path), path);
    validate_subject(unit);
    return unit;
}

ProgramUnit load_tests(const std::string& path) {
    ProgramUnit unit = parse_program(read_text_file(path), path);
    validate_tests(unit);
    return unit;
}

CommitDiff load_diff(const std::string& path) {
    if (path.empty()) return CommitDiff{};
    return parse_unified_diff(read_text_file(path));
}

// Options shared by every command that generates mutants.
struct GenFlags {
    std::string operators;
    std::uint64_t seed = 0;
    std::optional<std::size_t> hom_cap;

    MutgenOptions to_options() const {
        MutgenOptions options;
        options.operators = parse_operator_list(operators);
        options.hom_cap = hom_cap;
        options.seed = seed;
        return options;
    }
};

void add_gen_flags(CLI::App* cmd, GenFlags& flags) {
    cmd->add_option("--operators", flags.operators,
                    "Comma-separated operator families "
                    "(ror,aor,uoi,crcr,obbn,invneg,sdl); default all");
    cmd->add_option("--seed", flags.seed, "Seed for pair sampling")->capture_default_str();
    cmd->add_option("--hom-cap", flags.hom_cap,
                    "At most this many outside-change mutants paired per statement "
                    "(uniform sample when exceeded)");
}

struct PipelineOutput {
    MutantCatalog catalog;
    MatrixBundle bundle;
    RelevanceReport relevance;
    SubsumeArtifact subsume;
};

PipelineOutput run_pipeline(const ProgramUnit& subject, const ProgramUnit& tests,
                            const CommitDiff& diff, const MutgenOptions& gen,
                            const ExecOptions& exec, const RelevanceOptions& rel) {
    PipelineOutput out;
    out.catalog.foms = generate_foms(subject, diff, gen);
    out.catalog.pairs = pair_homs(subject, out.catalog.foms, gen);
    out.bundle = build_matrices(subject, tests, out.catalog.foms, out.catalog.pairs, exec);
    out.relevance = detect_relevant(out.bundle.matrix, out.bundle.kills, out.catalog.foms,
                                    out.catalog.pairs, rel);
    std::vector<int> everyone;
    for (const Mutant& m : out.catalog.foms) everyone.push_back(m.id);
    out.subsume.all_killable = subsumption(out.bundle.kills, everyone);
    out.subsume.commit_relevant =
        subsumption(out.bundle.kills, out.relevance.relevant_ids());
    return out;
}

RunSummary summarize(const std::string& program_path, const ProgramUnit& tests,
                     const CommitDiff& diff, const PipelineOutput& out,
                     const MutgenOptions& gen, const ExecOptions& exec,
                     const RelevanceOptions& rel) {
    RunSummary s;
    s.program_file = program_path;
    s.tests = static_cast<int>(list_tests(tests).size());
    s.hunks = diff.hunk_count();
    s.changed_lines = diff.changed_line_count();
    s.mutants_total = static_cast<int>(out.catalog.foms.size());
    for (const Mutant& m : out.catalog.foms)
        if (m.location == LocationClass::OnChange) ++s.mutants_on_change;
    s.mutants_outside = s.mutants_total - s.mutants_on_change;
    s.mutants_equivalent = static_cast<int>(out.bundle.kills.equivalent_mutants().size());
    s.mutants_killable = s.mutants_total - s.mutants_equivalent;
    s.hom_pairs = static_cast<int>(out.catalog.pairs.size());
    s.relevant_on_change = static_cast<int>(out.relevance.relevant_on_change.size());
    s.relevant_outside = static_cast<int>(out.relevance.relevant_outside.size());
    s.relevant_total = s.relevant_on_change + s.relevant_outside;
    s.subsuming = static_cast<int>(out.subsume.all_killable.subsuming_mutants.size());
    s.subsuming_commit_relevant =
        static_cast<int>(out.subsume.commit_relevant.subsuming_mutants.size());
    if (s.mutants_total > 0)
        s.relevant_over_all = static_cast<double>(s.relevant_total) / s.mutants_total;
    if (s.relevant_total > 0) {
        s.on_change_share_of_relevant =
            static_cast<double>(s.relevant_on_change) / s.relevant_total;
        s.subsuming_relevant_over_relevant =
            static_cast<double>(s.subsuming_commit_relevant) / s.relevant_total;
    }
    s.seed = gen.seed;
    s.step_budget = exec.step_budget;
    std::vector<MutationOperator> ops =
        gen.operators.empty() ? all_mutation_operators() : gen.operators;
    for (MutationOperator op : ops) s.operators.push_back(mutation_operator_name(op));
    s.hom_cap = gen.hom_cap;
    s.include_unkillable_on_change = rel.include_unkillable_on_change;
    s.generated_at = now_rfc3339();
    return s;
}

int cmd_run(const std::string& program_path, const std::string& tests_path,
            const std::string& diff_path, const std::string& out_dir, const GenFlags& flags,
            std::size_t step_budget, bool include_unkillable) {
    ProgramUnit subject = load_subject(program_path);
    ProgramUnit tests = load_tests(tests_path);
    CommitDiff diff = load_diff(diff_path);
    MutgenOptions gen = flags.to_options();
    ExecOptions exec;
    exec.step_budget = step_budget;
    RelevanceOptions rel;
    rel.include_unkillable_on_change = include_unkillable;

    PipelineOutput out = run_pipeline(subject, tests, diff, gen, exec, rel);

    std::filesystem::create_directories(out_dir);
    auto at = [&](const char* name) { return (std::filesystem::path(out_dir) / name).string(); };
    write_text_file(at("mutants.json"), write_mutants_json(out.catalog.foms, out.catalog.pairs));
    MatrixArtifact matrix_artifact{out.bundle.matrix, out.bundle.kills, out.catalog.foms,
                                   out.catalog.pairs, program_path, exec.step_budget};
    write_text_file(at("matrix.json"), write_matrix_json(matrix_artifact));
    write_text_file(at("matrix.csv"), matrix_csv(out.bundle.matrix));
    write_text_file(at("relevance.json"), write_relevance_json(out.relevance));
    write_text_file(at("subsume.json"), write_subsume_json(out.subsume));
    RunSummary summary = summarize(program_path, tests, diff, out, gen, exec, rel);
    write_text_file(at("summary.json"), write_summary_json(summary));

    std::cout << "mutants: " << summary.mutants_total << " (" << summary.mutants_on_change
              << " on change), pairs: " << summary.hom_pairs
              << ", relevant: " << summary.relevant_total << " (" << summary.relevant_on_change
              << " on change, " << summary.relevant_outside
              << " outside), subsuming relevant: " << summary.subsuming_commit_relevant << "\n";
    std::cout << "artifacts written to " << out_dir << "\n";
    return 0;
}

int cmd_mutants(const std::string& program_path, const std::string& diff_path,
                const std::string& out_path, const GenFlags& flags) {
    ProgramUnit subject = load_subject(program_path);
    CommitDiff diff = load_diff(diff_path);
    MutgenOptions gen = flags.to_options();
    std::vector<Mutant> foms = generate_foms(subject, diff, gen);
    std::vector<HomPair> pairs = pair_homs(subject, foms, gen);
    write_text_file(out_path, write_mutants_json(foms, pairs));
    int on_change = 0;
    for (const Mutant& m : foms)
        if (m.location == LocationClass::OnChange) ++on_change;
    std::cout << foms.size() << " mutants (" << on_change << " on change), " << pairs.size()
              << " pairs -> " << out_path << "\n";
    return 0;
}

int cmd_matrix(const std::string& program_path, const std::string& tests_path,
               const std::string& diff_path, const std::string& out_path,
               const std::string& csv_path, const std::string& mutants_path,
               const GenFlags& flags, std::size_t step_budget) {
    ProgramUnit subject = load_subject(program_path);
    ProgramUnit tests = load_tests(tests_path);
    MutantCatalog catalog;
    if (!mutants_path.empty()) {
        catalog = read_mutants_json(read_text_file(mutants_path));
    } else {
        CommitDiff diff = load_diff(diff_path);
        MutgenOptions gen = flags.to_options();
        catalog.foms = generate_foms(subject, diff, gen);
        catalog.pairs = pair_homs(subject, catalog.foms, gen);
    }
    ExecOptions exec;
    exec.step_budget = step_budget;
    MatrixBundle bundle = build_matrices(subject, tests, catalog.foms, catalog.pairs, exec);
    MatrixArtifact artifact{bundle.matrix, bundle.kills, catalog.foms, catalog.pairs,
                            program_path, exec.step_budget};
    write_text_file(out_path, write_matrix_json(artifact));
    if (!csv_path.empty()) write_text_file(csv_path, matrix_csv(bundle.matrix));
    std::cout << catalog.foms.size() << " mutant rows, " << catalog.pairs.size()
              << " pair rows, " << bundle.matrix.columns.size() << " assertion columns -> "
              << out_path << "\n";
    return 0;
}

int cmd_relevance(const std::string& matrix_path, const std::string& out_path,
                  bool include_unkillable) {
    MatrixArtifact artifact = read_matrix_json(read_text_file(matrix_path));
    RelevanceOptions options;
    options.include_unkillable_on_change = include_unkillable;
    RelevanceReport report = detect_relevant(artifact.matrix, artifact.kills, artifact.foms,
                                             artifact.pairs, options);
    write_text_file(out_path, write_relevance_json(report));
    std::cout << report.relevant_on_change.size() << " relevant on change, "
              << report.relevant_outside.size() << " relevant outside, "
              << report.not_relevant.size() << " not relevant -> " << out_path << "\n";
    return 0;
}

int cmd_subsume(const std::string& matrix_path, const std::string& relevance_path,
                const std::string& out_path) {
    MatrixArtifact artifact = read_matrix_json(read_text_file(matrix_path));
    RelevanceReport relevance = read_relevance_json(read_text_file(relevance_path));
    SubsumeArtifact out;
    std::vector<int> everyone;
    for (const Mutant& m : artifact.foms) everyone.push_back(m.id);
    out.all_killable = subsumption(artifact.kills, everyone);
    out.commit_relevant = subsumption(artifact.kills, relevance.relevant_ids());
    write_text_file(out_path, write_subsume_json(out));
    std::cout << out.all_killable.subsuming_mutants.size() << " subsuming overall, "
              << out.commit_relevant.subsuming_mutants.size()
              << " subsuming commit-relevant -> " << out_path << "\n";
    return 0;
}

int cmd_simulate(const std::string& matrix_path, const std::string& relevance_path,
                 const std::string& subsume_path, const std::string& strategy_name,
                 std::uint64_t seed, int reps, int picks, const std::string& out_path,
                 const std::string& medians_path) {
    MatrixArtifact artifact = read_matrix_json(read_text_file(matrix_path));
    RelevanceReport relevance = read_relevance_json(read_text_file(relevance_path));
    if (!subsume_path.empty()) {
        // Cross-check that the subsume artifact matches this matrix and
        // relevance report; the simulation recomputes the sets itself.
        SubsumeArtifact stored = read_subsume_json(read_text_file(subsume_path));
        std::vector<int> fresh = subsuming_commit_relevant(artifact.kills, relevance);
        if (stored.commit_relevant.subsuming_mutants != fresh)
            throw Error("subsume artifact does not match the matrix and relevance report");
    }
    std::optional<SelectionStrategy> strategy = selection_strategy_from_name(strategy_name);
    if (!strategy) throw Error("unknown strategy: " + strategy_name);
    SimulationConfig config;
    config.strategy = *strategy;
    config.seed = seed;
    config.repetitions = reps;
    config.max_picks = picks;
    SimulationResult result = simulate(artifact.kills, relevance, config);
    write_text_file(out_path, simulation_csv(result));
    if (!medians_path.empty())
        write_text_file(medians_path, write_simulation_medians_json(result));
    std::cout << selection_strategy_name(result.strategy) << ": " << result.rows.size()
              << " rows -> " << out_path << "\n";
    return 0;
}

int cmd_correlate(const std::vector<std::string>& summary_paths, const std::string& out_path) {
    if (summary_paths.size() < 3) throw TooFewSamplesError(summary_paths.size());
    std::vector<double> on_change, relevant, hunks, changed, total;
    for (const std::string& path : summary_paths) {
        RunSummary s = read_summary_json(read_text_file(path));
        on_change.push_back(s.mutants_on_change);
        relevant.push_back(s.relevant_total);
        hunks.push_back(s.hunks);
        changed.push_back(s.changed_lines);
        total.push_back(s.mutants_total);
    }
    auto row = [](const std::string& label, const std::vector<double>& x,
                  const std::vector<double>& y) {
        return CorrelationRow{label, spearman(x, y), kendall_tau_a(x, y)};
    };
    std::vector<CorrelationRow> rows;
    rows.push_back(row("on_change_mutants_vs_relevant", on_change, relevant));
    rows.push_back(row("hunks_vs_relevant", hunks, relevant));
    rows.push_back(row("changed_lines_vs_relevant", changed, relevant));
    rows.push_back(row("mutants_total_vs_relevant", total, relevant));
    write_text_file(out_path, write_correlations_json(rows));
    std::cout << rows.size() << " correlation rows over " << summary_paths.size()
              << " summaries -> " << out_path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"commit-aware mutation analysis for MiniLang programs"};
    app.require_subcommand(1);

    int exit_code = 0;
    auto guard = [&exit_code](auto&& body) {
        return [&exit_code, body = std::forward<decltype(body)>(body)]() {
            try {
                exit_code = body();
            } catch (const std::exception& error) {
                std::cerr << "error: " << error.what() << "\n";
                exit_code = 1;
            }
        };
    };

    // run
    {
        auto* cmd = app.add_subcommand("run", "Full pipeline into an output directory");
        auto program = std::make_shared<std::string>();
        auto tests = std::make_shared<std::string>();
        auto diff = std::make_shared<std::string>();
        auto out_dir = std::make_shared<std::string>("cam-out");
        auto flags = std::make_shared<GenFlags>();
        auto step_budget = std::make_shared<std::size_t>(100000);
        auto include_unkillable = std::make_shared<bool>(false);
        cmd->add_option("--program", *program, "Subject program (.ml)")
            ->required()->check(CLI::ExistingFile);
        cmd->add_option("--tests", *tests, "Test file (.mlt)")
            ->required()->check(CLI::ExistingFile);
        cmd->add_option("--diff", *diff, "Unified diff of the commit")
            ->check(CLI::ExistingFile);
        cmd->add_option("--out-dir", *out_dir, "Artifact directory")->capture_default_str();
        add_gen_flags(cmd, *flags);
        cmd->add_option("--step-budget", *step_budget, "Interpreter step budget per test run")
            ->capture_default_str();
        cmd->add_flag("--include-unkillable-on-change", *include_unkillable,
                      "Treat every on-change mutant as relevant, killable or not");
        cmd->callback(guard([=]() {
            return cmd_run(*program, *tests, *diff, *out_dir, *flags, *step_budget,
                           *include_unkillable);
        }));
    }

    // mutants
    {
        auto* cmd = app.add_subcommand("mutants", "Generate the mutant catalog only");
        auto program = std::make_shared<std::string>();
        auto diff = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>("mutants.json");
        auto flags = std::make_shared<GenFlags>();
        cmd->add_option("--program", *program, "Subject program (.ml)")
            ->required()->check(CLI::ExistingFile);
        cmd->add_option("--diff", *diff, "Unified diff of the commit")
            ->check(CLI::ExistingFile);
        cmd->add_option("--out", *out, "Output path")->capture_default_str();
        add_gen_flags(cmd, *flags);
        cmd->callback(guard([=]() { return cmd_mutants(*program, *diff, *out, *flags); }));
    }

    // matrix
    {
        auto* cmd = app.add_subcommand("matrix", "Build the mutant-assertion matrix");
        auto program = std::make_shared<std::string>();
        auto tests = std::make_shared<std::string>();
        auto diff = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>("matrix.json");
        auto csv = std::make_shared<std::string>();
        auto mutants = std::make_shared<std::string>();
        auto flags = std::make_shared<GenFlags>();
        auto step_budget = std::make_shared<std::size_t>(100000);
        cmd->add_option("--program", *program, "Subject program (.ml)")
            ->required()->check(CLI::ExistingFile);
        cmd->add_option("--tests", *tests, "Test file (.mlt)")
            ->required()->check(CLI::ExistingFile);
        cmd->add_option("--diff", *diff, "Unified diff of the commit")
            ->check(CLI::ExistingFile);
        cmd->add_option("--out", *out, "Output path")->capture_default_str();
        cmd->add_option("--csv", *csv, "Also write the assertion matrix as CSV here");
        cmd->add_option("--mutants", *mutants, "Load this catalog instead of generating")
            ->check(CLI::ExistingFile);
        add_gen_flags(cmd, *flags);
        cmd->add_option("--step-budget", *step_budget, "Interpreter step budget per test run")
            ->capture_default_str();
        cmd->callback(guard([=]() {
            return cmd_matrix(*program, *tests, *diff, *out, *csv, *mutants, *flags,
                              *step_budget);
        }));
    }

    // relevance
    {
        auto* cmd = app.add_subcommand("relevance", "Detect commit-relevant mutants");
        auto matrix = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>("relevance.json");
        auto include_unkillable = std::make_shared<bool>(false);
        cmd->add_option("--matrix", *matrix, "matrix.json from `cam matrix`")
            ->required()->check(CLI::ExistingFile);
        cmd->add_option("--out", *out, "Output path")->capture_default_str();
        cmd->add_flag("--include-unkillable-on-change", *include_unkillable,
                      "Treat every on-change mutant as relevant, killable or not");
        cmd->callback(guard([=]() { return cmd_relevance(*matrix, *out, *include_unkillable); }));
    }

    // subsume
    {
        auto* cmd = app.add_subcommand("subsume", "Dynamic subsumption analysis");
        auto matrix = std::make_shared<std::string>();
        auto relevance = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>("subsume.json");
        cmd->add_option("--matrix", *matrix, "matrix.json from `cam matrix`")
            ->required()->check(CLI::ExistingFile);
        cmd->add_option("--relevance", *relevance, "relevance.json from `cam relevance`")
            ->required()->check(CLI::ExistingFile);
        cmd->add_option("--out", *out, "Output path")->capture_default_str();
        cmd->callback(guard([=]() { return cmd_subsume(*matrix, *relevance, *out); }));
    }

    // simulate
    {
        auto* cmd = app.add_subcommand("simulate", "Test-selection simulation");
        auto matrix = std::make_shared<std::string>();
        auto relevance = std::make_shared<std::string>();
        auto subsume = std::make_shared<std::string>();
        auto strategy = std::make_shared<std::string>("RandomAll");
        auto seed = std::make_shared<std::uint64_t>(0);
        auto reps = std::make_shared<int>(100);
        auto picks = std::make_shared<int>(20);
        auto out = std::make_shared<std::string>("sim.csv");
        auto medians = std::make_shared<std::string>();
        cmd->add_option("--matrix", *matrix, "matrix.json from `cam matrix`")
            ->required()->check(CLI::ExistingFile);
        cmd->add_option("--relevance", *relevance, "relevance.json from `cam relevance`")
            ->required()->check(CLI::ExistingFile);
        cmd->add_option("--subsume", *subsume,
                        "subsume.json; cross-checked against the matrix when given")
            ->check(CLI::ExistingFile);
        cmd->add_option("--strategy", *strategy,
                        "RandomAll | WithinChange | CommitRelevant | SubsumingCommitRelevant")
            ->capture_default_str();
        cmd->add_option("--seed", *seed, "Simulation seed")->capture_default_str();
        cmd->add_option("--reps", *reps, "Repetitions")->capture_default_str();
        cmd->add_option("--picks", *picks, "Picks per repetition")->capture_default_str();
        cmd->add_option("--out", *out, "CSV output path")->capture_default_str();
        cmd->add_option("--medians", *medians, "Also write per-interval medians as JSON here");
        cmd->callback(guard([=]() {
            return cmd_simulate(*matrix, *relevance, *subsume, *strategy, *seed, *reps, *picks,
                                *out, *medians);
        }));
    }

    // correlate
    {
        auto* cmd = app.add_subcommand("correlate", "Rank correlations across run summaries");
        auto summaries = std::make_shared<std::vector<std::string>>();
        auto out = std::make_shared<std::string>("correlations.json");
        cmd->add_option("summaries", *summaries, "summary.json files (at least 3)")
            ->required()->check(CLI::ExistingFile);
        cmd->add_option("--out", *out, "Output path")->capture_default_str();
        cmd->callback(guard([=]() { return cmd_correlate(*summaries, *out); }));
    }

    CLI11_PARSE(app, argc, argv);
    return exit_code;
}
