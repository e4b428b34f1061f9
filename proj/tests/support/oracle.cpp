#include "oracle.hpp"

#include <map>
#include <optional>
#include <string>
#include <unordered_map>

#include "cam/interpreter.hpp"
#include "cam/printer.hpp"

namespace cam::testing {

namespace {

// actual values keyed by assertion id; absence means the assertion produced
// no value pair (not reached, or the run died evaluating it)
using Observed = std::unordered_map<std::string, Value>;

struct VariantRuns {
    std::map<std::string, Observed> by_test;
    bool killed = false;
};

VariantRuns run_variant(const ProgramUnit& variant, const ProgramUnit& tests,
                        const std::vector<std::string>& names, std::size_t step_budget) {
    // round-trip through source text so the run exercises a freshly parsed
    // program rather than the edited AST
    ProgramUnit reparsed = parse_program(print_program(variant), variant.file);
    RunOptions opts;
    opts.step_budget = step_budget;
    VariantRuns runs;
    for (const std::string& name : names) {
        TestOutcome outcome = run_test(reparsed, tests, name, opts);
        if (outcome.status != RunStatus::Pass) runs.killed = true;
        Observed seen;
        for (const AssertionRecord& record : outcome.assertions)
            seen.emplace(record.assertion_id, record.actual);
        runs.by_test.emplace(name, std::move(seen));
    }
    return runs;
}

} // namespace

RelevanceReport brute_force_relevance(const ProgramUnit& subject, const ProgramUnit& tests,
                                      const std::vector<Mutant>& foms,
                                      const std::vector<HomPair>& pairs,
                                      const RelevanceOptions& options,
                                      std::size_t step_budget) {
    std::vector<std::string> names = list_tests(tests);

    std::unordered_map<int, const Mutant*> by_id;
    for (const Mutant& m : foms) by_id.emplace(m.id, &m);

    std::unordered_map<int, VariantRuns> fom_runs;
    for (const Mutant& m : foms)
        fom_runs.emplace(m.id, run_variant(apply_mutant(subject, m), tests, names, step_budget));

    std::unordered_map<int, VariantRuns> hom_runs;
    for (const HomPair& pair : pairs)
        hom_runs.emplace(pair.id, run_variant(apply_hom(subject, *by_id.at(pair.x),
                                                        *by_id.at(pair.y)),
                                              tests, names, step_budget));

    std::vector<AssertionSite> sites;
    for (const std::string& name : names)
        for (const AssertionSite& site : assertion_sites(tests, name))
            sites.push_back(site);

    auto find_witness = [&](int x) -> std::optional<Witness> {
        for (const HomPair& pair : pairs) {
            if (pair.x != x) continue;
            const VariantRuns& xr = fom_runs.at(pair.x);
            const VariantRuns& yr = fom_runs.at(pair.y);
            const VariantRuns& hr = hom_runs.at(pair.id);
            for (const std::string& name : names) {
                const Observed& xo = xr.by_test.at(name);
                const Observed& yo = yr.by_test.at(name);
                const Observed& ho = hr.by_test.at(name);
                for (const AssertionSite& site : sites) {
                    if (site.test_name != name) continue;
                    auto xi = xo.find(site.assertion_id);
                    auto yi = yo.find(site.assertion_id);
                    auto hi = ho.find(site.assertion_id);
                    if (xi == xo.end() || yi == yo.end() || hi == ho.end()) continue;
                    if (!(hi->second == yi->second) && !(hi->second == xi->second))
                        return Witness{pair.y, site.assertion_id};
                }
            }
        }
        return std::nullopt;
    };

    RelevanceReport report;
    report.include_unkillable_on_change = options.include_unkillable_on_change;
    for (const Mutant& m : foms) {
        if (m.location == LocationClass::OnChange) {
            if (fom_runs.at(m.id).killed || options.include_unkillable_on_change)
                report.relevant_on_change.push_back(m.id);
            else
                report.not_relevant.push_back(m.id);
            continue;
        }
        if (std::optional<Witness> witness = find_witness(m.id))
            report.relevant_outside.push_back(OutsideRelevant{m.id, *witness});
        else
            report.not_relevant.push_back(m.id);
    }
    return report;
}

} // namespace cam::testing
