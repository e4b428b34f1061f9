#include <gtest/gtest.h>

#include "cam/errors.hpp"
#include "cam/matrix.hpp"
#include "cam/printer.hpp"
#include "cam/relevance.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace cam;
using namespace cam::testing;

namespace {

RelevanceReport detect(const ScenarioFixture& fx, RelevanceOptions options = {}) {
    MatrixBundle bundle = build_matrices(fx.subject, fx.tests, fx.foms, fx.pairs);
    return detect_relevant(bundle.matrix, bundle.kills, fx.foms, fx.pairs, options);
}

} // namespace

TEST(Relevance, InteractingOutsideMutantIsRelevantWithItsFirstWitness) {
    ScenarioFixture fx = interacting_scenario();
    RelevanceReport report = detect(fx);
    EXPECT_EQ(report.relevant_on_change, (std::vector<int>{2}));
    ASSERT_EQ(report.relevant_outside.size(), 1u);
    EXPECT_EQ(report.relevant_outside[0], (OutsideRelevant{1, Witness{2, "test_fun#1"}}));
    EXPECT_TRUE(report.not_relevant.empty());
    EXPECT_TRUE(report.is_relevant(1));
    EXPECT_TRUE(report.is_relevant(2));
    EXPECT_EQ(report.relevant_ids(), (std::vector<int>{1, 2}));
}

TEST(Relevance, MutantShadowedByTheChangeIsNotRelevant) {
    ScenarioFixture fx = shadowed_scenario();
    RelevanceReport report = detect(fx);
    EXPECT_EQ(report.relevant_on_change, (std::vector<int>{2}));
    EXPECT_TRUE(report.relevant_outside.empty());
    EXPECT_EQ(report.not_relevant, (std::vector<int>{1}));
}

TEST(Relevance, MutantOffTheExecutedPathIsNotRelevant) {
    ScenarioFixture fx = unreachable_scenario();
    RelevanceReport report = detect(fx);
    EXPECT_EQ(report.relevant_on_change, (std::vector<int>{2}));
    EXPECT_TRUE(report.relevant_outside.empty());
    EXPECT_EQ(report.not_relevant, (std::vector<int>{1}));
    EXPECT_FALSE(report.is_relevant(1));
}

TEST(Relevance, WorkedExampleReport) {
    ReaderFixture fx = reader_fixture();
    MatrixBundle bundle = build_matrices(fx.subject, fx.tests, fx.foms, fx.pairs);
    RelevanceReport report = detect_relevant(bundle.matrix, bundle.kills, fx.foms, fx.pairs);
    EXPECT_EQ(report.relevant_on_change, (std::vector<int>{1}));
    ASSERT_EQ(report.relevant_outside.size(), 1u);
    EXPECT_EQ(report.relevant_outside[0],
              (OutsideRelevant{3, Witness{1, "test_read_empty_buffer#1"}}));
    EXPECT_EQ(report.not_relevant, (std::vector<int>{2, 4}));
}

TEST(Relevance, UnkillableOnChangeMutantsAreExcludedByDefault) {
    // the on-change edit leaves behavior on the tested input unchanged:
    // z[0] stays below 9 either way
    std::string subject_text =
        "fn fun(z) {\n"
        "    let r = z[0] + 1;\n"
        "    if (z[0] > 9) {\n"
        "        r = z[0] - 1;\n"
        "    }\n"
        "    return r;\n"
        "}\n";
    ProgramUnit subject = parse_program(subject_text, "scenario.ml");
    ProgramUnit tests = parse_program(
        "fn test_fun() {\n    let z = [3, 0, 0];\n    assert_eq(4, fun(z));\n}\n",
        "scenario.mlt");
    CommitDiff diff = parse_unified_diff(
        "--- a/scenario.ml\n+++ b/scenario.ml\n@@ -3,1 +3,1 @@\n-    if (z[0] > 7) {\n+    if (z[0] > 9) {\n");

    const Expr* cond = first_expr(subject, [](const Expr& e) {
        const auto* b = std::get_if<BinaryExpr>(&e.node);
        return b && b->op == BinaryOp::Gt;
    });
    ASSERT_NE(cond, nullptr);
    Mutant y;
    y.id = 1;
    y.op = MutationOperator::ROR;
    y.edit = ReplaceBinaryOperator{BinaryOp::Ge};  // z[0] >= 9, still false at 3
    y.target = cond->id;
    y.anchor = cond->id;
    y.span = cond->span;
    y.original = print_expr(*cond);
    y.replacement = "z[0] >= 9";
    y.location = classify(cond->span, diff);
    ASSERT_EQ(y.location, LocationClass::OnChange);

    MatrixBundle bundle = build_matrices(subject, tests, {y}, {});
    EXPECT_FALSE(bundle.kills.killable(1));

    RelevanceReport strict = detect_relevant(bundle.matrix, bundle.kills, {y}, {});
    EXPECT_TRUE(strict.relevant_on_change.empty());
    EXPECT_EQ(strict.not_relevant, (std::vector<int>{1}));

    RelevanceOptions loose;
    loose.include_unkillable_on_change = true;
    RelevanceReport admitted = detect_relevant(bundle.matrix, bundle.kills, {y}, {}, loose);
    EXPECT_EQ(admitted.relevant_on_change, (std::vector<int>{1}));
    EXPECT_TRUE(admitted.include_unkillable_on_change);
}

TEST(Relevance, OutsideRelevanceDoesNotRequireTheOutsideMutantKillable) {
    // the outside mutant hides on an untaken branch; the on-change mutant
    // redirects execution onto it, so only the combination exposes it
    std::string subject_text =
        "fn fun(a) {\n"
        "    let r = a[0] + a[1];\n"
        "    if (a[2] > 9) {\n"
        "        r = a[0] - a[1];\n"
        "    }\n"
        "    return r;\n"
        "}\n";
    ProgramUnit subject = parse_program(subject_text, "scenario.ml");
    ProgramUnit tests = parse_program(
        "fn test_fun() {\n    let a = [5, 3, 0];\n    assert_eq(8, fun(a));\n}\n",
        "scenario.mlt");
    CommitDiff diff = parse_unified_diff(
        "--- a/scenario.ml\n+++ b/scenario.ml\n@@ -3,1 +3,1 @@\n-    if (a[2] > 7) {\n+    if (a[2] > 9) {\n");

    const Expr* sub = first_expr(subject, [](const Expr& e) {
        const auto* b = std::get_if<BinaryExpr>(&e.node);
        return b && b->op == BinaryOp::Sub;
    });
    const Expr* cond = first_expr(subject, [](const Expr& e) {
        const auto* b = std::get_if<BinaryExpr>(&e.node);
        return b && b->op == BinaryOp::Gt;
    });
    ASSERT_NE(sub, nullptr);
    ASSERT_NE(cond, nullptr);

    Mutant x = constant_mutant(1, *sub, 0, diff);
    ASSERT_EQ(x.location, LocationClass::OutsideChange);

    Mutant y;
    y.id = 2;
    y.op = MutationOperator::ROR;
    y.edit = ReplaceBinaryOperator{BinaryOp::Lt};  // a[2] < 9, true at 0
    y.target = cond->id;
    y.anchor = cond->id;
    y.span = cond->span;
    y.original = print_expr(*cond);
    y.replacement = "a[2] < 9";
    y.location = classify(cond->span, diff);
    ASSERT_EQ(y.location, LocationClass::OnChange);

    std::vector<Mutant> foms = {x, y};
    std::vector<HomPair> pairs = pair_homs(subject, foms, {});
    ASSERT_EQ(pairs.size(), 1u);

    MatrixBundle bundle = build_matrices(subject, tests, foms, pairs);
    EXPECT_FALSE(bundle.kills.killable(1));  // baseline never runs the branch
    EXPECT_TRUE(bundle.kills.killable(2));   // redirect observes 2 instead of 8

    RelevanceReport report = detect_relevant(bundle.matrix, bundle.kills, foms, pairs);
    ASSERT_EQ(report.relevant_outside.size(), 1u);
    EXPECT_EQ(report.relevant_outside[0], (OutsideRelevant{1, Witness{2, "test_fun#1"}}));
}

TEST(Relevance, FirstWitnessFollowsSuiteOrder) {
    ScenarioFixture fx = interacting_scenario();
    // duplicate the probe under two names; the reported witness must come
    // from the earlier test
    std::string doubled =
        "fn test_a() {\n"
        "    let z = [0, 3, 3];\n"
        "    let k = [0, 2, 3];\n"
        "    assert_eq(-2, fun(z, k));\n"
        "}\n"
        "fn test_b() {\n"
        "    let z = [0, 3, 3];\n"
        "    let k = [0, 2, 3];\n"
        "    assert_eq(-2, fun(z, k));\n"
        "}\n";
    ProgramUnit tests = parse_program(doubled, "scenario.mlt");
    MatrixBundle bundle = build_matrices(fx.subject, tests, fx.foms, fx.pairs);
    RelevanceReport report = detect_relevant(bundle.matrix, bundle.kills, fx.foms, fx.pairs);
    ASSERT_EQ(report.relevant_outside.size(), 1u);
    EXPECT_EQ(report.relevant_outside[0].witness.assertion_id, "test_a#1");
}

TEST(Relevance, ExhaustiveScanAgreesWithEarlyExit) {
    ReaderFixture fx = reader_fixture();
    MatrixBundle bundle = build_matrices(fx.subject, fx.tests, fx.foms, fx.pairs);
    RelevanceOptions exhaustive;
    exhaustive.exhaustive = true;
    RelevanceReport fast = detect_relevant(bundle.matrix, bundle.kills, fx.foms, fx.pairs);
    RelevanceReport slow =
        detect_relevant(bundle.matrix, bundle.kills, fx.foms, fx.pairs, exhaustive);
    EXPECT_EQ(fast, slow);
}

TEST(Relevance, WitnessCheckerMatchesTheReport) {
    ScenarioFixture fx = interacting_scenario();
    MatrixBundle bundle = build_matrices(fx.subject, fx.tests, fx.foms, fx.pairs);
    EXPECT_TRUE(check_witness(bundle.matrix, 1, 2, "test_fun#1"));
    EXPECT_THROW(check_witness(bundle.matrix, 1, 2, "test_fun#7"), UnknownAssertionError);
    EXPECT_THROW(check_witness(bundle.matrix, 2, 1, "test_fun#1"), MissingHomRowError);

    ScenarioFixture shadowed = shadowed_scenario();
    MatrixBundle other =
        build_matrices(shadowed.subject, shadowed.tests, shadowed.foms, shadowed.pairs);
    EXPECT_FALSE(check_witness(other.matrix, 1, 2, "test_fun#1"));
}

TEST(Relevance, AgreesWithTheBruteForceOracleOnSmallRandomPrograms) {
    for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
        GeneratedFixture fx = make_random_fixture(seed, 25, 4);
        MatrixBundle bundle = build_matrices(fx.subject, fx.tests, fx.foms, fx.pairs);
        RelevanceReport fast =
            detect_relevant(bundle.matrix, bundle.kills, fx.foms, fx.pairs);
        RelevanceReport slow =
            brute_force_relevance(fx.subject, fx.tests, fx.foms, fx.pairs);
        EXPECT_EQ(fast, slow) << "seed " << seed;
    }
}
