#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "cam/errors.hpp"
#include "cam/mutation.hpp"
#include "cam/parser.hpp"
#include "cam/printer.hpp"
#include "fixtures.hpp"

using namespace cam;

namespace {

ProgramUnit parse(const std::string& text) { return parse_program(text, "t.ml"); }

std::vector<Mutant> generate(const std::string& text,
                             std::vector<MutationOperator> operators = {}) {
    ProgramUnit unit = parse(text);
    MutgenOptions options;
    options.operators = std::move(operators);
    return generate_foms(unit, CommitDiff{}, options);
}

std::vector<std::string> replacements(const std::vector<Mutant>& catalog) {
    std::vector<std::string> out;
    for (const Mutant& m : catalog) out.push_back(m.replacement);
    return out;
}

} // namespace

TEST(Mutgen, RelationalMenuCoversTheOtherFiveOperators) {
    auto catalog = generate("fn f(i) { return i == 0; }\n", {MutationOperator::ROR});
    EXPECT_EQ(replacements(catalog),
              (std::vector<std::string>{"i != 0", "i < 0", "i <= 0", "i > 0", "i >= 0"}));
}

TEST(Mutgen, ArithmeticMenuCoversTheOtherFourOperators) {
    auto catalog = generate("fn f(a, b) { return a + b; }\n", {MutationOperator::AOR});
    EXPECT_EQ(replacements(catalog),
              (std::vector<std::string>{"a - b", "a * b", "a / b", "a % b"}));
}

TEST(Mutgen, ConstantMenuSkipsTheOriginalAndDuplicates) {
    auto five = generate("fn f() { return 5; }\n", {MutationOperator::CRCR});
    EXPECT_EQ(replacements(five),
              (std::vector<std::string>{"0", "1", "-1", "6", "4", "-5"}));
    auto zero = generate("fn f() { return 0; }\n", {MutationOperator::CRCR});
    EXPECT_EQ(replacements(zero), (std::vector<std::string>{"1", "-1"}));
    auto one = generate("fn f() { return 1; }\n", {MutationOperator::CRCR});
    EXPECT_EQ(replacements(one), (std::vector<std::string>{"0", "-1", "2"}));
}

TEST(Mutgen, UnaryInsertionStepsVariableReadsOnly) {
    auto catalog = generate("fn f(i) { return i + 2; }\n", {MutationOperator::UOI});
    EXPECT_EQ(replacements(catalog), (std::vector<std::string>{"++i", "--i"}));
    for (const Mutant& m : catalog) EXPECT_EQ(m.original, "i");
}

TEST(Mutgen, BitwiseSwapTouchesAndOrOnly) {
    auto catalog =
        generate("fn f(a, b) { return (a & b) + (a | b) + (a ^ b); }\n",
                 {MutationOperator::OBBN});
    EXPECT_EQ(replacements(catalog), (std::vector<std::string>{"a | b", "a & b"}));
}

TEST(Mutgen, NegationRemovalSkipsFoldedLiterals) {
    auto catalog =
        generate("fn f(a) { return -(a + 1) + -5; }\n", {MutationOperator::InvertNegs});
    ASSERT_EQ(catalog.size(), 1u);
    EXPECT_EQ(catalog[0].original, "-(a + 1)");
    EXPECT_EQ(catalog[0].replacement, "a + 1");
}

TEST(Mutgen, StatementDeletionSparesDeclarationsAndReturns) {
    std::string text =
        "fn f(a) {\n"
        "    let s = 0;\n"
        "    s = s + 1;\n"
        "    sort(a);\n"
        "    if (s > 0) {\n"
        "        s = 2;\n"
        "    }\n"
        "    while (s > 2) {\n"
        "        s = s - 1;\n"
        "    }\n"
        "    for (let i = 0; i < 1; i = i + 1) {\n"
        "        s = s + a[0];\n"
        "    }\n"
        "    return s;\n"
        "}\n";
    auto catalog = generate(text, {MutationOperator::SDL});
    std::set<int> lines;
    for (const Mutant& m : catalog) {
        EXPECT_EQ(m.replacement, ";");
        lines.insert(m.span.start_line);
    }
    EXPECT_FALSE(lines.count(2));   // let
    EXPECT_FALSE(lines.count(14));  // return
    EXPECT_TRUE(lines.count(3));
    EXPECT_TRUE(lines.count(4));
    EXPECT_TRUE(lines.count(5));
    EXPECT_TRUE(lines.count(6));
    EXPECT_TRUE(lines.count(8));
    EXPECT_TRUE(lines.count(11));
}

TEST(Mutgen, CatalogOrderAndIdsAreDeterministic) {
    std::string text = cam::testing::read_data("bounded_reader.ml");
    ProgramUnit unit = parse_program(text, "bounded_reader.ml");
    auto a = generate_foms(unit, CommitDiff{}, {});
    auto b = generate_foms(unit, CommitDiff{}, {});
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].id, static_cast<int>(i) + 1);
        EXPECT_EQ(a[i].target, b[i].target);
        EXPECT_EQ(a[i].op, b[i].op);
        EXPECT_EQ(a[i].replacement, b[i].replacement);
    }
    for (std::size_t i = 1; i < a.size(); ++i) EXPECT_LE(a[i - 1].target, a[i].target);
}

TEST(Mutgen, NoMutantIsANoOp) {
    ProgramUnit unit = parse(
        "fn f(a, b) {\n"
        "    let s = a[0] + b;\n"
        "    if (s >= 0 && b > 1) {\n"
        "        s = -(s & 3);\n"
        "    }\n"
        "    return s * 2;\n"
        "}\n");
    auto catalog = generate_foms(unit, CommitDiff{}, {});
    EXPECT_FALSE(catalog.empty());
    for (const Mutant& m : catalog) {
        ProgramUnit mutated = apply_mutant(unit, m);
        EXPECT_FALSE(same_structure(mutated, unit)) << m.label() << " " << m.replacement;
    }
}

TEST(Mutgen, OperatorFilterRestrictsFamilies) {
    auto catalog = generate("fn f(i) { return i < 0; }\n",
                            {MutationOperator::UOI, MutationOperator::ROR});
    ASSERT_FALSE(catalog.empty());
    for (const Mutant& m : catalog)
        EXPECT_TRUE(m.op == MutationOperator::UOI || m.op == MutationOperator::ROR);
}

TEST(Mutgen, ClassifiesAgainstTheDiff) {
    ProgramUnit unit = parse("fn f(i) {\n    let s = i + 1;\n    return s * 2;\n}\n");
    CommitDiff diff =
        parse_unified_diff("--- a/t.ml\n+++ b/t.ml\n@@ -2,1 +2,1 @@\n-x\n+y\n");
    auto catalog = generate_foms(unit, diff, {});
    bool saw_on = false;
    bool saw_out = false;
    for (const Mutant& m : catalog) {
        if (m.span.start_line == 2) {
            EXPECT_EQ(m.location, LocationClass::OnChange);
            saw_on = true;
        } else {
            EXPECT_EQ(m.location, LocationClass::OutsideChange);
            saw_out = true;
        }
    }
    EXPECT_TRUE(saw_on);
    EXPECT_TRUE(saw_out);
}

TEST(ApplyMutant, RejectsStaleTargets) {
    ProgramUnit unit = parse("fn f(i) { return i == 0; }\n");
    auto catalog = generate_foms(unit, CommitDiff{}, {});
    ASSERT_FALSE(catalog.empty());
    Mutant stale = catalog[0];
    stale.target = unit.node_count + 40;
    EXPECT_THROW(apply_mutant(unit, stale), StaleMutantError);
}

TEST(ApplyMutant, UnaryInsertionKeepsExistingNodeIds) {
    ProgramUnit unit = parse("fn f(i) { return i + 1; }\n");
    auto catalog = generate(print_program(unit), {MutationOperator::UOI});
    ASSERT_FALSE(catalog.empty());
    ProgramUnit mutated = apply_mutant(unit, catalog[0]);
    for (NodeId id = 0; id < unit.node_count; ++id)
        EXPECT_EQ(find_span(unit, id).has_value(), find_span(mutated, id).has_value());
}

TEST(ApplyHom, OrderOfApplicationDoesNotMatter) {
    cam::testing::ReaderFixture fx = cam::testing::reader_fixture();
    const Mutant& x = fx.foms[2];  // ++i
    const Mutant& y = fx.foms[0];  // i != 0
    ProgramUnit xy = apply_hom(fx.subject, x, y);
    ProgramUnit yx = apply_hom(fx.subject, y, x);
    EXPECT_TRUE(same_structure(xy, yx));
    EXPECT_EQ(print_program(xy), print_program(yx));
}

TEST(ApplyHom, RejectsSameAndNestedTargets) {
    ProgramUnit unit = parse("fn f(i) { return -(i + 1); }\n");
    const Expr* whole = cam::testing::first_expr(unit, [](const Expr& e) {
        return std::holds_alternative<UnaryExpr>(e.node);
    });
    const Expr* inner = cam::testing::first_expr(unit, [](const Expr& e) {
        return std::holds_alternative<BinaryExpr>(e.node);
    });
    ASSERT_NE(whole, nullptr);
    ASSERT_NE(inner, nullptr);
    Mutant a = cam::testing::constant_mutant(1, *whole, 0, CommitDiff{});
    Mutant b = cam::testing::constant_mutant(2, *inner, 7, CommitDiff{});
    EXPECT_THROW(apply_hom(unit, a, b), ConflictingTargetsError);
    EXPECT_THROW(apply_hom(unit, a, a), ConflictingTargetsError);
    EXPECT_TRUE(targets_overlap(unit, whole->id, inner->id));
    EXPECT_TRUE(targets_overlap(unit, whole->id, whole->id));
}

TEST(PairHoms, CrossesOutsideWithOnChangeSkippingOverlaps) {
    ProgramUnit unit = parse("fn f(i) {\n    let s = i + 1;\n    return s * 2;\n}\n");
    CommitDiff diff =
        parse_unified_diff("--- a/t.ml\n+++ b/t.ml\n@@ -2,1 +2,1 @@\n-x\n+y\n");
    auto foms = generate_foms(unit, diff, {});
    auto pairs = pair_homs(unit, foms, {});
    std::map<int, const Mutant*> by_id;
    for (const Mutant& m : foms) by_id[m.id] = &m;

    std::size_t expected = 0;
    for (const Mutant& x : foms) {
        if (x.location != LocationClass::OutsideChange) continue;
        for (const Mutant& y : foms) {
            if (y.location != LocationClass::OnChange) continue;
            if (!targets_overlap(unit, x.target, y.target)) ++expected;
        }
    }
    EXPECT_EQ(pairs.size(), expected);

    int last_x_index = -1;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        EXPECT_EQ(pairs[i].id, static_cast<int>(i) + 1);
        EXPECT_EQ(by_id.at(pairs[i].x)->location, LocationClass::OutsideChange);
        EXPECT_EQ(by_id.at(pairs[i].y)->location, LocationClass::OnChange);
        EXPECT_FALSE(targets_overlap(unit, by_id.at(pairs[i].x)->target,
                                     by_id.at(pairs[i].y)->target));
        // outside mutant varies slowest, in catalog order
        int x_index = 0;
        while (foms[x_index].id != pairs[i].x) ++x_index;
        EXPECT_GE(x_index, last_x_index);
        last_x_index = x_index;
    }
}

TEST(PairHoms, PerStatementCapSamplesDeterministically) {
    std::string text = cam::testing::read_data("bounded_reader.ml");
    ProgramUnit unit = parse_program(text, "bounded_reader.ml");
    CommitDiff diff = cam::testing::load_diff("bounded_reader.diff");
    auto foms = generate_foms(unit, diff, {});

    MutgenOptions capped;
    capped.hom_cap = 2;
    capped.seed = 9;
    auto pairs = pair_homs(unit, foms, capped);
    auto again = pair_homs(unit, foms, capped);
    ASSERT_EQ(pairs.size(), again.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        EXPECT_EQ(pairs[i].x, again[i].x);
        EXPECT_EQ(pairs[i].y, again[i].y);
    }

    // the outside mutants that survive sampling sit at most cap-deep per
    // statement line (every target on one line here shares its statement)
    std::map<int, std::set<int>> retained_by_line;
    std::map<int, const Mutant*> by_id;
    for (const Mutant& m : foms) by_id[m.id] = &m;
    for (const HomPair& pair : pairs)
        retained_by_line[by_id.at(pair.x)->span.start_line].insert(pair.x);

    auto uncapped = pair_homs(unit, foms, {});
    EXPECT_LT(pairs.size(), uncapped.size());

    std::set<int> survivors;
    for (const HomPair& pair : pairs) survivors.insert(pair.x);
    std::set<int> all_outside;
    for (const HomPair& pair : uncapped) all_outside.insert(pair.x);
    for (int id : survivors) EXPECT_TRUE(all_outside.count(id));
}
