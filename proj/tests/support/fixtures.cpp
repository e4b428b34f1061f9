#include "fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cam/artifacts.hpp"
#include "cam/interpreter.hpp"
#include "cam/printer.hpp"
#include "cam/rng.hpp"

namespace cam::testing {

std::string data_path(const std::string& name) {
    return std::string(CAM_TEST_DATA_DIR) + "/" + name;
}

std::string read_data(const std::string& name) { return read_text_file(data_path(name)); }

ProgramUnit load_subject(const std::string& name) {
    ProgramUnit unit = parse_program(read_data(name), name);
    validate_subject(unit);
    return unit;
}

ProgramUnit load_tests(const std::string& name) {
    ProgramUnit unit = parse_program(read_data(name), name);
    validate_tests(unit);
    return unit;
}

CommitDiff load_diff(const std::string& name) { return parse_unified_diff(read_data(name)); }

namespace {

void walk_expr(const Expr& expr, const std::function<void(const Expr&)>& fn) {
    fn(expr);
    std::visit(overloaded{
                   [&](const IntLit&) {},
                   [&](const BoolLit&) {},
                   [&](const VarRead&) {},
                   [&](const ArrayLit& node) {
                       for (const ExprPtr& e : node.elements) walk_expr(*e, fn);
                   },
                   [&](const IndexExpr& node) {
                       walk_expr(*node.array, fn);
                       walk_expr(*node.index, fn);
                   },
                   [&](const UnaryExpr& node) { walk_expr(*node.operand, fn); },
                   [&](const BinaryExpr& node) {
                       walk_expr(*node.lhs, fn);
                       walk_expr(*node.rhs, fn);
                   },
                   [&](const CallExpr& node) {
                       for (const ExprPtr& e : node.args) walk_expr(*e, fn);
                   },
               },
               expr.node);
}

void walk_block(const Block& block, const std::function<void(const Stmt&)>& sfn,
                const std::function<void(const Expr&)>& efn);

void walk_stmt(const Stmt& stmt, const std::function<void(const Stmt&)>& sfn,
               const std::function<void(const Expr&)>& efn) {
    sfn(stmt);
    std::visit(overloaded{
                   [&](const LetStmt& node) { walk_expr(*node.init, efn); },
                   [&](const AssignStmt& node) {
                       if (node.index) walk_expr(*node.index, efn);
                       walk_expr(*node.value, efn);
                   },
                   [&](const IfStmt& node) {
                       walk_expr(*node.cond, efn);
                       walk_block(node.then_block, sfn, efn);
                       if (node.else_block) walk_block(*node.else_block, sfn, efn);
                   },
                   [&](const WhileStmt& node) {
                       walk_expr(*node.cond, efn);
                       walk_block(node.body, sfn, efn);
                   },
                   [&](const ForStmt& node) {
                       if (node.init) walk_stmt(*node.init, sfn, efn);
                       if (node.cond) walk_expr(*node.cond, efn);
                       if (node.step) walk_stmt(*node.step, sfn, efn);
                       walk_block(node.body, sfn, efn);
                   },
                   [&](const ReturnStmt& node) {
                       if (node.value) walk_expr(*node.value, efn);
                   },
                   [&](const ExprStmt& node) { walk_expr(*node.expr, efn); },
                   [&](const AssertStmt& node) {
                       walk_expr(*node.expected, efn);
                       walk_expr(*node.actual, efn);
                   },
                   [&](const SkipStmt&) {},
               },
               stmt.node);
}

void walk_block(const Block& block, const std::function<void(const Stmt&)>& sfn,
                const std::function<void(const Expr&)>& efn) {
    for (const StmtPtr& stmt : block.stmts) walk_stmt(*stmt, sfn, efn);
}

void walk_unit(const ProgramUnit& program, const std::function<void(const Stmt&)>& sfn,
               const std::function<void(const Expr&)>& efn) {
    for (const FnDef& fn : program.functions) walk_block(fn.body, sfn, efn);
}

} // namespace

std::vector<const Expr*> collect_exprs(const ProgramUnit& program,
                                       const std::function<bool(const Expr&)>& pred) {
    std::vector<const Expr*> out;
    walk_unit(
        program, [](const Stmt&) {},
        [&](const Expr& expr) {
            if (pred(expr)) out.push_back(&expr);
        });
    return out;
}

std::vector<const Stmt*> collect_stmts(const ProgramUnit& program,
                                       const std::function<bool(const Stmt&)>& pred) {
    std::vector<const Stmt*> out;
    walk_unit(
        program,
        [&](const Stmt& stmt) {
            if (pred(stmt)) out.push_back(&stmt);
        },
        [](const Expr&) {});
    return out;
}

const Expr* first_expr(const ProgramUnit& program,
                       const std::function<bool(const Expr&)>& pred) {
    std::vector<const Expr*> all = collect_exprs(program, pred);
    return all.empty() ? nullptr : all.front();
}

const Stmt* first_stmt(const ProgramUnit& program,
                       const std::function<bool(const Stmt&)>& pred) {
    std::vector<const Stmt*> all = collect_stmts(program, pred);
    return all.empty() ? nullptr : all.front();
}

Mutant constant_mutant(int id, const Expr& target, std::int64_t value,
                       const CommitDiff& diff) {
    Mutant m;
    m.id = id;
    m.op = MutationOperator::CRCR;
    m.edit = ReplaceWithIntConstant{value};
    m.target = target.id;
    m.anchor = target.id;
    m.span = target.span;
    m.original = print_expr(target);
    m.replacement = std::to_string(value);
    m.location = classify(target.span, diff);
    return m;
}

namespace {

bool is_var_read(const Expr& expr, const std::string& name, int line) {
    const auto* read = std::get_if<VarRead>(&expr.node);
    return read && read->name == name && expr.span.start_line == line;
}

bool is_binary_at(const Expr& expr, BinaryOp op, int line) {
    const auto* bin = std::get_if<BinaryExpr>(&expr.node);
    return bin && bin->op == op && expr.span.start_line == line;
}

const Mutant& generated_mutant(const std::vector<Mutant>& catalog, MutationOperator op,
                               int line, const std::string& replacement) {
    const Mutant* found = nullptr;
    for (const Mutant& m : catalog) {
        if (m.op != op || m.span.start_line != line || m.replacement != replacement)
            continue;
        if (!found || m.target < found->target) found = &m;
    }
    if (!found) throw std::logic_error("fixture mutant not found in generated catalog");
    return *found;
}

} // namespace

ReaderFixture reader_fixture() {
    ReaderFixture fx;
    fx.subject = load_subject("bounded_reader.ml");
    fx.tests = load_tests("bounded_reader.mlt");
    fx.diff = load_diff("bounded_reader.diff");

    std::vector<Mutant> catalog = generate_foms(fx.subject, fx.diff, {});

    Mutant m1 = generated_mutant(catalog, MutationOperator::ROR, 142, "i != 0");
    const Expr* len_read =
        first_expr(fx.subject, [](const Expr& e) { return is_var_read(e, "len", 139); });
    if (!len_read) throw std::logic_error("loop bound read not found");
    Mutant m2 = constant_mutant(2, *len_read, 0, fx.diff);
    Mutant m3 = generated_mutant(catalog, MutationOperator::UOI, 139, "++i");
    Mutant m4 = generated_mutant(catalog, MutationOperator::SDL, 140, ";");

    m1.id = 1;
    m3.id = 3;
    m4.id = 4;
    fx.foms = {m1, m2, m3, m4};
    fx.pairs = pair_homs(fx.subject, fx.foms, {});
    return fx;
}

namespace {

ScenarioFixture make_scenario(const std::string& subject_text, const std::string& test_text,
                              const std::string& diff_text, BinaryOp outside_op,
                              int outside_line, BinaryOp on_change_op, int on_change_line) {
    ScenarioFixture fx;
    fx.subject = parse_program(subject_text, "scenario.ml");
    validate_subject(fx.subject);
    fx.tests = parse_program(test_text, "scenario.mlt");
    validate_tests(fx.tests);
    fx.diff = parse_unified_diff(diff_text);

    const Expr* outside = first_expr(
        fx.subject, [&](const Expr& e) { return is_binary_at(e, outside_op, outside_line); });
    const Expr* on_change = first_expr(fx.subject, [&](const Expr& e) {
        return is_binary_at(e, on_change_op, on_change_line);
    });
    if (!outside || !on_change) throw std::logic_error("scenario targets not found");

    fx.foms = {constant_mutant(1, *outside, 0, fx.diff),
               constant_mutant(2, *on_change, 1, fx.diff)};
    if (fx.foms[0].location != LocationClass::OutsideChange ||
        fx.foms[1].location != LocationClass::OnChange)
        throw std::logic_error("scenario classification is off");
    fx.pairs = pair_homs(fx.subject, fx.foms, {});
    return fx;
}

const char* k_scenario_test = R"(fn test_fun() {
    let z = [0, 3, 3];
    let k = [0, 2, 3];
    assert_eq(%RESULT%, fun(z, k));
}
)";

std::string scenario_test(std::int64_t result) {
    std::string text = k_scenario_test;
    std::string token = "%RESULT%";
    text.replace(text.find(token), token.size(), std::to_string(result));
    return text;
}

} // namespace

ScenarioFixture interacting_scenario() {
    // combined: r=0, l=1 takes the r<l branch, unlike either mutant alone
    std::string subject = R"(fn fun(z, k) {
    sort(z);
    sort(k);
    let r = z[1] - k[1];
    let l = 0;
    l = k[0] - k[1];
    if (r < l) {
        return r - l;
    }
    return r * l;
}
)";
    std::string diff = R"(--- a/scenario.ml
+++ b/scenario.ml
@@ -6,1 +6,1 @@
-    l = k[0] + k[1];
+    l = k[0] - k[1];
)";
    return make_scenario(subject, scenario_test(-2), diff, BinaryOp::Sub, 4, BinaryOp::Sub, 6);
}

ScenarioFixture shadowed_scenario() {
    // the on-change mutant routes the result through l alone, hiding r
    std::string subject = R"(fn fun(z, k) {
    sort(z);
    sort(k);
    let r = z[0] - k[2];
    let l = 0;
    l = k[0] - k[1];
    if (l > 0) {
        return l;
    }
    return r;
}
)";
    std::string diff = R"(--- a/scenario.ml
+++ b/scenario.ml
@@ -6,1 +6,1 @@
-    l = k[0] + k[1];
+    l = k[0] - k[1];
)";
    return make_scenario(subject, scenario_test(-3), diff, BinaryOp::Sub, 4, BinaryOp::Sub, 6);
}

ScenarioFixture unreachable_scenario() {
    // the test drives execution down the changed branch; the outside mutant
    // lives on the branch not taken, and with the branch taken it never runs
    std::string subject = R"(fn fun(z, k) {
    sort(z);
    sort(k);
    if (z[2] > k[0]) {
        return k[2] - z[0];
    }
    return z[1] * k[1];
}
)";
    std::string diff = R"(--- a/scenario.ml
+++ b/scenario.ml
@@ -5,1 +5,1 @@
-        return k[2] + z[0];
+        return k[2] - z[0];
)";
    return make_scenario(subject, scenario_test(3), diff, BinaryOp::Mul, 7, BinaryOp::Sub, 5);
}

namespace {

const char* k_arith_menu[] = {"+", "-", "*"};
const char* k_rel_menu[] = {"<", "<=", ">", ">=", "==", "!="};

std::string arith(std::mt19937_64& rng) { return k_arith_menu[bounded(rng, 3)]; }
std::string rel(std::mt19937_64& rng) { return k_rel_menu[bounded(rng, 6)]; }
std::int64_t small_const(std::mt19937_64& rng) {
    return static_cast<std::int64_t>(bounded(rng, 7)) + 1;
}

// a / c or a % c with a nonzero constant divisor stays total on the
// baseline while giving mutants a route to division errors
std::string divisory(std::mt19937_64& rng) { return bounded(rng, 2) ? "/" : "%"; }

std::string render_subject(std::mt19937_64& rng, bool with_sort, bool with_bits,
                           bool with_neg) {
    std::ostringstream out;
    out << "fn pick(u, v, w) {\n";
    out << "    if (u " << rel(rng) << " v) {\n";
    out << "        return u " << arith(rng) << " w;\n";
    out << "    }\n";
    out << "    return v " << arith(rng) << " " << small_const(rng) << ";\n";
    out << "}\n\n";
    out << "fn calc(a, b) {\n";
    if (with_sort) out << "    sort(a);\n";
    out << "    let t = a[0] " << arith(rng) << " " << small_const(rng) << ";\n";
    out << "    let u = pick(t, a[1], b);\n";
    if (with_bits)
        out << "    let m = (b & " << small_const(rng) << ") | " << small_const(rng)
            << ";\n";
    if (with_neg)
        out << "    let w = -(t " << arith(rng) << " " << small_const(rng) << ");\n";
    out << "    let s = 0;\n";
    out << "    for (let i = 0; i < 3; i = i + 1) {\n";
    out << "        s = s + a[i] " << arith(rng) << " " << small_const(rng) << ";\n";
    out << "    }\n";
    out << "    if (s " << rel(rng) << " u) {\n";
    out << "        s = s " << divisory(rng) << " " << small_const(rng) << ";\n";
    out << "    }\n";
    out << "    return s " << arith(rng) << " u";
    if (with_bits) out << " + m";
    if (with_neg) out << " + w";
    out << ";\n";
    out << "}\n";
    return out.str();
}

std::vector<int> candidate_changed_lines(const std::string& text) {
    std::vector<int> lines;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        // statement lines inside calc make useful changes; skip braces,
        // blanks and headers
        if (line.find("let ") != std::string::npos ||
            line.find("s = ") != std::string::npos ||
            line.find("return") != std::string::npos)
            lines.push_back(number);
    }
    return lines;
}

std::string line_of(const std::string& text, int number) {
    std::istringstream in(text);
    std::string line;
    for (int i = 0; i < number; ++i) std::getline(in, line);
    return line;
}

} // namespace

GeneratedFixture make_random_fixture(std::uint64_t seed, std::size_t max_foms,
                                     int max_tests) {
    GeneratedFixture fx;
    auto rng = make_rng(seed);

    fx.subject_text = render_subject(rng, bounded(rng, 2) == 0, bounded(rng, 2) == 0,
                                     bounded(rng, 2) == 0);
    fx.subject = parse_program(fx.subject_text, "random.ml");
    validate_subject(fx.subject);

    std::vector<int> candidates = candidate_changed_lines(fx.subject_text);
    int changed = candidates[bounded(rng, candidates.size())];
    std::ostringstream diff;
    diff << "--- a/random.ml\n+++ b/random.ml\n";
    diff << "@@ -" << changed << ",1 +" << changed << ",1 @@\n";
    diff << "-" << line_of(fx.subject_text, changed) << " \n";
    diff << "+" << line_of(fx.subject_text, changed) << "\n";
    fx.diff_text = diff.str();
    fx.diff = parse_unified_diff(fx.diff_text);

    // grow the operator set greedily while the catalog stays within bounds
    std::vector<MutationOperator> families = all_mutation_operators();
    for (std::size_t i = families.size(); i > 1; --i)
        std::swap(families[i - 1], families[bounded(rng, i)]);
    MutgenOptions gen;
    gen.seed = seed;
    std::vector<Mutant> chosen;
    for (MutationOperator family : families) {
        MutgenOptions attempt = gen;
        attempt.operators = gen.operators;
        attempt.operators.push_back(family);
        std::vector<Mutant> catalog = generate_foms(fx.subject, fx.diff, attempt);
        if (catalog.size() <= max_foms) {
            gen.operators = attempt.operators;
            chosen = std::move(catalog);
        }
    }
    if (gen.operators.empty()) {
        gen.operators = {MutationOperator::SDL};
        chosen = generate_foms(fx.subject, fx.diff, gen);
    }
    fx.foms = std::move(chosen);
    fx.pairs = pair_homs(fx.subject, fx.foms, gen);

    // tests with expected values read off the subject itself, so the
    // baseline is green by construction
    int tests = 2 + static_cast<int>(bounded(rng, static_cast<std::uint64_t>(max_tests - 1)));
    std::ostringstream body;
    for (int t = 0; t < tests; ++t) {
        std::vector<std::int64_t> a = {static_cast<std::int64_t>(bounded(rng, 15)) - 5,
                                       static_cast<std::int64_t>(bounded(rng, 15)) - 5,
                                       static_cast<std::int64_t>(bounded(rng, 15)) - 5};
        std::int64_t b = static_cast<std::int64_t>(bounded(rng, 13)) - 3;
        CallResult expected =
            eval_call(fx.subject, "calc", {Value::array(a), Value::integer(b)});
        if (expected.status != RunStatus::Pass)
            throw std::logic_error("generated subject faulted on baseline input");
        body << "fn test_rand_" << t << "() {\n";
        body << "    let a = [" << a[0] << ", " << a[1] << ", " << a[2] << "];\n";
        body << "    let r = calc(a, " << b << ");\n";
        body << "    assert_eq(" << expected.value.to_string() << ", r);\n";
        body << "}\n";
        if (t + 1 < tests) body << "\n";
    }
    fx.tests_text = body.str();
    fx.tests = parse_program(fx.tests_text, "random.mlt");
    validate_tests(fx.tests);
    return fx;
}

} // namespace cam::testing
