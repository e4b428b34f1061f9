#include "cam/interpreter.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <utility>

#include "cam/errors.hpp"
#include "cam/parser.hpp"

namespace cam {

const char* run_status_name(RunStatus status) {
    switch (status) {
        case RunStatus::Pass: return "Pass";
        case RunStatus::AssertionFailure: return "AssertionFailure";
        case RunStatus::RuntimeError: return "RuntimeError";
        case RunStatus::Timeout: return "Timeout";
    }
    return "?";
}

const char* error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::None: return "None";
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::IndexOutOfBounds: return "IndexOutOfBounds";
        case ErrorKind::TypeError: return "TypeError";
        case ErrorKind::UndefinedVariable: return "UndefinedVariable";
        case ErrorKind::Redeclaration: return "Redeclaration";
        case ErrorKind::UnknownFunction: return "UnknownFunction";
        case ErrorKind::ArityMismatch: return "ArityMismatch";
        case ErrorKind::RecursionLimit: return "RecursionLimit";
        case ErrorKind::MissingReturn: return "MissingReturn";
    }
    return "?";
}

namespace {

constexpr std::size_t k_max_call_depth = 256;

struct RuntimeSignal {
    ErrorKind kind;
    std::string message;
};

struct TimeoutSignal {};

struct AssertionFailSignal {};

std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) +
                                     static_cast<std::uint64_t>(b));
}

std::int64_t wrap_sub(std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) -
                                     static_cast<std::uint64_t>(b));
}

std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) *
                                     static_cast<std::uint64_t>(b));
}

std::int64_t wrap_neg(std::int64_t a) {
    return static_cast<std::int64_t>(0ULL - static_cast<std::uint64_t>(a));
}

struct FnEntry {
    const FnDef* def;
    NodeId offset;
};

class Interpreter {
  public:
    Interpreter(std::size_t coverage_size, std::size_t step_budget)
        : covered_(coverage_size, false), budget_(step_budget) {}

    void add_functions(const ProgramUnit& unit, NodeId offset) {
        for (const auto& fn : unit.functions) {
            auto [_, inserted] = fns_.emplace(fn.name, FnEntry{&fn, offset});
            if (!inserted) throw DuplicateFunctionError(fn.name);
        }
    }

    void set_test_name(std::string name) { test_name_ = std::move(name); }

    // Runs a test body in its own frame; asserts are recorded as they execute.
    void run_body(const FnDef& fn, NodeId offset) {
        Frame frame;
        frame.offset = offset;
        frame.scopes.emplace_back();
        frames_.push_back(std::move(frame));
        touch(fn.id);
        exec_block(fn.body);
        frames_.pop_back();
    }

    Value call_function(const std::string& name, std::vector<Value> args) {
        auto it = fns_.find(name);
        if (it == fns_.end())
            throw RuntimeSignal{ErrorKind::UnknownFunction, "unknown function " + name};
        return invoke(it->second, std::move(args));
    }

    const std::vector<AssertionRecord>& records() const { return records_; }
    std::vector<bool> take_covered() { return std::move(covered_); }
    std::size_t steps() const { return steps_; }
    std::optional<int> faulted_ordinal() const { return current_assert_; }

  private:
    struct Frame {
        NodeId offset = 0;
        std::vector<std::unordered_map<std::string, Value>> scopes;
    };

    std::unordered_map<std::string, FnEntry> fns_;
    std::vector<Frame> frames_;
    std::vector<AssertionRecord> records_;
    std::vector<bool> covered_;
    std::size_t budget_;
    std::size_t steps_ = 0;
    std::optional<int> current_assert_;
    std::string test_name_;

    Frame& frame() { return frames_.back(); }

    // Charges one step and marks coverage. Ids inserted by mutation are
    // negative and stay out of the coverage vector.
    void touch(NodeId id) {
        ++steps_;
        if (steps_ > budget_) throw TimeoutSignal{};
        NodeId global = id + frame().offset;
        if (id >= 0 && static_cast<std::size_t>(global) < covered_.size())
            covered_[global] = true;
    }

    [[noreturn]] void fail(ErrorKind kind, std::string message) {
        throw RuntimeSignal{kind, std::move(message)};
    }

    std::int64_t expect_int(const Value& value, const char* what) {
        if (!value.is_int())
            fail(ErrorKind::TypeError,
                 std::string(what) + " must be an integer, got " + value.type_name());
        return value.as_int();
    }

    bool expect_bool(const Value& value, const char* what) {
        if (!value.is_bool())
            fail(ErrorKind::TypeError,
                 std::string(what) + " must be a boolean, got " + value.type_name());
        return value.as_bool();
    }

    Value* lookup(const std::string& name) {
        auto& scopes = frame().scopes;
        for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
            auto found = it->find(name);
            if (found != it->end()) return &found->second;
        }
        return nullptr;
    }

    void declare(const std::string& name, Value value) {
        auto& scope = frame().scopes.back();
        if (!scope.emplace(name, std::move(value)).second)
            fail(ErrorKind::Redeclaration, "variable " + name + " already declared");
    }

    Value invoke(const FnEntry& entry, std::vector<Value> args) {
        if (args.size() != entry.def->params.size())
            fail(ErrorKind::ArityMismatch,
                 entry.def->name + " expects " + std::to_string(entry.def->params.size()) +
                     " arguments, got " + std::to_string(args.size()));
        if (frames_.size() >= k_max_call_depth)
            fail(ErrorKind::RecursionLimit, "call depth limit reached in " + entry.def->name);
        Frame frame;
        frame.offset = entry.offset;
        frame.scopes.emplace_back();
        for (std::size_t i = 0; i < args.size(); ++i)
            frame.scopes.back().emplace(entry.def->params[i], std::move(args[i]));
        frames_.push_back(std::move(frame));
        touch(entry.def->id);
        std::optional<Value> result = exec_block(entry.def->body);
        frames_.pop_back();
        if (!result)
            fail(ErrorKind::MissingReturn,
                 entry.def->name + " finished without returning a value");
        return std::move(*result);
    }

    // Returns the value of an executed `return`, or nullopt when the block
    // ran to completion.
    std::optional<Value> exec_block(const Block& block) {
        touch(block.id);
        frame().scopes.emplace_back();
        std::optional<Value> result;
        for (const auto& stmt : block.stmts) {
            result = exec_stmt(*stmt);
            if (result) break;
        }
        frame().scopes.pop_back();
        return result;
    }

    std::optional<Value> exec_stmt(const Stmt& stmt) {
        touch(stmt.id);
        return std::visit(
            overloaded{
                [&](const LetStmt& s) -> std::optional<Value> {
                    Value init = eval(*s.init);
                    declare(s.name, std::move(init));
                    return std::nullopt;
                },
                [&](const AssignStmt& s) -> std::optional<Value> {
                    if (s.index) {
                        Value index = eval(*s.index);
                        Value value = eval(*s.value);
                        Value* slot = lookup(s.target);
                        if (!slot)
                            fail(ErrorKind::UndefinedVariable,
                                 "undefined variable " + s.target);
                        if (!slot->is_array())
                            fail(ErrorKind::TypeError,
                                 s.target + " must be an array, got " + slot->type_name());
                        std::int64_t i = expect_int(index, "array index");
                        auto& elems = slot->as_array();
                        if (i < 0 || static_cast<std::size_t>(i) >= elems.size())
                            fail(ErrorKind::IndexOutOfBounds,
                                 "index " + std::to_string(i) + " out of bounds for length " +
                                     std::to_string(elems.size()));
                        elems[static_cast<std::size_t>(i)] =
                            expect_int(value, "array element");
                        return std::nullopt;
                    }
                    Value value = eval(*s.value);
                    Value* slot = lookup(s.target);
                    if (!slot)
                        fail(ErrorKind::UndefinedVariable, "undefined variable " + s.target);
                    *slot = std::move(value);
                    return std::nullopt;
                },
                [&](const IfStmt& s) -> std::optional<Value> {
                    bool cond = expect_bool(eval(*s.cond), "if condition");
                    if (cond) return exec_block(s.then_block);
                    if (s.else_block) return exec_block(*s.else_block);
                    return std::nullopt;
                },
                [&](const WhileStmt& s) -> std::optional<Value> {
                    while (expect_bool(eval(*s.cond), "while condition")) {
                        if (auto result = exec_block(s.body)) return result;
                    }
                    return std::nullopt;
                },
                [&](const ForStmt& s) -> std::optional<Value> {
                    frame().scopes.emplace_back();
                    std::optional<Value> result;
                    if (s.init) result = exec_stmt(*s.init);
                    while (!result) {
                        if (s.cond && !expect_bool(eval(*s.cond), "for condition")) break;
                        result = exec_block(s.body);
                        if (result) break;
                        if (s.step) result = exec_stmt(*s.step);
                    }
                    frame().scopes.pop_back();
                    return result;
                },
                [&](const ReturnStmt& s) -> std::optional<Value> {
                    if (!s.value)
                        fail(ErrorKind::MissingReturn, "return without a value");
                    return eval(*s.value);
                },
                [&](const ExprStmt& s) -> std::optional<Value> {
                    eval(*s.expr);
                    return std::nullopt;
                },
                [&](const AssertStmt& s) -> std::optional<Value> {
                    int ordinal = static_cast<int>(records_.size()) + 1;
                    current_assert_ = ordinal;
                    Value expected = eval(*s.expected);
                    Value actual = eval(*s.actual);
                    current_assert_.reset();
                    AssertionRecord record;
                    record.assertion_id = test_name_ + "#" + std::to_string(ordinal);
                    record.expected = std::move(expected);
                    record.actual = std::move(actual);
                    record.passed = record.expected == record.actual;
                    records_.push_back(std::move(record));
                    if (!records_.back().passed) throw AssertionFailSignal{};
                    return std::nullopt;
                },
                [&](const SkipStmt&) -> std::optional<Value> { return std::nullopt; },
            },
            stmt.node);
    }

    Value eval(const Expr& expr) {
        touch(expr.id);
        return std::visit(
            overloaded{
                [&](const IntLit& e) { return Value::integer(e.value); },
                [&](const BoolLit& e) { return Value::boolean(e.value); },
                [&](const VarRead& e) {
                    Value* slot = lookup(e.name);
                    if (!slot)
                        fail(ErrorKind::UndefinedVariable, "undefined variable " + e.name);
                    return *slot;
                },
                [&](const ArrayLit& e) {
                    std::vector<std::int64_t> elems;
                    elems.reserve(e.elements.size());
                    for (const auto& elem : e.elements)
                        elems.push_back(expect_int(eval(*elem), "array element"));
                    return Value::array(std::move(elems));
                },
                [&](const IndexExpr& e) {
                    Value array = eval(*e.array);
                    if (!array.is_array())
                        fail(ErrorKind::TypeError,
                             std::string("indexed value must be an array, got ") +
                                 array.type_name());
                    std::int64_t i = expect_int(eval(*e.index), "array index");
                    const auto& elems = array.as_array();
                    if (i < 0 || static_cast<std::size_t>(i) >= elems.size())
                        fail(ErrorKind::IndexOutOfBounds,
                             "index " + std::to_string(i) + " out of bounds for length " +
                                 std::to_string(elems.size()));
                    return Value::integer(elems[static_cast<std::size_t>(i)]);
                },
                [&](const UnaryExpr& e) { return eval_unary(e); },
                [&](const BinaryExpr& e) { return eval_binary(e); },
                [&](const CallExpr& e) { return eval_call_expr(e); },
            },
            expr.node);
    }

    Value eval_unary(const UnaryExpr& e) {
        switch (e.op) {
            case UnaryOp::Neg:
                return Value::integer(wrap_neg(expect_int(eval(*e.operand), "operand of -")));
            case UnaryOp::Not:
                return Value::boolean(!expect_bool(eval(*e.operand), "operand of !"));
            case UnaryOp::PreInc:
            case UnaryOp::PreDec: {
                const auto* var = std::get_if<VarRead>(&e.operand->node);
                if (!var)
                    fail(ErrorKind::TypeError, std::string("operand of ") +
                                                   unary_op_token(e.op) +
                                                   " must be a variable");
                touch(e.operand->id);
                Value* slot = lookup(var->name);
                if (!slot)
                    fail(ErrorKind::UndefinedVariable, "undefined variable " + var->name);
                std::int64_t delta = e.op == UnaryOp::PreInc ? 1 : -1;
                std::int64_t next =
                    wrap_add(expect_int(*slot, "incremented variable"), delta);
                *slot = Value::integer(next);
                return Value::integer(next);
            }
        }
        fail(ErrorKind::TypeError, "bad unary operator");
    }

    Value eval_binary(const BinaryExpr& e) {
        if (e.op == BinaryOp::LogicalAnd || e.op == BinaryOp::LogicalOr) {
            bool lhs = expect_bool(eval(*e.lhs), "operand of logical operator");
            if (e.op == BinaryOp::LogicalAnd && !lhs) return Value::boolean(false);
            if (e.op == BinaryOp::LogicalOr && lhs) return Value::boolean(true);
            return Value::boolean(expect_bool(eval(*e.rhs), "operand of logical operator"));
        }
        Value lhs = eval(*e.lhs);
        Value rhs = eval(*e.rhs);
        if (e.op == BinaryOp::Eq) return Value::boolean(lhs == rhs);
        if (e.op == BinaryOp::Ne) return Value::boolean(!(lhs == rhs));

        const char* what = "operand of binary operator";
        std::int64_t a = expect_int(lhs, what);
        std::int64_t b = expect_int(rhs, what);
        switch (e.op) {
            case BinaryOp::Add: return Value::integer(wrap_add(a, b));
            case BinaryOp::Sub: return Value::integer(wrap_sub(a, b));
            case BinaryOp::Mul: return Value::integer(wrap_mul(a, b));
            case BinaryOp::Div:
                if (b == 0) fail(ErrorKind::DivisionByZero, "division by zero");
                if (a == std::numeric_limits<std::int64_t>::min() && b == -1)
                    return Value::integer(a);
                return Value::integer(a / b);
            case BinaryOp::Mod:
                if (b == 0) fail(ErrorKind::DivisionByZero, "modulo by zero");
                if (a == std::numeric_limits<std::int64_t>::min() && b == -1)
                    return Value::integer(0);
                return Value::integer(a % b);
            case BinaryOp::Lt: return Value::boolean(a < b);
            case BinaryOp::Le: return Value::boolean(a <= b);
            case BinaryOp::Gt: return Value::boolean(a > b);
            case BinaryOp::Ge: return Value::boolean(a >= b);
            case BinaryOp::BitAnd: return Value::integer(a & b);
            case BinaryOp::BitOr: return Value::integer(a | b);
            case BinaryOp::BitXor: return Value::integer(a ^ b);
            default: fail(ErrorKind::TypeError, "bad binary operator");
        }
    }

    Value eval_call_expr(const CallExpr& e) {
        std::vector<Value> args;
        args.reserve(e.args.size());
        for (const auto& arg : e.args) args.push_back(eval(*arg));
        auto it = fns_.find(e.callee);
        if (it != fns_.end()) return invoke(it->second, std::move(args));
        if (e.callee == "sort") {
            if (args.size() != 1)
                fail(ErrorKind::ArityMismatch,
                     "sort expects 1 argument, got " + std::to_string(args.size()));
            if (!args[0].is_array())
                fail(ErrorKind::TypeError, std::string("sort expects an array, got ") +
                                               args[0].type_name());
            std::vector<std::int64_t> copy = args[0].as_array();
            std::sort(copy.begin(), copy.end());
            return Value::array(std::move(copy));
        }
        fail(ErrorKind::UnknownFunction, "unknown function " + e.callee);
    }
};

} // namespace

std::vector<std::string> list_tests(const ProgramUnit& tests) {
    std::vector<std::string> names;
    for (const auto& fn : tests.functions)
        if (is_test_function(fn.name)) names.push_back(fn.name);
    return names;
}

std::vector<AssertionSite> assertion_sites(const ProgramUnit& tests,
                                           const std::string& test_name) {
    const FnDef* fn = tests.find_function(test_name);
    if (!fn) throw Error("unknown test function " + test_name);
    std::vector<AssertionSite> sites;
    for (const auto& stmt : fn->body.stmts) {
        if (!std::holds_alternative<AssertStmt>(stmt->node)) continue;
        AssertionSite site;
        site.test_name = test_name;
        site.ordinal = static_cast<int>(sites.size()) + 1;
        site.assertion_id = test_name + "#" + std::to_string(site.ordinal);
        site.node = stmt->id;
        sites.push_back(std::move(site));
    }
    return sites;
}

TestOutcome run_test(const ProgramUnit& subject, const ProgramUnit& tests,
                     const std::string& test_name, const RunOptions& options) {
    const FnDef* fn = tests.find_function(test_name);
    if (!fn || !is_test_function(test_name))
        throw Error("unknown test function " + test_name);

    NodeId test_offset = subject.node_count;
    Interpreter interp(static_cast<std::size_t>(subject.node_count + tests.node_count),
                       options.step_budget);
    interp.add_functions(subject, 0);
    interp.add_functions(tests, test_offset);
    interp.set_test_name(test_name);

    TestOutcome out;
    out.test_name = test_name;
    try {
        interp.run_body(*fn, test_offset);
        out.status = RunStatus::Pass;
    } catch (const AssertionFailSignal&) {
        const AssertionRecord& record = interp.records().back();
        out.status = RunStatus::AssertionFailure;
        out.message = record.assertion_id + ": expected " + record.expected.to_string() +
                      ", got " + record.actual.to_string();
    } catch (const RuntimeSignal& sig) {
        out.status = RunStatus::RuntimeError;
        out.error = sig.kind;
        out.message = sig.message;
        if (auto ordinal = interp.faulted_ordinal())
            out.faulted_assertion = {test_name + "#" + std::to_string(*ordinal),
                                     error_kind_name(sig.kind)};
    } catch (const TimeoutSignal&) {
        out.status = RunStatus::Timeout;
        out.message = "step budget exhausted";
        if (auto ordinal = interp.faulted_ordinal())
            out.faulted_assertion = {test_name + "#" + std::to_string(*ordinal), "Timeout"};
    }
    out.assertions = interp.records();
    out.covered = interp.take_covered();
    out.steps_used = interp.steps();
    return out;
}

CallResult eval_call(const ProgramUnit& subject, const std::string& function,
                     const std::vector<Value>& args, const RunOptions& options) {
    Interpreter interp(static_cast<std::size_t>(subject.node_count), options.step_budget);
    interp.add_functions(subject, 0);
    CallResult result;
    try {
        result.value = interp.call_function(function, args);
        result.status = RunStatus::Pass;
    } catch (const RuntimeSignal& sig) {
        result.status = RunStatus::RuntimeError;
        result.error = sig.kind;
    } catch (const TimeoutSignal&) {
        result.status = RunStatus::Timeout;
    } catch (const AssertionFailSignal&) {
        result.status = RunStatus::AssertionFailure;
    }
    return result;
}

} // namespace cam
