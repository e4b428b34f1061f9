#include "cam/ast.hpp"

namespace cam {

const char* binary_op_token(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Mul: return "*";
        case BinaryOp::Div: return "/";
        case BinaryOp::Mod: return "%";
        case BinaryOp::Eq: return "==";
        case BinaryOp::Ne: return "!=";
        case BinaryOp::Lt: return "<";
        case BinaryOp::Le: return "<=";
        case BinaryOp::Gt: return ">";
        case BinaryOp::Ge: return ">=";
        case BinaryOp::LogicalAnd: return "&&";
        case BinaryOp::LogicalOr: return "||";
        case BinaryOp::BitAnd: return "&";
        case BinaryOp::BitOr: return "|";
        case BinaryOp::BitXor: return "^";
    }
    return "?";
}

const char* unary_op_token(UnaryOp op) {
    switch (op) {
        case UnaryOp::Neg: return "-";
        case UnaryOp::Not: return "!";
        case UnaryOp::PreInc: return "++";
        case UnaryOp::PreDec: return "--";
    }
    return "?";
}

bool is_relational(BinaryOp op) {
    switch (op) {
        case BinaryOp::Eq:
        case BinaryOp::Ne:
        case BinaryOp::Lt:
        case BinaryOp::Le:
        case BinaryOp::Gt:
        case BinaryOp::Ge: return true;
        default: return false;
    }
}

bool is_arithmetic(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add:
        case BinaryOp::Sub:
        case BinaryOp::Mul:
        case BinaryOp::Div:
        case BinaryOp::Mod: return true;
        default: return false;
    }
}

const FnDef* ProgramUnit::find_function(const std::string& name) const {
    for (const auto& fn : functions)
        if (fn.name == name) return &fn;
    return nullptr;
}

// ---- clone ----

ExprPtr clone(const Expr& expr) {
    auto out = std::make_unique<Expr>();
    out->id = expr.id;
    out->span = expr.span;
    out->node = std::visit(
        overloaded{
            [](const IntLit& e) -> decltype(out->node) { return IntLit{e.value}; },
            [](const BoolLit& e) -> decltype(out->node) { return BoolLit{e.value}; },
            [](const VarRead& e) -> decltype(out->node) { return VarRead{e.name}; },
            [](const ArrayLit& e) -> decltype(out->node) {
                ArrayLit lit;
                lit.elements.reserve(e.elements.size());
                for (const auto& elem : e.elements) lit.elements.push_back(clone(*elem));
                return lit;
            },
            [](const IndexExpr& e) -> decltype(out->node) {
                return IndexExpr{clone(*e.array), clone(*e.index)};
            },
            [](const UnaryExpr& e) -> decltype(out->node) {
                return UnaryExpr{e.op, clone(*e.operand)};
            },
            [](const BinaryExpr& e) -> decltype(out->node) {
                return BinaryExpr{e.op, clone(*e.lhs), clone(*e.rhs)};
            },
            [](const CallExpr& e) -> decltype(out->node) {
                CallExpr call;
                call.callee = e.callee;
                call.args.reserve(e.args.size());
                for (const auto& arg : e.args) call.args.push_back(clone(*arg));
                return call;
            },
        },
        expr.node);
    return out;
}

StmtPtr clone(const Stmt& stmt) {
    auto out = std::make_unique<Stmt>();
    out->id = stmt.id;
    out->span = stmt.span;
    out->node = std::visit(
        overloaded{
            [](const LetStmt& s) -> decltype(out->node) {
                return LetStmt{s.name, clone(*s.init)};
            },
            [](const AssignStmt& s) -> decltype(out->node) {
                return AssignStmt{s.target, s.index ? clone(*s.index) : nullptr,
                                  clone(*s.value)};
            },
            [](const IfStmt& s) -> decltype(out->node) {
                IfStmt copy{clone(*s.cond), clone(s.then_block), std::nullopt};
                if (s.else_block) copy.else_block = clone(*s.else_block);
                return copy;
            },
            [](const WhileStmt& s) -> decltype(out->node) {
                return WhileStmt{clone(*s.cond), clone(s.body)};
            },
            [](const ForStmt& s) -> decltype(out->node) {
                return ForStmt{s.init ? clone(*s.init) : nullptr,
                               s.cond ? clone(*s.cond) : nullptr,
                               s.step ? clone(*s.step) : nullptr, clone(s.body)};
            },
            [](const ReturnStmt& s) -> decltype(out->node) {
                return ReturnStmt{s.value ? clone(*s.value) : nullptr};
            },
            [](const ExprStmt& s) -> decltype(out->node) {
                return ExprStmt{clone(*s.expr)};
            },
            [](const AssertStmt& s) -> decltype(out->node) {
                return AssertStmt{clone(*s.expected), clone(*s.actual)};
            },
            [](const SkipStmt&) -> decltype(out->node) { return SkipStmt{}; },
        },
        stmt.node);
    return out;
}

Block clone(const Block& block) {
    Block out;
    out.id = block.id;
    out.span = block.span;
    out.stmts.reserve(block.stmts.size());
    for (const auto& stmt : block.stmts) out.stmts.push_back(clone(*stmt));
    return out;
}

ProgramUnit clone(const ProgramUnit& program) {
    ProgramUnit out;
    out.file = program.file;
    out.node_count = program.node_count;
    out.functions.reserve(program.functions.size());
    for (const auto& fn : program.functions) {
        FnDef def;
        def.id = fn.id;
        def.span = fn.span;
        def.name = fn.name;
        def.params = fn.params;
        def.body = clone(fn.body);
        out.functions.push_back(std::move(def));
    }
    return out;
}

// ---- structural comparison ----

bool same_structure(const Block& a, const Block& b);

bool same_structure(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        overloaded{
            [&](const IntLit& x) { return x.value == std::get<IntLit>(b.node).value; },
            [&](const BoolLit& x) { return x.value == std::get<BoolLit>(b.node).value; },
            [&](const VarRead& x) { return x.name == std::get<VarRead>(b.node).name; },
            [&](const ArrayLit& x) {
                const auto& y = std::get<ArrayLit>(b.node);
                if (x.elements.size() != y.elements.size()) return false;
                for (std::size_t i = 0; i < x.elements.size(); ++i)
                    if (!same_structure(*x.elements[i], *y.elements[i])) return false;
                return true;
            },
            [&](const IndexExpr& x) {
                const auto& y = std::get<IndexExpr>(b.node);
                return same_structure(*x.array, *y.array) &&
                       same_structure(*x.index, *y.index);
            },
            [&](const UnaryExpr& x) {
                const auto& y = std::get<UnaryExpr>(b.node);
                return x.op == y.op && same_structure(*x.operand, *y.operand);
            },
            [&](const BinaryExpr& x) {
                const auto& y = std::get<BinaryExpr>(b.node);
                return x.op == y.op && same_structure(*x.lhs, *y.lhs) &&
                       same_structure(*x.rhs, *y.rhs);
            },
            [&](const CallExpr& x) {
                const auto& y = std::get<CallExpr>(b.node);
                if (x.callee != y.callee || x.args.size() != y.args.size()) return false;
                for (std::size_t i = 0; i < x.args.size(); ++i)
                    if (!same_structure(*x.args[i], *y.args[i])) return false;
                return true;
            },
        },
        a.node);
}

bool same_structure(const Stmt& a, const Stmt& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        overloaded{
            [&](const LetStmt& x) {
                const auto& y = std::get<LetStmt>(b.node);
                return x.name == y.name && same_structure(*x.init, *y.init);
            },
            [&](const AssignStmt& x) {
                const auto& y = std::get<AssignStmt>(b.node);
                if (x.target != y.target) return false;
                if (static_cast<bool>(x.index) != static_cast<bool>(y.index)) return false;
                if (x.index && !same_structure(*x.index, *y.index)) return false;
                return same_structure(*x.value, *y.value);
            },
            [&](const IfStmt& x) {
                const auto& y = std::get<IfStmt>(b.node);
                if (!same_structure(*x.cond, *y.cond)) return false;
                if (!same_structure(x.then_block, y.then_block)) return false;
                if (x.else_block.has_value() != y.else_block.has_value()) return false;
                return !x.else_block || same_structure(*x.else_block, *y.else_block);
            },
            [&](const WhileStmt& x) {
                const auto& y = std::get<WhileStmt>(b.node);
                return same_structure(*x.cond, *y.cond) && same_structure(x.body, y.body);
            },
            [&](const ForStmt& x) {
                const auto& y = std::get<ForStmt>(b.node);
                if (static_cast<bool>(x.init) != static_cast<bool>(y.init)) return false;
                if (x.init && !same_structure(*x.init, *y.init)) return false;
                if (static_cast<bool>(x.cond) != static_cast<bool>(y.cond)) return false;
                if (x.cond && !same_structure(*x.cond, *y.cond)) return false;
                if (static_cast<bool>(x.step) != static_cast<bool>(y.step)) return false;
                if (x.step && !same_structure(*x.step, *y.step)) return false;
                return same_structure(x.body, y.body);
            },
            [&](const ReturnStmt& x) {
                const auto& y = std::get<ReturnStmt>(b.node);
                if (static_cast<bool>(x.value) != static_cast<bool>(y.value)) return false;
                return !x.value || same_structure(*x.value, *y.value);
            },
            [&](const ExprStmt& x) {
                return same_structure(*x.expr, *std::get<ExprStmt>(b.node).expr);
            },
            [&](const AssertStmt& x) {
                const auto& y = std::get<AssertStmt>(b.node);
                return same_structure(*x.expected, *y.expected) &&
                       same_structure(*x.actual, *y.actual);
            },
            [&](const SkipStmt&) { return true; },
        },
        a.node);
}

bool same_structure(const Block& a, const Block& b) {
    if (a.stmts.size() != b.stmts.size()) return false;
    for (std::size_t i = 0; i < a.stmts.size(); ++i)
        if (!same_structure(*a.stmts[i], *b.stmts[i])) return false;
    return true;
}

bool same_structure(const ProgramUnit& a, const ProgramUnit& b) {
    if (a.functions.size() != b.functions.size()) return false;
    for (std::size_t i = 0; i < a.functions.size(); ++i) {
        const auto& fa = a.functions[i];
        const auto& fb = b.functions[i];
        if (fa.name != fb.name || fa.params != fb.params) return false;
        if (!same_structure(fa.body, fb.body)) return false;
    }
    return true;
}

// ---- generic walk: pre-order, children in source order ----

namespace {

// The walker hands out every node in the canonical order used for numbering.
// `Fn` sees (id slot, span, parent id); for numbering the id slot is written,
// for lookups it is read.
template <class Fn> void walk(Expr& expr, NodeId parent, Fn&& fn);

template <class Fn> void walk(Stmt& stmt, NodeId parent, Fn&& fn);

template <class Fn> void walk(Block& block, NodeId parent, Fn&& fn) {
    fn(block.id, block.span, parent);
    for (auto& stmt : block.stmts) walk(*stmt, block.id, fn);
}

template <class Fn> void walk(Expr& expr, NodeId parent, Fn&& fn) {
    fn(expr.id, expr.span, parent);
    std::visit(overloaded{
                   [&](ArrayLit& e) {
                       for (auto& elem : e.elements) walk(*elem, expr.id, fn);
                   },
                   [&](IndexExpr& e) {
                       walk(*e.array, expr.id, fn);
                       walk(*e.index, expr.id, fn);
                   },
                   [&](UnaryExpr& e) { walk(*e.operand, expr.id, fn); },
                   [&](BinaryExpr& e) {
                       walk(*e.lhs, expr.id, fn);
                       walk(*e.rhs, expr.id, fn);
                   },
                   [&](CallExpr& e) {
                       for (auto& arg : e.args) walk(*arg, expr.id, fn);
                   },
                   [](auto&) {},
               },
               expr.node);
}

template <class Fn> void walk(Stmt& stmt, NodeId parent, Fn&& fn) {
    fn(stmt.id, stmt.span, parent);
    std::visit(overloaded{
                   [&](LetStmt& s) { walk(*s.init, stmt.id, fn); },
                   [&](AssignStmt& s) {
                       if (s.index) walk(*s.index, stmt.id, fn);
                       walk(*s.value, stmt.id, fn);
                   },
                   [&](IfStmt& s) {
                       walk(*s.cond, stmt.id, fn);
                       walk(s.then_block, stmt.id, fn);
                       if (s.else_block) walk(*s.else_block, stmt.id, fn);
                   },
                   [&](WhileStmt& s) {
                       walk(*s.cond, stmt.id, fn);
                       walk(s.body, stmt.id, fn);
                   },
                   [&](ForStmt& s) {
                       if (s.init) walk(*s.init, stmt.id, fn);
                       if (s.cond) walk(*s.cond, stmt.id, fn);
                       if (s.step) walk(*s.step, stmt.id, fn);
                       walk(s.body, stmt.id, fn);
                   },
                   [&](ReturnStmt& s) {
                       if (s.value) walk(*s.value, stmt.id, fn);
                   },
                   [&](ExprStmt& s) { walk(*s.expr, stmt.id, fn); },
                   [&](AssertStmt& s) {
                       walk(*s.expected, stmt.id, fn);
                       walk(*s.actual, stmt.id, fn);
                   },
                   [](SkipStmt&) {},
               },
               stmt.node);
}

template <class Fn> void walk(ProgramUnit& program, Fn&& fn) {
    for (auto& fndef : program.functions) {
        fn(fndef.id, fndef.span, k_no_node);
        walk(fndef.body, fndef.id, fn);
    }
}

} // namespace

NodeId assign_node_ids(ProgramUnit& program) {
    NodeId next = 0;
    walk(program, [&](NodeId& id, Span&, NodeId) { id = next++; });
    program.node_count = next;
    return next;
}

void visit_node_ids(const ProgramUnit& program,
                    const std::function<void(NodeId, NodeId)>& visit) {
    walk(const_cast<ProgramUnit&>(program),
         [&](NodeId& id, Span&, NodeId parent) { visit(id, parent); });
}

std::optional<Span> find_span(const ProgramUnit& program, NodeId id) {
    std::optional<Span> found;
    walk(const_cast<ProgramUnit&>(program), [&](NodeId& node, Span& span, NodeId) {
        if (node == id && !found) found = span;
    });
    return found;
}

// ---- slot lookup ----

namespace {

ExprPtr* find_expr_slot_in(ExprPtr& slot, NodeId id);
StmtPtr* find_stmt_slot_in(StmtPtr& slot, NodeId id);
ExprPtr* find_expr_slot_in(Block& block, NodeId id);
StmtPtr* find_stmt_slot_in(Block& block, NodeId id);

ExprPtr* find_expr_slot_in(ExprPtr& slot, NodeId id) {
    if (!slot) return nullptr;
    if (slot->id == id) return &slot;
    return std::visit(
        overloaded{
            [&](ArrayLit& e) -> ExprPtr* {
                for (auto& elem : e.elements)
                    if (auto* hit = find_expr_slot_in(elem, id)) return hit;
                return nullptr;
            },
            [&](IndexExpr& e) -> ExprPtr* {
                if (auto* hit = find_expr_slot_in(e.array, id)) return hit;
                return find_expr_slot_in(e.index, id);
            },
            [&](UnaryExpr& e) -> ExprPtr* { return find_expr_slot_in(e.operand, id); },
            [&](BinaryExpr& e) -> ExprPtr* {
                if (auto* hit = find_expr_slot_in(e.lhs, id)) return hit;
                return find_expr_slot_in(e.rhs, id);
            },
            [&](CallExpr& e) -> ExprPtr* {
                for (auto& arg : e.args)
                    if (auto* hit = find_expr_slot_in(arg, id)) return hit;
                return nullptr;
            },
            [](auto&) -> ExprPtr* { return nullptr; },
        },
        slot->node);
}

ExprPtr* find_expr_slot_in_stmt(StmtPtr& stmt, NodeId id) {
    return std::visit(
        overloaded{
            [&](LetStmt& s) -> ExprPtr* { return find_expr_slot_in(s.init, id); },
            [&](AssignStmt& s) -> ExprPtr* {
                if (s.index)
                    if (auto* hit = find_expr_slot_in(s.index, id)) return hit;
                return find_expr_slot_in(s.value, id);
            },
            [&](IfStmt& s) -> ExprPtr* {
                if (auto* hit = find_expr_slot_in(s.cond, id)) return hit;
                if (auto* hit = find_expr_slot_in(s.then_block, id)) return hit;
                if (s.else_block) return find_expr_slot_in(*s.else_block, id);
                return nullptr;
            },
            [&](WhileStmt& s) -> ExprPtr* {
                if (auto* hit = find_expr_slot_in(s.cond, id)) return hit;
                return find_expr_slot_in(s.body, id);
            },
            [&](ForStmt& s) -> ExprPtr* {
                if (s.init)
                    if (auto* hit = find_expr_slot_in_stmt(s.init, id)) return hit;
                if (s.cond)
                    if (auto* hit = find_expr_slot_in(s.cond, id)) return hit;
                if (s.step)
                    if (auto* hit = find_expr_slot_in_stmt(s.step, id)) return hit;
                return find_expr_slot_in(s.body, id);
            },
            [&](ReturnStmt& s) -> ExprPtr* {
                return s.value ? find_expr_slot_in(s.value, id) : nullptr;
            },
            [&](ExprStmt& s) -> ExprPtr* { return find_expr_slot_in(s.expr, id); },
            [&](AssertStmt& s) -> ExprPtr* {
                if (auto* hit = find_expr_slot_in(s.expected, id)) return hit;
                return find_expr_slot_in(s.actual, id);
            },
            [](SkipStmt&) -> ExprPtr* { return nullptr; },
        },
        stmt->node);
}

ExprPtr* find_expr_slot_in(Block& block, NodeId id) {
    for (auto& stmt : block.stmts)
        if (auto* hit = find_expr_slot_in_stmt(stmt, id)) return hit;
    return nullptr;
}

StmtPtr* find_stmt_slot_in(StmtPtr& slot, NodeId id) {
    if (!slot) return nullptr;
    if (slot->id == id) return &slot;
    return std::visit(
        overloaded{
            [&](IfStmt& s) -> StmtPtr* {
                if (auto* hit = find_stmt_slot_in(s.then_block, id)) return hit;
                if (s.else_block) return find_stmt_slot_in(*s.else_block, id);
                return nullptr;
            },
            [&](WhileStmt& s) -> StmtPtr* { return find_stmt_slot_in(s.body, id); },
            [&](ForStmt& s) -> StmtPtr* {
                if (s.init)
                    if (auto* hit = find_stmt_slot_in(s.init, id)) return hit;
                if (s.step)
                    if (auto* hit = find_stmt_slot_in(s.step, id)) return hit;
                return find_stmt_slot_in(s.body, id);
            },
            [](auto&) -> StmtPtr* { return nullptr; },
        },
        slot->node);
}

StmtPtr* find_stmt_slot_in(Block& block, NodeId id) {
    for (auto& stmt : block.stmts)
        if (auto* hit = find_stmt_slot_in(stmt, id)) return hit;
    return nullptr;
}

} // namespace

ExprPtr* find_expr_slot(ProgramUnit& program, NodeId id) {
    for (auto& fn : program.functions)
        if (auto* hit = find_expr_slot_in(fn.body, id)) return hit;
    return nullptr;
}

StmtPtr* find_stmt_slot(ProgramUnit& program, NodeId id) {
    for (auto& fn : program.functions)
        if (auto* hit = find_stmt_slot_in(fn.body, id)) return hit;
    return nullptr;
}

const Expr* find_expr(const ProgramUnit& program, NodeId id) {
    auto* slot = find_expr_slot(const_cast<ProgramUnit&>(program), id);
    return slot ? slot->get() : nullptr;
}

const Stmt* find_stmt(const ProgramUnit& program, NodeId id) {
    auto* slot = find_stmt_slot(const_cast<ProgramUnit&>(program), id);
    return slot ? slot->get() : nullptr;
}

} // namespace cam
