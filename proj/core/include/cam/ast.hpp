#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cam/source.hpp"

namespace cam {

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

enum class BinaryOp {
    Add, Sub, Mul, Div, Mod,          // arithmetic
    Eq, Ne, Lt, Le, Gt, Ge,           // relational
    LogicalAnd, LogicalOr,            // short-circuit, booleans only
    BitAnd, BitOr, BitXor,            // integers only
};

enum class UnaryOp {
    Neg,     // integer negation; never wraps a bare integer literal
    Not,     // boolean negation
    PreInc,  // ++v, applies only to a variable read
    PreDec,  // --v, applies only to a variable read
};

const char* binary_op_token(BinaryOp op);
const char* unary_op_token(UnaryOp op);
bool is_relational(BinaryOp op);
bool is_arithmetic(BinaryOp op);

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct IntLit { std::int64_t value = 0; };
struct BoolLit { bool value = false; };
struct VarRead { std::string name; };
struct ArrayLit { std::vector<ExprPtr> elements; };
struct IndexExpr { ExprPtr array; ExprPtr index; };
struct UnaryExpr { UnaryOp op; ExprPtr operand; };
struct BinaryExpr { BinaryOp op; ExprPtr lhs; ExprPtr rhs; };
struct CallExpr { std::string callee; std::vector<ExprPtr> args; };

struct Expr {
    NodeId id = k_no_node;
    Span span;
    std::variant<IntLit, BoolLit, VarRead, ArrayLit, IndexExpr, UnaryExpr, BinaryExpr,
                 CallExpr> node;
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Block {
    NodeId id = k_no_node;
    Span span;
    std::vector<StmtPtr> stmts;
};

struct LetStmt { std::string name; ExprPtr init; };
/// `target = value;` or `target[index] = value;` (index null for the former).
struct AssignStmt { std::string target; ExprPtr index; ExprPtr value; };
struct IfStmt { ExprPtr cond; Block then_block; std::optional<Block> else_block; };
struct WhileStmt { ExprPtr cond; Block body; };
/// `for (init; cond; step) body`; init is a let or assignment, step an
/// assignment; each part may be absent.
struct ForStmt { StmtPtr init; ExprPtr cond; StmtPtr step; Block body; };
struct ReturnStmt { ExprPtr value; };
struct ExprStmt { ExprPtr expr; };
/// `assert_eq(expected, actual);` — `assert_true(c)` is desugared to
/// `assert_eq(true, c)` while parsing.
struct AssertStmt { ExprPtr expected; ExprPtr actual; };
/// Empty statement `;`. Also what statement deletion leaves behind.
struct SkipStmt {};

struct Stmt {
    NodeId id = k_no_node;
    Span span;
    std::variant<LetStmt, AssignStmt, IfStmt, WhileStmt, ForStmt, ReturnStmt, ExprStmt,
                 AssertStmt, SkipStmt> node;
};

struct FnDef {
    NodeId id = k_no_node;
    Span span;
    std::string name;
    std::vector<std::string> params;
    Block body;
};

struct ProgramUnit {
    std::string file;
    std::vector<FnDef> functions;  // source order
    NodeId node_count = 0;         // node ids are exactly [0, node_count)

    const FnDef* find_function(const std::string& name) const;
};

ProgramUnit clone(const ProgramUnit& program);
ExprPtr clone(const Expr& expr);
StmtPtr clone(const Stmt& stmt);
Block clone(const Block& block);

/// Structural comparison: node kinds, operators, names and values must agree;
/// node ids and spans are ignored.
bool same_structure(const ProgramUnit& a, const ProgramUnit& b);
bool same_structure(const Expr& a, const Expr& b);
bool same_structure(const Stmt& a, const Stmt& b);

/// Renumbers every node (functions, blocks, statements, expressions) in
/// pre-order over the unit, children visited in source order. Returns the
/// number of ids handed out.
NodeId assign_node_ids(ProgramUnit& program);

/// Locates the owning slot of the expression/statement with the given id,
/// so callers can edit or replace the node. Null when the id does not name
/// a node of that kind.
ExprPtr* find_expr_slot(ProgramUnit& program, NodeId id);
StmtPtr* find_stmt_slot(ProgramUnit& program, NodeId id);
const Expr* find_expr(const ProgramUnit& program, NodeId id);
const Stmt* find_stmt(const ProgramUnit& program, NodeId id);

/// Span of the node with the given id, whatever kind of node it is.
std::optional<Span> find_span(const ProgramUnit& program, NodeId id);

/// Walks the unit in pre-order and hands every node id to the callback
/// together with the id of its enclosing parent (k_no_node at the roots).
void visit_node_ids(const ProgramUnit& program,
                    const std::function<void(NodeId node, NodeId parent)>& visit);

} // namespace cam
