#include "cam/printer.hpp"

#include <sstream>

namespace cam {

namespace {

// Binding strength, tighter binds higher. Mirrors the parser's levels.
int binary_level(BinaryOp op) {
    switch (op) {
        case BinaryOp::LogicalOr: return 1;
        case BinaryOp::LogicalAnd: return 2;
        case BinaryOp::BitOr: return 3;
        case BinaryOp::BitXor: return 4;
        case BinaryOp::BitAnd: return 5;
        case BinaryOp::Eq:
        case BinaryOp::Ne: return 6;
        case BinaryOp::Lt:
        case BinaryOp::Le:
        case BinaryOp::Gt:
        case BinaryOp::Ge: return 7;
        case BinaryOp::Add:
        case BinaryOp::Sub: return 8;
        case BinaryOp::Mul:
        case BinaryOp::Div:
        case BinaryOp::Mod: return 9;
    }
    return 0;
}

constexpr int k_unary_level = 10;
constexpr int k_postfix_level = 11;
constexpr int k_primary_level = 12;

int expr_level(const Expr& expr) {
    return std::visit(overloaded{
                          [](const BinaryExpr& e) { return binary_level(e.op); },
                          [](const UnaryExpr&) { return k_unary_level; },
                          [](const IndexExpr&) { return k_postfix_level; },
                          [](const auto&) { return k_primary_level; },
                      },
                      expr.node);
}

// A `-` printed directly before this expression would fuse into `--`.
bool starts_with_minus(const Expr& expr) {
    return std::visit(overloaded{
                          [](const IntLit& e) { return e.value < 0; },
                          [](const UnaryExpr& e) {
                              return e.op == UnaryOp::Neg || e.op == UnaryOp::PreDec;
                          },
                          [](const auto&) { return false; },
                      },
                      expr.node);
}

void write_expr(std::ostream& out, const Expr& expr, int min_level);

void write_expr_list(std::ostream& out, const std::vector<ExprPtr>& exprs) {
    for (std::size_t i = 0; i < exprs.size(); ++i) {
        if (i > 0) out << ", ";
        write_expr(out, *exprs[i], 0);
    }
}

void write_expr(std::ostream& out, const Expr& expr, int min_level) {
    bool parens = expr_level(expr) < min_level;
    if (parens) out << '(';
    std::visit(
        overloaded{
            [&](const IntLit& e) { out << e.value; },
            [&](const BoolLit& e) { out << (e.value ? "true" : "false"); },
            [&](const VarRead& e) { out << e.name; },
            [&](const ArrayLit& e) {
                out << '[';
                write_expr_list(out, e.elements);
                out << ']';
            },
            [&](const IndexExpr& e) {
                write_expr(out, *e.array, k_postfix_level);
                out << '[';
                write_expr(out, *e.index, 0);
                out << ']';
            },
            [&](const UnaryExpr& e) {
                out << unary_op_token(e.op);
                if (e.op == UnaryOp::Neg && starts_with_minus(*e.operand)) {
                    out << '(';
                    write_expr(out, *e.operand, 0);
                    out << ')';
                } else {
                    write_expr(out, *e.operand, k_unary_level);
                }
            },
            [&](const BinaryExpr& e) {
                int level = binary_level(e.op);
                write_expr(out, *e.lhs, level);
                out << ' ' << binary_op_token(e.op) << ' ';
                write_expr(out, *e.rhs, level + 1);
            },
            [&](const CallExpr& e) {
                out << e.callee << '(';
                write_expr_list(out, e.args);
                out << ')';
            },
        },
        expr.node);
    if (parens) out << ')';
}

class Writer {
  public:
    explicit Writer(std::ostream& out, bool snippet = false)
        : out_(out), snippet_(snippet) {}

    void program(const ProgramUnit& unit) {
        for (std::size_t i = 0; i < unit.functions.size(); ++i) {
            if (i > 0) out_ << '\n';
            function(unit.functions[i]);
        }
    }

    void function(const FnDef& fn) {
        out_ << "fn " << fn.name << '(';
        for (std::size_t i = 0; i < fn.params.size(); ++i) {
            if (i > 0) out_ << ", ";
            out_ << fn.params[i];
        }
        out_ << ") ";
        block(fn.body);
        out_ << '\n';
    }

    void block(const Block& blk) {
        if (snippet_) {
            out_ << (blk.stmts.empty() ? "{}" : "{ ... }");
            return;
        }
        out_ << "{\n";
        ++depth_;
        for (const auto& stmt : blk.stmts) {
            indent();
            statement(*stmt);
            out_ << '\n';
        }
        --depth_;
        indent();
        out_ << '}';
    }

    void statement(const Stmt& stmt) {
        std::visit(
            overloaded{
                [&](const LetStmt&) {
                    simple(stmt);
                    out_ << ';';
                },
                [&](const AssignStmt&) {
                    simple(stmt);
                    out_ << ';';
                },
                [&](const IfStmt& s) { if_chain(s); },
                [&](const WhileStmt& s) {
                    out_ << "while (";
                    write_expr(out_, *s.cond, 0);
                    out_ << ") ";
                    block(s.body);
                },
                [&](const ForStmt& s) {
                    out_ << "for (";
                    if (s.init) simple(*s.init);
                    out_ << "; ";
                    if (s.cond) write_expr(out_, *s.cond, 0);
                    out_ << "; ";
                    if (s.step) simple(*s.step);
                    out_ << ") ";
                    block(s.body);
                },
                [&](const ReturnStmt& s) {
                    out_ << "return";
                    if (s.value) {
                        out_ << ' ';
                        write_expr(out_, *s.value, 0);
                    }
                    out_ << ';';
                },
                [&](const ExprStmt& s) {
                    write_expr(out_, *s.expr, 0);
                    out_ << ';';
                },
                [&](const AssertStmt& s) {
                    out_ << "assert_eq(";
                    write_expr(out_, *s.expected, 0);
                    out_ << ", ";
                    write_expr(out_, *s.actual, 0);
                    out_ << ");";
                },
                [&](const SkipStmt&) { out_ << ';'; },
            },
            stmt.node);
    }

  private:
    std::ostream& out_;
    bool snippet_;
    int depth_ = 0;

    void indent() {
        for (int i = 0; i < depth_; ++i) out_ << "    ";
    }

    // let/assign without the trailing token, also used inside for headers
    void simple(const Stmt& stmt) {
        std::visit(overloaded{
                       [&](const LetStmt& s) {
                           out_ << "let " << s.name << " = ";
                           write_expr(out_, *s.init, 0);
                       },
                       [&](const AssignStmt& s) {
                           out_ << s.target;
                           if (s.index) {
                               out_ << '[';
                               write_expr(out_, *s.index, 0);
                               out_ << ']';
                           }
                           out_ << " = ";
                           write_expr(out_, *s.value, 0);
                       },
                       [&](const auto&) {},
                   },
                   stmt.node);
    }

    void if_chain(const IfStmt& s) {
        out_ << "if (";
        write_expr(out_, *s.cond, 0);
        out_ << ") ";
        block(s.then_block);
        if (!s.else_block) return;
        out_ << " else ";
        // an else block holding a single if is rendered as `else if`,
        // which parses back to the same wrapped shape
        if (s.else_block->stmts.size() == 1) {
            if (const auto* nested = std::get_if<IfStmt>(&s.else_block->stmts[0]->node)) {
                if_chain(*nested);
                return;
            }
        }
        block(*s.else_block);
    }
};

} // namespace

std::string print_program(const ProgramUnit& program) {
    std::ostringstream out;
    Writer writer(out);
    writer.program(program);
    return out.str();
}

std::string print_expr(const Expr& expr) {
    std::ostringstream out;
    write_expr(out, expr, 0);
    return out.str();
}

std::string print_stmt(const Stmt& stmt) {
    std::ostringstream out;
    Writer writer(out, true);
    writer.statement(stmt);
    return out.str();
}

} // namespace cam

