#include "cam/parser.hpp"

#include <cstdint>
#include <limits>
#include <unordered_set>
#include <utility>

#include "cam/errors.hpp"
#include "lexer.hpp"

namespace cam {

using detail::Tok;
using detail::Token;

namespace {

constexpr std::uint64_t k_int64_min_magnitude = 9223372036854775808ULL;

class Parser {
  public:
    Parser(std::vector<Token> tokens, std::string file)
        : tokens_(std::move(tokens)), file_(std::move(file)) {}

    ProgramUnit parse() {
        ProgramUnit unit;
        unit.file = file_;
        while (!at(Tok::Eof)) {
            unit.functions.push_back(parse_function());
        }
        std::unordered_set<std::string> seen;
        for (const auto& fn : unit.functions) {
            if (!seen.insert(fn.name).second) throw DuplicateFunctionError(fn.name);
        }
        unit.node_count = assign_node_ids(unit);
        return unit;
    }

  private:
    std::vector<Token> tokens_;
    std::string file_;
    std::size_t pos_ = 0;

    const Token& cur() const { return tokens_[pos_]; }
    const Token& peek(std::size_t off = 1) const {
        std::size_t i = pos_ + off;
        return i < tokens_.size() ? tokens_[i] : tokens_.back();
    }
    bool at(Tok kind) const { return cur().kind == kind; }
    Token advance() {
        Token token = tokens_[pos_++];
        last_line_ = token.line;
        return token;
    }

    Token expect(Tok kind) {
        if (!at(kind))
            fail(cur(), std::string("expected ") + detail::token_name(kind) + ", found " +
                            detail::token_name(cur().kind));
        return advance();
    }

    [[noreturn]] void fail(const Token& token, const std::string& message) const {
        throw SyntaxError(file_, token.line, token.column, message);
    }

    Span span_lines(int start, int end) const { return Span{file_, start, end}; }

    ExprPtr make_expr(int start_line, int end_line,
                      std::variant<IntLit, BoolLit, VarRead, ArrayLit, IndexExpr, UnaryExpr,
                                   BinaryExpr, CallExpr> node) {
        auto expr = std::make_unique<Expr>();
        expr->span = span_lines(start_line, end_line);
        expr->node = std::move(node);
        return expr;
    }

    int last_line_ = 1;

    // ---- declarations ----

    FnDef parse_function() {
        Token fn_tok = cur();
        expect(Tok::KwFn);
        Token name = expect(Tok::Ident);
        expect(Tok::LParen);
        std::vector<std::string> params;
        if (!at(Tok::RParen)) {
            params.push_back(expect(Tok::Ident).text);
            while (at(Tok::Comma)) {
                advance();
                params.push_back(expect(Tok::Ident).text);
            }
        }
        expect(Tok::RParen);
        Block body = parse_block();
        FnDef def;
        def.span = span_lines(fn_tok.line, body.span.end_line);
        def.name = name.text;
        def.params = std::move(params);
        def.body = std::move(body);
        return def;
    }

    Block parse_block() {
        Token open = expect(Tok::LBrace);
        Block block;
        std::vector<StmtPtr> stmts;
        while (!at(Tok::RBrace)) {
            if (at(Tok::Eof)) fail(cur(), "unterminated block, expected '}'");
            stmts.push_back(parse_stmt());
        }
        Token close = advance();
        block.span = span_lines(open.line, close.line);
        block.stmts = std::move(stmts);
        return block;
    }

    // ---- statements ----

    StmtPtr make_stmt(int start_line, int end_line,
                      std::variant<LetStmt, AssignStmt, IfStmt, WhileStmt, ForStmt, ReturnStmt,
                                   ExprStmt, AssertStmt, SkipStmt> node) {
        auto stmt = std::make_unique<Stmt>();
        stmt->span = span_lines(start_line, end_line);
        stmt->node = std::move(node);
        return stmt;
    }

    StmtPtr parse_stmt() {
        switch (cur().kind) {
            case Tok::KwLet: return parse_let();
            case Tok::KwIf: return parse_if();
            case Tok::KwWhile: return parse_while();
            case Tok::KwFor: return parse_for();
            case Tok::KwReturn: return parse_return();
            case Tok::KwAssertEq:
            case Tok::KwAssertTrue: return parse_assert();
            case Tok::Semicolon: {
                Token semi = advance();
                return make_stmt(semi.line, semi.line, SkipStmt{});
            }
            default: return parse_assign_or_expr_stmt();
        }
    }

    StmtPtr parse_let() {
        Token let_tok = advance();
        Token name = expect(Tok::Ident);
        expect(Tok::Assign);
        ExprPtr init = parse_expr();
        Token semi = expect(Tok::Semicolon);
        return make_stmt(let_tok.line, semi.line, LetStmt{name.text, std::move(init)});
    }

    StmtPtr parse_if() {
        Token if_tok = advance();
        expect(Tok::LParen);
        ExprPtr cond = parse_expr();
        expect(Tok::RParen);
        Block then_block = parse_block();
        std::optional<Block> else_block;
        int end_line = then_block.span.end_line;
        if (at(Tok::KwElse)) {
            advance();
            if (at(Tok::KwIf)) {
                StmtPtr nested = parse_if();
                Block wrapper;
                wrapper.span = nested->span;
                wrapper.stmts.push_back(std::move(nested));
                else_block = std::move(wrapper);
            } else {
                else_block = parse_block();
            }
            end_line = else_block->span.end_line;
        }
        return make_stmt(if_tok.line, end_line,
                         IfStmt{std::move(cond), std::move(then_block), std::move(else_block)});
    }

    StmtPtr parse_while() {
        Token while_tok = advance();
        expect(Tok::LParen);
        ExprPtr cond = parse_expr();
        expect(Tok::RParen);
        Block body = parse_block();
        int end = body.span.end_line;
        return make_stmt(while_tok.line, end, WhileStmt{std::move(cond), std::move(body)});
    }

    StmtPtr parse_for() {
        Token for_tok = advance();
        expect(Tok::LParen);
        StmtPtr init;
        if (!at(Tok::Semicolon)) init = parse_simple_stmt(true);
        expect(Tok::Semicolon);
        ExprPtr cond;
        if (!at(Tok::Semicolon)) cond = parse_expr();
        expect(Tok::Semicolon);
        StmtPtr step;
        if (!at(Tok::RParen)) step = parse_simple_stmt(false);
        expect(Tok::RParen);
        Block body = parse_block();
        int end = body.span.end_line;
        return make_stmt(for_tok.line, end,
                         ForStmt{std::move(init), std::move(cond), std::move(step),
                                 std::move(body)});
    }

    /// A let or assignment without its terminating token, as found in a for
    /// header. `allow_let` is false in the step position.
    StmtPtr parse_simple_stmt(bool allow_let) {
        if (at(Tok::KwLet)) {
            if (!allow_let) fail(cur(), "'let' is not allowed here");
            Token let_tok = advance();
            Token name = expect(Tok::Ident);
            expect(Tok::Assign);
            ExprPtr init = parse_expr();
            return make_stmt(let_tok.line, last_line_, LetStmt{name.text, std::move(init)});
        }
        Token start = cur();
        ExprPtr lhs = parse_expr();
        if (!at(Tok::Assign)) fail(cur(), "expected '=' in assignment");
        advance();
        ExprPtr value = parse_expr();
        return finish_assignment(start, std::move(lhs), std::move(value), last_line_);
    }

    StmtPtr finish_assignment(const Token& start, ExprPtr lhs, ExprPtr value, int end_line) {
        if (auto* var = std::get_if<VarRead>(&lhs->node)) {
            return make_stmt(start.line, end_line,
                             AssignStmt{var->name, nullptr, std::move(value)});
        }
        if (auto* index = std::get_if<IndexExpr>(&lhs->node)) {
            if (auto* var = std::get_if<VarRead>(&index->array->node)) {
                return make_stmt(start.line, end_line,
                                 AssignStmt{var->name, std::move(index->index),
                                            std::move(value)});
            }
        }
        fail(start, "invalid assignment target");
    }

    StmtPtr parse_assign_or_expr_stmt() {
        Token start = cur();
        ExprPtr expr = parse_expr();
        if (at(Tok::Assign)) {
            advance();
            ExprPtr value = parse_expr();
            Token semi = expect(Tok::Semicolon);
            return finish_assignment(start, std::move(expr), std::move(value), semi.line);
        }
        Token semi = expect(Tok::Semicolon);
        return make_stmt(start.line, semi.line, ExprStmt{std::move(expr)});
    }

    StmtPtr parse_return() {
        Token ret_tok = advance();
        ExprPtr value;
        if (!at(Tok::Semicolon)) value = parse_expr();
        Token semi = expect(Tok::Semicolon);
        return make_stmt(ret_tok.line, semi.line, ReturnStmt{std::move(value)});
    }

    StmtPtr parse_assert() {
        Token kw = advance();
        expect(Tok::LParen);
        ExprPtr expected;
        ExprPtr actual;
        if (kw.kind == Tok::KwAssertEq) {
            expected = parse_expr();
            expect(Tok::Comma);
            actual = parse_expr();
        } else {
            // assert_true(c) is sugar for assert_eq(true, c)
            expected = make_expr(kw.line, kw.line, BoolLit{true});
            actual = parse_expr();
        }
        expect(Tok::RParen);
        Token semi = expect(Tok::Semicolon);
        return make_stmt(kw.line, semi.line, AssertStmt{std::move(expected), std::move(actual)});
    }

    // ---- expressions, precedence climbing ----

    ExprPtr parse_expr() { return parse_binary(0); }

    ExprPtr parse_binary(int level) {
        static const std::vector<std::vector<std::pair<Tok, BinaryOp>>> levels = {
            {{Tok::PipePipe, BinaryOp::LogicalOr}},
            {{Tok::AmpAmp, BinaryOp::LogicalAnd}},
            {{Tok::Pipe, BinaryOp::BitOr}},
            {{Tok::Caret, BinaryOp::BitXor}},
            {{Tok::Amp, BinaryOp::BitAnd}},
            {{Tok::EqEq, BinaryOp::Eq}, {Tok::BangEq, BinaryOp::Ne}},
            {{Tok::Lt, BinaryOp::Lt},
             {Tok::Le, BinaryOp::Le},
             {Tok::Gt, BinaryOp::Gt},
             {Tok::Ge, BinaryOp::Ge}},
            {{Tok::Plus, BinaryOp::Add}, {Tok::Minus, BinaryOp::Sub}},
            {{Tok::Star, BinaryOp::Mul},
             {Tok::Slash, BinaryOp::Div},
             {Tok::Percent, BinaryOp::Mod}},
        };
        if (level >= static_cast<int>(levels.size())) return parse_unary();

        ExprPtr lhs = parse_binary(level + 1);
        for (;;) {
            const BinaryOp* matched = nullptr;
            for (const auto& [tok, op] : levels[level]) {
                if (at(tok)) {
                    matched = &op;
                    break;
                }
            }
            if (!matched) return lhs;
            advance();
            ExprPtr rhs = parse_binary(level + 1);
            int start = lhs->span.start_line;
            int end = rhs->span.end_line;
            lhs = make_expr(start, end, BinaryExpr{*matched, std::move(lhs), std::move(rhs)});
        }
    }

    ExprPtr parse_unary() {
        if (at(Tok::Minus)) {
            Token minus = advance();
            if (at(Tok::Int)) {
                Token lit = advance();
                std::int64_t value =
                    lit.int_value == k_int64_min_magnitude
                        ? std::numeric_limits<std::int64_t>::min()
                        : -static_cast<std::int64_t>(lit.int_value);
                return finish_postfix(make_expr(minus.line, lit.line, IntLit{value}));
            }
            ExprPtr operand = parse_unary();
            if (auto* lit = std::get_if<IntLit>(&operand->node)) {
                // fold negation of a literal so no Neg node ever wraps one
                lit->value = static_cast<std::int64_t>(
                    0ULL - static_cast<std::uint64_t>(lit->value));
                operand->span.start_line = minus.line;
                return operand;
            }
            int end = operand->span.end_line;
            return make_expr(minus.line, end, UnaryExpr{UnaryOp::Neg, std::move(operand)});
        }
        if (at(Tok::Bang)) {
            Token bang = advance();
            ExprPtr operand = parse_unary();
            int end = operand->span.end_line;
            return make_expr(bang.line, end, UnaryExpr{UnaryOp::Not, std::move(operand)});
        }
        if (at(Tok::PlusPlus) || at(Tok::MinusMinus)) {
            Token op_tok = advance();
            UnaryOp op = op_tok.kind == Tok::PlusPlus ? UnaryOp::PreInc : UnaryOp::PreDec;
            ExprPtr operand = parse_unary();
            if (!std::holds_alternative<VarRead>(operand->node))
                fail(op_tok, std::string("expected a variable after ") +
                                 detail::token_name(op_tok.kind));
            int end = operand->span.end_line;
            return make_expr(op_tok.line, end, UnaryExpr{op, std::move(operand)});
        }
        return parse_postfix();
    }

    ExprPtr parse_postfix() { return finish_postfix(parse_primary()); }

    ExprPtr finish_postfix(ExprPtr expr) {
        while (at(Tok::LBracket)) {
            advance();
            ExprPtr index = parse_expr();
            Token close = expect(Tok::RBracket);
            int start = expr->span.start_line;
            expr = make_expr(start, close.line, IndexExpr{std::move(expr), std::move(index)});
        }
        return expr;
    }

    ExprPtr parse_primary() {
        switch (cur().kind) {
            case Tok::Int: {
                Token lit = advance();
                if (lit.int_value > static_cast<std::uint64_t>(
                                        std::numeric_limits<std::int64_t>::max()))
                    fail(lit, "integer literal out of range");
                return make_expr(lit.line, lit.line,
                                 IntLit{static_cast<std::int64_t>(lit.int_value)});
            }
            case Tok::KwTrue: {
                Token t = advance();
                return make_expr(t.line, t.line, BoolLit{true});
            }
            case Tok::KwFalse: {
                Token t = advance();
                return make_expr(t.line, t.line, BoolLit{false});
            }
            case Tok::Ident: {
                Token name = advance();
                if (at(Tok::LParen)) {
                    advance();
                    std::vector<ExprPtr> args;
                    if (!at(Tok::RParen)) {
                        args.push_back(parse_expr());
                        while (at(Tok::Comma)) {
                            advance();
                            args.push_back(parse_expr());
                        }
                    }
                    Token close = expect(Tok::RParen);
                    return make_expr(name.line, close.line,
                                     CallExpr{name.text, std::move(args)});
                }
                return make_expr(name.line, name.line, VarRead{name.text});
            }
            case Tok::LParen: {
                advance();
                ExprPtr inner = parse_expr();
                expect(Tok::RParen);
                return inner;
            }
            case Tok::LBracket: {
                Token open = advance();
                std::vector<ExprPtr> elements;
                if (!at(Tok::RBracket)) {
                    elements.push_back(parse_expr());
                    while (at(Tok::Comma)) {
                        advance();
                        elements.push_back(parse_expr());
                    }
                }
                Token close = expect(Tok::RBracket);
                return make_expr(open.line, close.line, ArrayLit{std::move(elements)});
            }
            default:
                fail(cur(), std::string("expected an expression, found ") +
                                detail::token_name(cur().kind));
        }
    }
};

void walk_statements(const Block& block, const std::function<void(const Stmt&)>& visit);

void walk_statement(const Stmt& stmt, const std::function<void(const Stmt&)>& visit) {
    visit(stmt);
    std::visit(overloaded{
                   [&](const IfStmt& s) {
                       walk_statements(s.then_block, visit);
                       if (s.else_block) walk_statements(*s.else_block, visit);
                   },
                   [&](const WhileStmt& s) { walk_statements(s.body, visit); },
                   [&](const ForStmt& s) {
                       if (s.init) walk_statement(*s.init, visit);
                       if (s.step) walk_statement(*s.step, visit);
                       walk_statements(s.body, visit);
                   },
                   [](const auto&) {},
               },
               stmt.node);
}

void walk_statements(const Block& block, const std::function<void(const Stmt&)>& visit) {
    for (const auto& stmt : block.stmts) walk_statement(*stmt, visit);
}

} // namespace

ProgramUnit parse_program(const std::string& source, const std::string& file) {
    Parser parser(detail::lex(source, file), file);
    return parser.parse();
}

void validate_subject(const ProgramUnit& program) {
    for (const auto& fn : program.functions) {
        walk_statements(fn.body, [&](const Stmt& stmt) {
            if (std::holds_alternative<AssertStmt>(stmt.node))
                throw SyntaxError(program.file, stmt.span.start_line, 1,
                                  "assertions are only allowed in test functions");
        });
    }
}

void validate_tests(const ProgramUnit& tests) {
    for (const auto& fn : tests.functions) {
        if (!is_test_function(fn.name)) {
            walk_statements(fn.body, [&](const Stmt& stmt) {
                if (std::holds_alternative<AssertStmt>(stmt.node))
                    throw SyntaxError(tests.file, stmt.span.start_line, 1,
                                      "assertions are only allowed in test functions");
            });
            continue;
        }
        if (!fn.params.empty())
            throw SyntaxError(tests.file, fn.span.start_line, 1,
                              "test function '" + fn.name + "' must not take parameters");
        walk_statements(fn.body, [&](const Stmt& stmt) {
            if (std::holds_alternative<ReturnStmt>(stmt.node))
                throw SyntaxError(tests.file, stmt.span.start_line, 1,
                                  "test function '" + fn.name +
                                      "' must not contain return statements");
        });
        // assertions must sit directly in the test body so their execution
        // order is their source order
        for (const auto& stmt : fn.body.stmts) {
            walk_statement(*stmt, [&](const Stmt& nested) {
                if (&nested == stmt.get()) return;
                if (std::holds_alternative<AssertStmt>(nested.node))
                    throw SyntaxError(tests.file, nested.span.start_line, 1,
                                      "assertions in test '" + fn.name +
                                          "' must be top-level statements");
            });
        }
    }
}

} // namespace cam
