#pragma once

#include <string>

#include "cam/ast.hpp"

namespace cam {

/// Renders a unit back to source text. The output re-parses to a
/// structurally identical AST with identical node ids.
std::string print_program(const ProgramUnit& program);

/// Single-line rendering of one node, used for mutant snippets.
std::string print_expr(const Expr& expr);
std::string print_stmt(const Stmt& stmt);

} // namespace cam
