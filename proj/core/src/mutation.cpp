#include "cam/mutation.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "cam/errors.hpp"
#include "cam/printer.hpp"
#include "cam/rng.hpp"

namespace cam {

const char* mutation_operator_name(MutationOperator op) {
    switch (op) {
        case MutationOperator::ROR: return "ROR";
        case MutationOperator::AOR: return "AOR";
        case MutationOperator::UOI: return "UOI";
        case MutationOperator::CRCR: return "CRCR";
        case MutationOperator::OBBN: return "OBBN";
        case MutationOperator::InvertNegs: return "InvertNegs";
        case MutationOperator::SDL: return "SDL";
    }
    return "?";
}

std::optional<MutationOperator> mutation_operator_from_name(const std::string& name) {
    for (MutationOperator op : all_mutation_operators())
        if (name == mutation_operator_name(op)) return op;
    return std::nullopt;
}

std::vector<MutationOperator> all_mutation_operators() {
    return {MutationOperator::ROR,  MutationOperator::AOR,        MutationOperator::UOI,
            MutationOperator::CRCR, MutationOperator::OBBN,       MutationOperator::InvertNegs,
            MutationOperator::SDL};
}

namespace {

const BinaryOp k_relational[] = {BinaryOp::Eq, BinaryOp::Ne, BinaryOp::Lt,
                                 BinaryOp::Le, BinaryOp::Gt, BinaryOp::Ge};
const BinaryOp k_arithmetic[] = {BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul,
                                 BinaryOp::Div, BinaryOp::Mod};

bool stmt_deletable(const Stmt& stmt) {
    return std::visit(overloaded{
                          [](const AssignStmt&) { return true; },
                          [](const IfStmt&) { return true; },
                          [](const WhileStmt&) { return true; },
                          [](const ForStmt&) { return true; },
                          [](const ExprStmt&) { return true; },
                          [](const auto&) { return false; },
                      },
                      stmt.node);
}

std::string binary_snippet(const Expr& expr, BinaryOp op) {
    ExprPtr copy = clone(expr);
    std::get<BinaryExpr>(copy->node).op = op;
    return print_expr(*copy);
}

class Collector {
  public:
    Collector(const CommitDiff& diff, const std::vector<MutationOperator>& operators)
        : diff_(diff) {
        for (MutationOperator op : operators.empty() ? all_mutation_operators() : operators)
            enabled_.insert(static_cast<int>(op));
    }

    std::vector<Mutant> take() { return std::move(mutants_); }

    void program(const ProgramUnit& unit) {
        for (const auto& fn : unit.functions) block(fn.body);
    }

  private:
    const CommitDiff& diff_;
    std::unordered_set<int> enabled_;
    std::vector<Mutant> mutants_;

    bool on(MutationOperator op) const {
        return enabled_.count(static_cast<int>(op)) != 0;
    }

    void add(MutationOperator op, MutationEdit edit, NodeId target, NodeId anchor,
             const Span& span, std::string original, std::string replacement) {
        Mutant m;
        m.id = static_cast<int>(mutants_.size()) + 1;
        m.op = op;
        m.edit = std::move(edit);
        m.target = target;
        m.anchor = anchor;
        m.span = span;
        m.original = std::move(original);
        m.replacement = std::move(replacement);
        m.location = classify(span, diff_);
        mutants_.push_back(std::move(m));
    }

    void block(const Block& blk) {
        for (const auto& stmt : blk.stmts) statement(*stmt);
    }

    void statement(const Stmt& stmt) {
        // Node id order is pre-order, so the statement's own candidates come
        // before its children's.
        if (on(MutationOperator::SDL) && stmt_deletable(stmt))
            add(MutationOperator::SDL, DeleteStatement{}, stmt.id, stmt.id, stmt.span,
                print_stmt(stmt), ";");
        std::visit(overloaded{
                       [&](const LetStmt& s) { expression(*s.init); },
                       [&](const AssignStmt& s) {
                           if (s.index) expression(*s.index);
                           expression(*s.value);
                       },
                       [&](const IfStmt& s) {
                           expression(*s.cond);
                           block(s.then_block);
                           if (s.else_block) block(*s.else_block);
                       },
                       [&](const WhileStmt& s) {
                           expression(*s.cond);
                           block(s.body);
                       },
                       [&](const ForStmt& s) {
                           if (s.init) statement(*s.init);
                           if (s.cond) expression(*s.cond);
                           if (s.step) statement(*s.step);
                           block(s.body);
                       },
                       [&](const ReturnStmt& s) {
                           if (s.value) expression(*s.value);
                       },
                       [&](const ExprStmt& s) { expression(*s.expr); },
                       [&](const AssertStmt& s) {
                           expression(*s.expected);
                           expression(*s.actual);
                       },
                       [](const SkipStmt&) {},
                   },
                   stmt.node);
    }

    void expression(const Expr& expr, bool under_stepper = false) {
        std::visit(
            overloaded{
                [&](const IntLit& e) { constant(expr, e.value); },
                [&](const BoolLit&) {},
                [&](const VarRead& e) {
                    if (!on(MutationOperator::UOI) || under_stepper) return;
                    add(MutationOperator::UOI, InsertUnary{UnaryOp::PreInc}, expr.id,
                        expr.id, expr.span, e.name, "++" + e.name);
                    add(MutationOperator::UOI, InsertUnary{UnaryOp::PreDec}, expr.id,
                        expr.id, expr.span, e.name, "--" + e.name);
                },
                [&](const ArrayLit& e) {
                    for (const auto& elem : e.elements) expression(*elem);
                },
                [&](const IndexExpr& e) {
                    expression(*e.array);
                    expression(*e.index);
                },
                [&](const UnaryExpr& e) {
                    if (e.op == UnaryOp::Neg && on(MutationOperator::InvertNegs))
                        add(MutationOperator::InvertNegs, RemoveNegation{}, expr.id,
                            e.operand->id, expr.span, print_expr(expr),
                            print_expr(*e.operand));
                    bool stepper = e.op == UnaryOp::PreInc || e.op == UnaryOp::PreDec;
                    expression(*e.operand, stepper);
                },
                [&](const BinaryExpr& e) {
                    binary(expr, e);
                    expression(*e.lhs);
                    expression(*e.rhs);
                },
                [&](const CallExpr& e) {
                    for (const auto& arg : e.args) expression(*arg);
                },
            },
            expr.node);
    }

    void binary(const Expr& expr, const BinaryExpr& e) {
        if (is_relational(e.op) && on(MutationOperator::ROR)) {
            for (BinaryOp other : k_relational) {
                if (other == e.op) continue;
                add(MutationOperator::ROR, ReplaceBinaryOperator{other}, expr.id, expr.id,
                    expr.span, print_expr(expr), binary_snippet(expr, other));
            }
        }
        if (is_arithmetic(e.op) && on(MutationOperator::AOR)) {
            for (BinaryOp other : k_arithmetic) {
                if (other == e.op) continue;
                add(MutationOperator::AOR, ReplaceBinaryOperator{other}, expr.id, expr.id,
                    expr.span, print_expr(expr), binary_snippet(expr, other));
            }
        }
        if ((e.op == BinaryOp::BitAnd || e.op == BinaryOp::BitOr) &&
            on(MutationOperator::OBBN)) {
            BinaryOp other =
                e.op == BinaryOp::BitAnd ? BinaryOp::BitOr : BinaryOp::BitAnd;
            add(MutationOperator::OBBN, ReplaceBinaryOperator{other}, expr.id, expr.id,
                expr.span, print_expr(expr), binary_snippet(expr, other));
        }
    }

    void constant(const Expr& expr, std::int64_t c) {
        if (!on(MutationOperator::CRCR)) return;
        auto wrap_add1 = [](std::int64_t v) {
            return static_cast<std::int64_t>(static_cast<std::uint64_t>(v) + 1ULL);
        };
        auto wrap_sub1 = [](std::int64_t v) {
            return static_cast<std::int64_t>(static_cast<std::uint64_t>(v) - 1ULL);
        };
        auto wrap_neg = [](std::int64_t v) {
            return static_cast<std::int64_t>(0ULL - static_cast<std::uint64_t>(v));
        };
        const std::int64_t menu[] = {0, 1, -1, wrap_add1(c), wrap_sub1(c), wrap_neg(c)};
        std::vector<std::int64_t> chosen;
        for (std::int64_t value : menu) {
            if (value == c) continue;
            if (std::find(chosen.begin(), chosen.end(), value) != chosen.end()) continue;
            chosen.push_back(value);
            add(MutationOperator::CRCR, ReplaceWithIntConstant{value}, expr.id, expr.id,
                expr.span, std::to_string(c), std::to_string(value));
        }
    }
};

std::unordered_map<NodeId, NodeId> parent_map(const ProgramUnit& program) {
    std::unordered_map<NodeId, NodeId> parents;
    visit_node_ids(program, [&](NodeId id, NodeId parent) { parents[id] = parent; });
    return parents;
}

bool overlap_with(const std::unordered_map<NodeId, NodeId>& parents, NodeId a, NodeId b) {
    if (a == b) return true;
    for (NodeId cur = a; cur != k_no_node;) {
        auto it = parents.find(cur);
        if (it == parents.end()) break;
        cur = it->second;
        if (cur == b) return true;
    }
    for (NodeId cur = b; cur != k_no_node;) {
        auto it = parents.find(cur);
        if (it == parents.end()) break;
        cur = it->second;
        if (cur == a) return true;
    }
    return false;
}

} // namespace

std::vector<Mutant> generate_foms(const ProgramUnit& program, const CommitDiff& diff,
                                  const MutgenOptions& options) {
    Collector collector(diff, options.operators);
    collector.program(program);
    return collector.take();
}

std::vector<HomPair> pair_homs(const ProgramUnit& program, const std::vector<Mutant>& foms,
                               const MutgenOptions& options) {
    auto parents = parent_map(program);

    // Nearest enclosing statement of a mutant's target (the target itself
    // for statement deletions); groups mutants for the per-statement cap.
    auto owning_stmt = [&](NodeId target) {
        for (NodeId cur = target; cur != k_no_node;) {
            if (find_stmt(program, cur) != nullptr) return cur;
            auto it = parents.find(cur);
            if (it == parents.end()) break;
            cur = it->second;
        }
        return target;
    };

    std::vector<const Mutant*> outside;
    for (const Mutant& m : foms)
        if (m.location == LocationClass::OutsideChange) outside.push_back(&m);

    if (options.hom_cap) {
        std::vector<NodeId> group_order;
        std::unordered_map<NodeId, std::vector<std::size_t>> groups;
        for (std::size_t i = 0; i < outside.size(); ++i) {
            NodeId stmt = owning_stmt(outside[i]->target);
            auto [it, fresh] = groups.try_emplace(stmt);
            if (fresh) group_order.push_back(stmt);
            it->second.push_back(i);
        }
        auto rng = make_rng(options.seed);
        std::vector<bool> keep(outside.size(), true);
        for (NodeId stmt : group_order) {
            std::vector<std::size_t>& members = groups.at(stmt);
            if (members.size() <= *options.hom_cap) continue;
            // uniform sample without replacement; survivors stay in catalog order
            for (std::size_t i = 0; i < *options.hom_cap; ++i) {
                std::size_t j = i + bounded(rng, members.size() - i);
                std::swap(members[i], members[j]);
            }
            for (std::size_t i = *options.hom_cap; i < members.size(); ++i)
                keep[members[i]] = false;
        }
        std::vector<const Mutant*> kept;
        for (std::size_t i = 0; i < outside.size(); ++i)
            if (keep[i]) kept.push_back(outside[i]);
        outside = std::move(kept);
    }

    std::vector<HomPair> pairs;
    for (const Mutant* x : outside) {
        for (const Mutant& y : foms) {
            if (y.location != LocationClass::OnChange) continue;
            if (overlap_with(parents, x->target, y.target)) continue;
            pairs.push_back(HomPair{0, x->id, y.id});
        }
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) pairs[i].id = static_cast<int>(i) + 1;
    return pairs;
}

ProgramUnit apply_mutant(const ProgramUnit& program, const Mutant& mutant) {
    ProgramUnit out = clone(program);
    std::visit(
        overloaded{
            [&](const ReplaceBinaryOperator& edit) {
                ExprPtr* slot = find_expr_slot(out, mutant.target);
                if (!slot || !std::holds_alternative<BinaryExpr>((*slot)->node))
                    throw StaleMutantError(mutant.label() +
                                           " expects a binary expression at node " +
                                           std::to_string(mutant.target));
                std::get<BinaryExpr>((*slot)->node).op = edit.new_op;
            },
            [&](const InsertUnary& edit) {
                ExprPtr* slot = find_expr_slot(out, mutant.target);
                if (!slot || !std::holds_alternative<VarRead>((*slot)->node))
                    throw StaleMutantError(mutant.label() +
                                           " expects a variable read at node " +
                                           std::to_string(mutant.target));
                auto wrapper = std::make_unique<Expr>();
                wrapper->id = -(mutant.id + 1);  // fresh; never collides with k_no_node
                wrapper->span = (*slot)->span;
                wrapper->node = UnaryExpr{edit.op, std::move(*slot)};
                *slot = std::move(wrapper);
            },
            [&](const ReplaceWithIntConstant& edit) {
                ExprPtr* slot = find_expr_slot(out, mutant.target);
                if (!slot)
                    throw StaleMutantError(mutant.label() + " targets missing node " +
                                           std::to_string(mutant.target));
                (*slot)->node = IntLit{edit.value};
            },
            [&](const RemoveNegation&) {
                ExprPtr* slot = find_expr_slot(out, mutant.target);
                if (!slot) throw StaleMutantError(mutant.label() + " targets missing node " +
                                                  std::to_string(mutant.target));
                auto* unary = std::get_if<UnaryExpr>(&(*slot)->node);
                if (!unary || unary->op != UnaryOp::Neg)
                    throw StaleMutantError(mutant.label() + " expects a negation at node " +
                                           std::to_string(mutant.target));
                *slot = std::move(unary->operand);
            },
            [&](const DeleteStatement&) {
                StmtPtr* slot = find_stmt_slot(out, mutant.target);
                if (!slot)
                    throw StaleMutantError(mutant.label() + " targets missing node " +
                                           std::to_string(mutant.target));
                if (std::holds_alternative<SkipStmt>((*slot)->node))
                    throw StaleMutantError(mutant.label() + " targets an already deleted " +
                                           "statement at node " + std::to_string(mutant.target));
                (*slot)->node = SkipStmt{};
            },
        },
        mutant.edit);
    return out;
}

ProgramUnit apply_hom(const ProgramUnit& program, const Mutant& x, const Mutant& y) {
    if (targets_overlap(program, x.target, y.target))
        throw ConflictingTargetsError(x.label() + " and " + y.label() +
                                      " target the same or nested nodes");
    ProgramUnit first = apply_mutant(program, x);
    return apply_mutant(first, y);
}

bool targets_overlap(const ProgramUnit& program, NodeId a, NodeId b) {
    return overlap_with(parent_map(program), a, b);
}

} // namespace cam
