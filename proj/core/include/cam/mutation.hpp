#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cam/ast.hpp"
#include "cam/diff.hpp"

namespace cam {

enum class MutationOperator { ROR, AOR, UOI, CRCR, OBBN, InvertNegs, SDL };

const char* mutation_operator_name(MutationOperator op);
std::optional<MutationOperator> mutation_operator_from_name(const std::string& name);
std::vector<MutationOperator> all_mutation_operators();

/// The edit a mutant performs at its target node.
struct ReplaceBinaryOperator { BinaryOp new_op; };          // ROR, AOR, OBBN
struct InsertUnary { UnaryOp op; };                         // UOI: wrap a variable read
struct ReplaceWithIntConstant { std::int64_t value; };      // CRCR and hand-built replacements
struct RemoveNegation {};                                   // InvertNegs
struct DeleteStatement {};                                  // SDL: statement becomes `;`
using MutationEdit = std::variant<ReplaceBinaryOperator, InsertUnary, ReplaceWithIntConstant,
                                  RemoveNegation, DeleteStatement>;

/// A first-order mutant: one edit at one node of the subject program.
struct Mutant {
    int id = 0;                    // catalog index, 1-based
    MutationOperator op = MutationOperator::ROR;
    MutationEdit edit;
    NodeId target = k_no_node;     // node the edit applies to
    NodeId anchor = k_no_node;     // node whose coverage proves the edit executed
    Span span;                     // target span in the unmutated program
    std::string original;          // snippet before the edit
    std::string replacement;       // snippet after the edit
    LocationClass location = LocationClass::OutsideChange;

    std::string label() const { return "m" + std::to_string(id); }
};

/// A second-order pairing: x is an outside-change mutant, y an on-change
/// mutant, applied together to form the higher-order mutant.
struct HomPair {
    int id = 0;  // 1-based
    int x = 0;   // Mutant::id, outside the change
    int y = 0;   // Mutant::id, on the change

    std::string label() const { return "h" + std::to_string(id); }
};

struct MutgenOptions {
    /// Operator families to apply; empty means all seven.
    std::vector<MutationOperator> operators;
    /// At most this many outside-change mutants are paired per statement;
    /// larger groups are sampled uniformly without replacement, driven by
    /// `seed`, and the survivors keep their catalog order.
    std::optional<std::size_t> hom_cap;
    std::uint64_t seed = 0;
};

/// Enumerates first-order mutants in deterministic order: by target node id,
/// then by the family's replacement menu. No mutant is a no-op; each one's
/// AST differs structurally from the original. Location is classified
/// against `diff` by the target's span.
std::vector<Mutant> generate_foms(const ProgramUnit& program, const CommitDiff& diff,
                                  const MutgenOptions& options = {});

/// All (outside-change, on-change) pairs over distinct, non-nested target
/// nodes, outside mutant varying slowest. Subject to the per-statement
/// hom_cap sampling.
std::vector<HomPair> pair_homs(const ProgramUnit& program, const std::vector<Mutant>& foms,
                               const MutgenOptions& options = {});

/// Applies one edit to a copy of the program. Node ids of unaffected nodes
/// are preserved; UOI's inserted operator node gets a fresh negative id that
/// depends only on the mutant, so applying two mutants commutes and the new
/// node never lands in anyone's coverage slot.
/// Throws StaleMutantError when the target id is missing or its node shape
/// no longer matches the edit.
ProgramUnit apply_mutant(const ProgramUnit& program, const Mutant& mutant);

/// Applies both edits of a pair; the result does not depend on application
/// order. Throws ConflictingTargetsError when the two targets are the same
/// node or one contains the other.
ProgramUnit apply_hom(const ProgramUnit& program, const Mutant& x, const Mutant& y);

/// True when one of the two nodes is an ancestor of the other (or the same
/// node); such pairs cannot form a higher-order mutant.
bool targets_overlap(const ProgramUnit& program, NodeId a, NodeId b);

} // namespace cam
