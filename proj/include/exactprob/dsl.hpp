#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exactprob/distribution.hpp"
#include "exactprob/partition.hpp"
#include "exactprob/rational.hpp"

namespace exactprob::dsl {

struct SourceLoc {
  int line = 1;  // 1-based
  int col = 1;   // 1-based
};

struct Diagnostic {
  SourceLoc loc;
  std::string message;

  std::string render() const {
    return std::to_string(loc.line) + ":" + std::to_string(loc.col) + ": " + message;
  }
};

/// Raised by the model parser and query evaluator. Every failure mode ends
/// here with at least one located diagnostic; nothing escapes unlocated.
class ModelError : public Error {
public:
  explicit ModelError(std::vector<Diagnostic> diags);
  const std::vector<Diagnostic>& diagnostics() const { return diags_; }

private:
  std::vector<Diagnostic> diags_;
};

// --- Boolean event expressions ------------------------------------------

/// Immutable expression node. Operators: ! (not), && (and), || (or),
/// == (equivalence); leaves are identifiers (variables or named events) and
/// the literals `true` / `false`. The single bar `|` is not an expression
/// operator: it separates the two sides of a conditional query.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Var, Lit, Not, And, Or, Eq };

  Kind kind;
  std::string name;        // Var
  bool lit_value = false;  // Lit
  ExprPtr lhs, rhs;        // Not uses lhs only
  SourceLoc loc;

  static ExprPtr var(std::string name, SourceLoc loc = {});
  static ExprPtr lit(bool value, SourceLoc loc = {});
  static ExprPtr negation(ExprPtr operand, SourceLoc loc = {});
  static ExprPtr conjunction(ExprPtr lhs, ExprPtr rhs, SourceLoc loc = {});
  static ExprPtr disjunction(ExprPtr lhs, ExprPtr rhs, SourceLoc loc = {});
  static ExprPtr equivalence(ExprPtr lhs, ExprPtr rhs, SourceLoc loc = {});
};

bool expr_equal(const ExprPtr& a, const ExprPtr& b);

/// Canonical text with minimal parentheses; parsing it back yields a
/// structurally equal expression.
std::string expr_text(const Expr& e);

// --- Model file ----------------------------------------------------------

struct PriorRow {
  std::uint32_t pattern = 0;  // bits of the assignment, first variable most significant
  Rational value;
  SourceLoc loc;
};

struct EventDecl {
  std::string name;
  ExprPtr expr;
  SourceLoc loc;
};

struct Query {
  enum class Kind { Marginal, Conditional, Total, PartitionCheck };

  Kind kind = Kind::Marginal;
  ExprPtr event;                    // Marginal, Conditional, Total
  ExprPtr given;                    // Conditional
  std::vector<std::string> names;   // Total (block events), PartitionCheck
  SourceLoc loc;

  std::string text() const;
};

/// Parsed model: declared variables, the prior rows (kept sorted in
/// canonical outcome order), an optional default weight for unlisted
/// patterns, named events, and stored queries.
struct ModelFile {
  std::vector<std::string> vars;
  std::vector<PriorRow> rows;
  std::optional<Rational> default_weight;
  std::vector<EventDecl> events;
  std::vector<Query> queries;

  OutcomeSpace space() const;

  /// Weight table with default-filled gaps. Throws ValidationError when the
  /// rows are incomplete without a default or do not form a prior.
  PriorAssignment prior() const;

  /// Pattern string for one outcome, e.g. "T F F T".
  std::string pattern_text(std::uint32_t pattern) const;
};

bool operator==(const ModelFile& a, const ModelFile& b);

/// Parses the line-oriented model format. Sections in order: `vars:`,
/// `prior:`, then optional `events:` and `queries:`; `#` starts a comment.
/// All lexical, syntax, and semantic problems are collected and thrown as
/// one ModelError; the function never crashes on arbitrary byte input.
ModelFile parse_model(std::string_view text);

/// Canonical emission: two-space indented section bodies, single spaces
/// between tokens, "\n" line endings, prior rows in canonical outcome
/// order. parse_model(emit_model(m)) is structurally equal to m, and
/// emission is idempotent across a parse round trip.
std::string emit_model(const ModelFile& model);

/// Parses one query string ("P(A | B)", "total P(E) by A B", ...) using the
/// exact grammar of the `queries:` section. Locations are relative to the
/// string, line 1.
Query parse_query(std::string_view text);

// --- Query evaluation ----------------------------------------------------

struct BlockTermView {
  std::string label;
  Rational block_prob;
  Rational joint_prob;
  std::optional<Rational> conditional;
};

struct QueryOutcome {
  Query query;
  std::optional<Rational> value;                     // Marginal, Conditional, Total
  std::vector<BlockTermView> blocks;                 // Total
  std::optional<PartitionReport> partition_report;   // PartitionCheck
};

/// Evaluates a query against the model's distribution. Unknown identifiers,
/// conditioning on a null event, and invalid partitions in `total` queries
/// are reported as ModelError at the query's source location.
QueryOutcome eval_query(const ModelFile& model, const Query& query);

/// Resolves an expression to the event it denotes over the model's space.
Event resolve_event(const ModelFile& model, const ExprPtr& expr);

}  // namespace exactprob::dsl
