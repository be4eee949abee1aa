#include <algorithm>
#include <sstream>

#include "exactprob/dsl.hpp"

namespace exactprob::dsl {

namespace {

// Precedence for the printer; higher binds tighter.
int precedence(Expr::Kind kind) {
  switch (kind) {
    case Expr::Kind::Or: return 0;
    case Expr::Kind::And: return 1;
    case Expr::Kind::Eq: return 2;
    case Expr::Kind::Not: return 3;
    case Expr::Kind::Var:
    case Expr::Kind::Lit: return 4;
  }
  return 4;
}

void print_expr(std::ostream& out, const Expr& e, int min_prec) {
  const int prec = precedence(e.kind);
  const bool parens = prec < min_prec;
  if (parens) out << '(';
  switch (e.kind) {
    case Expr::Kind::Var: out << e.name; break;
    case Expr::Kind::Lit: out << (e.lit_value ? "true" : "false"); break;
    case Expr::Kind::Not:
      out << '!';
      print_expr(out, *e.lhs, prec);
      break;
    case Expr::Kind::And:
    case Expr::Kind::Or:
    case Expr::Kind::Eq: {
      const char* op = e.kind == Expr::Kind::And ? " && "
                       : e.kind == Expr::Kind::Or ? " || "
                                                  : " == ";
      // Left-associative: the left child may share this precedence level,
      // the right child must bind strictly tighter.
      print_expr(out, *e.lhs, prec);
      out << op;
      print_expr(out, *e.rhs, prec + 1);
      break;
    }
  }
  if (parens) out << ')';
}

}  // namespace

std::string expr_text(const Expr& e) {
  std::ostringstream out;
  print_expr(out, e, 0);
  return out.str();
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::Var: return a->name == b->name;
    case Expr::Kind::Lit: return a->lit_value == b->lit_value;
    case Expr::Kind::Not: return expr_equal(a->lhs, b->lhs);
    default: return expr_equal(a->lhs, b->lhs) && expr_equal(a->rhs, b->rhs);
  }
}

std::string Query::text() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Marginal:
      out << "P(" << expr_text(*event) << ")";
      break;
    case Kind::Conditional:
      out << "P(" << expr_text(*event) << " | " << expr_text(*given) << ")";
      break;
    case Kind::Total:
      out << "total P(" << expr_text(*event) << ") by";
      for (const std::string& n : names) out << ' ' << n;
      break;
    case Kind::PartitionCheck:
      out << "partition";
      for (const std::string& n : names) out << ' ' << n;
      break;
  }
  return out.str();
}

std::string emit_model(const ModelFile& model) {
  std::ostringstream out;
  out << "vars:";
  for (const std::string& v : model.vars) out << ' ' << v;
  out << "\n\nprior:\n";
  std::vector<PriorRow> rows = model.rows;
  std::sort(rows.begin(), rows.end(),
            [](const PriorRow& a, const PriorRow& b) { return a.pattern < b.pattern; });
  for (const PriorRow& row : rows)
    out << "  " << model.pattern_text(row.pattern) << " -> " << row.value.str() << "\n";
  if (model.default_weight)
    out << "  default -> " << model.default_weight->str() << "\n";
  if (!model.events.empty()) {
    out << "\nevents:\n";
    for (const EventDecl& e : model.events)
      out << "  " << e.name << " = " << expr_text(*e.expr) << "\n";
  }
  if (!model.queries.empty()) {
    out << "\nqueries:\n";
    for (const Query& q : model.queries) out << "  " << q.text() << "\n";
  }
  return out.str();
}

bool operator==(const ModelFile& a, const ModelFile& b) {
  if (a.vars != b.vars) return false;
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    if (a.rows[i].pattern != b.rows[i].pattern || !(a.rows[i].value == b.rows[i].value))
      return false;
  if (a.default_weight.has_value() != b.default_weight.has_value()) return false;
  if (a.default_weight && !(*a.default_weight == *b.default_weight)) return false;
  if (a.events.size() != b.events.size()) return false;
  for (std::size_t i = 0; i < a.events.size(); ++i)
    if (a.events[i].name != b.events[i].name || !expr_equal(a.events[i].expr, b.events[i].expr))
      return false;
  if (a.queries.size() != b.queries.size()) return false;
  for (std::size_t i = 0; i < a.queries.size(); ++i) {
    const Query& qa = a.queries[i];
    const Query& qb = b.queries[i];
    if (qa.kind != qb.kind || qa.names != qb.names) return false;
    if (!expr_equal(qa.event, qb.event) || !expr_equal(qa.given, qb.given)) return false;
  }
  return true;
}

}  // namespace exactprob::dsl
