#include <map>

#include "exactprob/dsl.hpp"

namespace exactprob::dsl {

namespace {

[[noreturn]] void located(SourceLoc loc, std::string message) {
  throw ModelError({Diagnostic{loc, std::move(message)}});
}

struct Scope {
  const ModelFile& model;
  OutcomeSpace space;
  std::map<std::string, Event> named;  // declared events, resolved in order

  explicit Scope(const ModelFile& m) : model(m), space(m.space()) {
    for (const EventDecl& decl : m.events)
      named.emplace(decl.name, resolve(decl.expr));
  }

  bool eval_bit(const Expr& e, std::size_t outcome) const {
    switch (e.kind) {
      case Expr::Kind::Lit: return e.lit_value;
      case Expr::Kind::Var: {
        for (std::size_t k = 0; k < model.vars.size(); ++k)
          if (model.vars[k] == e.name) return space.component(outcome, k);
        auto it = named.find(e.name);
        if (it == named.end()) located(e.loc, "unknown identifier '" + e.name + "'");
        return it->second.contains(outcome);
      }
      case Expr::Kind::Not: return !eval_bit(*e.lhs, outcome);
      case Expr::Kind::And: return eval_bit(*e.lhs, outcome) && eval_bit(*e.rhs, outcome);
      case Expr::Kind::Or: return eval_bit(*e.lhs, outcome) || eval_bit(*e.rhs, outcome);
      case Expr::Kind::Eq: return eval_bit(*e.lhs, outcome) == eval_bit(*e.rhs, outcome);
    }
    return false;
  }

  Event resolve(const ExprPtr& expr) const {
    return Event::where(space, [&](std::size_t i) { return eval_bit(*expr, i); });
  }

  Event lookup(const std::string& name, SourceLoc loc) const {
    for (std::size_t k = 0; k < model.vars.size(); ++k)
      if (model.vars[k] == name)
        return Event::where(space, [&](std::size_t i) { return space.component(i, k); });
    auto it = named.find(name);
    if (it == named.end()) located(loc, "unknown event '" + name + "' in query");
    return it->second;
  }
};

}  // namespace

Event resolve_event(const ModelFile& model, const ExprPtr& expr) {
  return Scope(model).resolve(expr);
}

QueryOutcome eval_query(const ModelFile& model, const Query& query) {
  Scope scope(model);
  const Distribution dist = make_distribution(model.prior());

  QueryOutcome out;
  out.query = query;
  switch (query.kind) {
    case Query::Kind::Marginal:
      out.value = dist.measure(scope.resolve(query.event));
      break;
    case Query::Kind::Conditional: {
      const Event given = scope.resolve(query.given);
      try {
        out.value = cond_prob(dist, scope.resolve(query.event), given);
      } catch (const NullConditionError&) {
        located(query.loc, "conditioning on '" + expr_text(*query.given) +
                               "', which has probability 0");
      }
      break;
    }
    case Query::Kind::Total: {
      std::vector<Event> blocks;
      for (const std::string& name : query.names)
        blocks.push_back(scope.lookup(name, query.loc));
      const PartitionReport report = check_partition(scope.space, blocks);
      if (!report.valid) located(query.loc, "not a partition: " + report.message);
      const TotalProbabilityResult result =
          total_probability(dist, scope.resolve(query.event), make_partition(scope.space, blocks));
      out.value = result.total;
      for (std::size_t i = 0; i < result.terms.size(); ++i) {
        const TotalProbabilityTerm& term = result.terms[i];
        out.blocks.push_back({query.names[i], term.block_prob, term.joint_prob, term.conditional});
      }
      break;
    }
    case Query::Kind::PartitionCheck: {
      std::vector<Event> blocks;
      for (const std::string& name : query.names)
        blocks.push_back(scope.lookup(name, query.loc));
      out.partition_report = check_partition(scope.space, blocks);
      break;
    }
  }
  return out;
}

}  // namespace exactprob::dsl
