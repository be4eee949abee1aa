#include "exactprob/qkd.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "exactprob/errors.hpp"

namespace exactprob::qkd {

namespace {

const Rational kHalf{1, 2};

Rational one_minus(const Rational& p) { return Rational(1) - p; }

std::size_t variable_index(const OutcomeSpace& space, std::string_view name) {
  const auto& vars = space.variables();
  for (std::size_t k = 0; k < vars.size(); ++k)
    if (vars[k] == name) return k;
  throw ValidationError("unknown variable '" + std::string(name) + "'");
}

}  // namespace

OutcomeSpace qkd_space() {
  return OutcomeSpace::boolean_cube({"AsOne", "AchX", "BchX", "BmOne"});
}

PriorAssignment qkd_ops() {
  // Row order (AsOne, AchX, BchX, BmOne), F before T, first variable most
  // significant: FFFF, FFFT, FFTF, ..., TTTT.
  const Rational e{1, 8};
  const Rational s{1, 16};
  const Rational z{0};
  std::vector<Rational> weights = {
      e, z, s, s,
      s, s, e, z,
      z, e, s, s,
      s, s, z, e,
  };
  return PriorAssignment(qkd_space(), std::move(weights));
}

Rational measurement_prob_one(bool encode_basis_x, bool encoded_bit, bool measure_basis_x) {
  if (encode_basis_x == measure_basis_x) return encoded_bit ? Rational(1) : Rational(0);
  return kHalf;
}

ProtocolTree qkd_tree() {
  std::vector<BranchRule> rules;
  rules.push_back(fair_level("AsOne"));
  rules.push_back(fair_level("AchX"));
  rules.push_back(fair_level("BchX"));
  rules.push_back(BranchRule{"BmOne", [](const std::vector<bool>& prefix) -> EdgePair {
                               Rational p = measurement_prob_one(prefix[1], prefix[0], prefix[2]);
                               return {p, one_minus(p)};
                             }});
  return build_tree(rules);
}

Event named_event(const OutcomeSpace& space, std::string_view variable, bool polarity) {
  std::size_t var = variable_index(space, variable);
  return Event::where(space, [&](std::size_t i) { return space.component(i, var) == polarity; });
}

Partition partition_a(const OutcomeSpace& space) {
  std::size_t as_one = variable_index(space, "AsOne");
  std::size_t ach_x = variable_index(space, "AchX");
  std::size_t bch_x = variable_index(space, "BchX");
  std::vector<Event> blocks;
  for (bool s : {true, false})
    for (bool a : {true, false})
      for (bool b : {true, false})
        blocks.push_back(Event::where(space, [&](std::size_t i) {
          return space.component(i, as_one) == s && space.component(i, ach_x) == a &&
                 space.component(i, bch_x) == b;
        }));
  return make_partition(space, std::move(blocks));
}

TotalProbabilityResult p_b_measures_one() {
  OutcomeSpace space = qkd_space();
  Distribution dist = make_distribution(qkd_ops());
  return total_probability(dist, named_event(space, "BmOne", true), partition_a(space));
}

PosteriorReport p_a_sent_one_given_b_measured_one() {
  OutcomeSpace space = qkd_space();
  Distribution dist = make_distribution(qkd_ops());
  Event as_one = named_event(space, "AsOne", true);
  Event bm_one = named_event(space, "BmOne", true);
  PosteriorReport report;
  report.joint = dist.measure(as_one & bm_one);
  report.evidence = dist.measure(bm_one);
  report.posterior = bayes_posterior(dist, as_one, bm_one);
  report.error_prob = one_minus(report.posterior);
  return report;
}

std::pair<OutcomeSpace, PriorAssignment> eve_space_and_prior() {
  OutcomeSpace space =
      OutcomeSpace::boolean_cube({"AsOne", "AchX", "EchX", "EmOne", "BchX", "BmOne"});
  std::vector<BranchRule> rules;
  rules.push_back(fair_level("AsOne"));
  rules.push_back(fair_level("AchX"));
  rules.push_back(fair_level("EchX"));
  rules.push_back(BranchRule{"EmOne", [](const std::vector<bool>& prefix) -> EdgePair {
                               Rational p = measurement_prob_one(prefix[1], prefix[0], prefix[2]);
                               return {p, one_minus(p)};
                             }});
  rules.push_back(fair_level("BchX"));
  rules.push_back(BranchRule{"BmOne", [](const std::vector<bool>& prefix) -> EdgePair {
                               Rational p = measurement_prob_one(prefix[2], prefix[3], prefix[4]);
                               return {p, one_minus(p)};
                             }});
  ProtocolTree tree = build_tree(rules);
  PriorAssignment prior = to_prior(tree, space);
  return {std::move(space), std::move(prior)};
}

InterceptResendStats intercept_resend_stats() {
  auto [space, prior] = eve_space_and_prior();
  Distribution dist = make_distribution(std::move(prior));
  std::size_t as_one = variable_index(space, "AsOne");
  std::size_t ach_x = variable_index(space, "AchX");
  std::size_t em_one = variable_index(space, "EmOne");
  std::size_t bch_x = variable_index(space, "BchX");
  std::size_t bm_one = variable_index(space, "BmOne");
  Event sift = Event::where(space, [&](std::size_t i) {
    return space.component(i, ach_x) == space.component(i, bch_x);
  });
  Event error = Event::where(space, [&](std::size_t i) {
    return space.component(i, bm_one) != space.component(i, as_one);
  });
  Event eve_hit = Event::where(space, [&](std::size_t i) {
    return space.component(i, em_one) == space.component(i, as_one);
  });
  InterceptResendStats stats;
  stats.sifted_prob = dist.measure(sift);
  stats.sifted_qber = cond_prob(dist, error, sift);
  stats.eve_correct_given_sift = cond_prob(dist, eve_hit, sift);
  return stats;
}

namespace {

dsl::ExprPtr sign_atom(const std::string& name, bool polarity) {
  dsl::ExprPtr atom = dsl::Expr::var(name);
  return polarity ? atom : dsl::Expr::negation(std::move(atom));
}

std::vector<std::string> block_names() {
  std::vector<std::string> names;
  for (bool s : {true, false})
    for (bool a : {true, false})
      for (bool b : {true, false}) {
        std::string name = "A_";
        name += b ? 'T' : 'F';
        name += a ? 'T' : 'F';
        name += s ? 'T' : 'F';
        names.push_back(std::move(name));
      }
  return names;
}

}  // namespace

dsl::ModelFile qkd_model() {
  dsl::ModelFile model;
  model.vars = {"AsOne", "AchX", "BchX", "BmOne"};
  PriorAssignment ops = qkd_ops();
  for (std::uint32_t i = 0; i < 16; ++i)
    model.rows.push_back({i, ops.weight(i), {}});

  std::vector<std::string> names = block_names();
  std::size_t block = 0;
  for (bool s : {true, false})
    for (bool a : {true, false})
      for (bool b : {true, false}) {
        dsl::ExprPtr expr = dsl::Expr::conjunction(
            dsl::Expr::conjunction(sign_atom("BchX", b), sign_atom("AchX", a)),
            sign_atom("AsOne", s));
        model.events.push_back({names[block], std::move(expr), {}});
        ++block;
      }

  std::string name_list;
  for (const auto& name : names) name_list += " " + name;
  model.queries.push_back(dsl::parse_query("P(BmOne)"));
  model.queries.push_back(dsl::parse_query("P(AsOne | BmOne)"));
  model.queries.push_back(dsl::parse_query("P(!AsOne | BmOne)"));
  model.queries.push_back(dsl::parse_query("total P(BmOne) by" + name_list));
  model.queries.push_back(dsl::parse_query("partition" + name_list));
  return model;
}

dsl::ModelFile eve_model() {
  dsl::ModelFile model;
  model.vars = {"AsOne", "AchX", "EchX", "EmOne", "BchX", "BmOne"};
  auto [space, prior] = eve_space_and_prior();
  for (std::uint32_t i = 0; i < space.size(); ++i)
    if (!(prior.weight(i) == Rational(0))) model.rows.push_back({i, prior.weight(i), {}});
  model.default_weight = Rational(0);

  model.events.push_back({"Sift", dsl::Expr::equivalence(dsl::Expr::var("AchX"),
                                                         dsl::Expr::var("BchX")),
                          {}});
  model.events.push_back({"Err", dsl::Expr::negation(dsl::Expr::equivalence(
                                     dsl::Expr::var("BmOne"), dsl::Expr::var("AsOne"))),
                          {}});
  model.events.push_back({"EveHit", dsl::Expr::equivalence(dsl::Expr::var("EmOne"),
                                                           dsl::Expr::var("AsOne")),
                          {}});

  model.queries.push_back(dsl::parse_query("P(Sift)"));
  model.queries.push_back(dsl::parse_query("P(Err | Sift)"));
  model.queries.push_back(dsl::parse_query("P(EveHit | Sift)"));
  return model;
}

}  // namespace exactprob::qkd
