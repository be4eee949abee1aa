#include "exactprob/distribution.hpp"

#include <set>

namespace exactprob {

PriorAssignment::PriorAssignment(OutcomeSpace space, std::vector<Rational> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
  if (weights_.size() != space_.size())
    throw ValidationError("prior has " + std::to_string(weights_.size()) + " weights for " +
                          std::to_string(space_.size()) + " outcomes");
  Rational sum;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i].is_negative())
      throw ValidationError("outcome '" + space_.label(i) + "' has negative weight " +
                            weights_[i].str());
    sum += weights_[i];
  }
  if (!(sum == Rational(1)))
    throw ValidationError("prior sums to " + sum.str() + ", expected 1");
}

PriorAssignment PriorAssignment::uniform(const OutcomeSpace& space) {
  std::vector<Rational> w(space.size(), Rational(BigInt(1), BigInt(space.size())));
  return PriorAssignment(space, std::move(w));
}

Rational pmap(const PriorAssignment& prior, const Event& event) {
  require_same_space(prior.space(), event.space());
  Rational sum;
  event.members().for_each([&](std::size_t i) { sum += prior.weight(i); });
  return sum;
}

Distribution make_distribution(PriorAssignment prior) {
  // The prior constructor already established positivity and total mass 1.
  return Distribution(std::move(prior));
}

Rational cond_prob(const Distribution& dist, const Event& a, const Event& b) {
  const Rational pb = dist.measure(b);
  if (pb.is_zero())
    throw NullConditionError("conditioning on an event of probability 0");
  return dist.measure(a & b) / pb;
}

Rational bayes_posterior(const Distribution& dist, const Event& hypothesis, const Event& evidence) {
  return cond_prob(dist, hypothesis, evidence);
}

std::vector<Event> powerset_space(const OutcomeSpace& space, std::size_t max_outcomes) {
  const std::size_t n = space.size();
  if (n > max_outcomes)
    throw ValidationError("refusing to materialize the powerset of " + std::to_string(n) +
                          " outcomes (limit " + std::to_string(max_outcomes) + ")");
  std::vector<Event> events;
  events.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Bitset bits(n);
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1) bits.set(i);
    events.emplace_back(space, std::move(bits));
  }
  return events;
}

bool is_prob_space(const std::vector<Event>& family, const OutcomeSpace& space) {
  std::set<Bitset> members;
  for (const Event& e : family) {
    require_same_space(e.space(), space);
    members.insert(e.members());
  }
  const std::size_t n = space.size();
  // 2^n distinct subsets of an n-element universe is the full powerset,
  // which trivially contains everything and is closed.
  if (n <= 63 && members.size() == (std::size_t{1} << n)) return true;

  if (!members.count(Bitset(n))) return false;
  if (!members.count(Bitset::full(n))) return false;
  for (const Bitset& a : members)
    if (!members.count(~a)) return false;
  for (const Bitset& a : members)
    for (const Bitset& b : members)
      if (!members.count(a | b)) return false;
  return true;
}

}  // namespace exactprob
