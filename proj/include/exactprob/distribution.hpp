#pragma once

#include <cstddef>
#include <vector>

#include "exactprob/rational.hpp"
#include "exactprob/space.hpp"

namespace exactprob {

/// Per-outcome probability weights. Construction validates the two facts a
/// weight table must satisfy: every weight is nonnegative and the weights
/// sum to exactly 1.
class PriorAssignment {
public:
  PriorAssignment(OutcomeSpace space, std::vector<Rational> weights);

  static PriorAssignment uniform(const OutcomeSpace& space);

  const OutcomeSpace& space() const { return space_; }
  const Rational& weight(std::size_t index) const { return weights_.at(index); }
  const std::vector<Rational>& weights() const { return weights_; }

  friend bool operator==(const PriorAssignment& a, const PriorAssignment& b) {
    return a.space_ == b.space_ && a.weights_ == b.weights_;
  }

private:
  OutcomeSpace space_;
  std::vector<Rational> weights_;
};

/// Canonical event measure: the exact sum of the prior weights of the
/// event's members. pmap(prior, {x}) equals the weight of x.
Rational pmap(const PriorAssignment& prior, const Event& event);

/// Probability distribution over the full powerset of an outcome space,
/// measured by pmap. Positivity and normalization are established by the
/// validated prior; finite additivity of disjoint unions holds because the
/// measure is a sum over members (covered by property tests, not enumerated
/// pairwise at construction).
class Distribution {
public:
  const OutcomeSpace& space() const { return prior_.space(); }
  const PriorAssignment& prior() const { return prior_; }

  Rational measure(const Event& event) const { return pmap(prior_, event); }

private:
  friend Distribution make_distribution(PriorAssignment prior);
  explicit Distribution(PriorAssignment prior) : prior_(std::move(prior)) {}

  PriorAssignment prior_;
};

Distribution make_distribution(PriorAssignment prior);

/// P(a | b) = P(a ∩ b) / P(b). Throws NullConditionError when P(b) = 0;
/// the quotient has no defined fallback value.
Rational cond_prob(const Distribution& dist, const Event& a, const Event& b);

/// Same quotient as cond_prob, exposed under the inference reading:
/// posterior of `hypothesis` given `evidence`.
Rational bayes_posterior(const Distribution& dist, const Event& hypothesis, const Event& evidence);

/// All 2^|Ω| subsets of the space, in increasing bit-pattern order (outcome 0
/// is the lowest bit). Refuses spaces larger than `max_outcomes`.
std::vector<Event> powerset_space(const OutcomeSpace& space, std::size_t max_outcomes = 20);

/// True iff `family` contains the empty and trivial events and is closed
/// under pairwise union and complement. All events must live in `space`.
bool is_prob_space(const std::vector<Event>& family, const OutcomeSpace& space);

}  // namespace exactprob
