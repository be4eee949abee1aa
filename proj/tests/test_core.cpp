#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "exactprob/distribution.hpp"
#include "exactprob/partition.hpp"

using namespace exactprob;

namespace {

OutcomeSpace letters(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(1, char('a' + i)));
  return OutcomeSpace(std::move(labels));
}

PriorAssignment random_prior(const OutcomeSpace& space, std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, 12);
  std::vector<BigInt> nums(space.size());
  BigInt total = 0;
  for (auto& n : nums) {
    n = pick(rng);
    total += n;
  }
  if (total == 0) {
    nums[rng() % nums.size()] = 1;
    total = 1;
  }
  std::vector<Rational> weights;
  weights.reserve(nums.size());
  for (const auto& n : nums) weights.emplace_back(n, total);
  return PriorAssignment(space, std::move(weights));
}

Event random_event(const OutcomeSpace& space, std::mt19937& rng) {
  Bitset bits(space.size());
  for (std::size_t i = 0; i < space.size(); ++i)
    if (rng() & 1) bits.set(i);
  return Event(space, std::move(bits));
}

Partition random_partition(const OutcomeSpace& space, std::mt19937& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, space.size() - 1);
  std::map<std::size_t, Bitset> buckets;
  for (std::size_t i = 0; i < space.size(); ++i) {
    std::size_t key = pick(rng);
    auto [it, fresh] = buckets.try_emplace(key, Bitset(space.size()));
    it->second.set(i);
  }
  std::vector<Event> blocks;
  for (auto& [key, bits] : buckets) blocks.emplace_back(space, std::move(bits));
  return make_partition(space, std::move(blocks));
}

// Direct restatement of the closure definition, with no shortcut for the
// full powerset. Used to cross-check is_prob_space.
bool naive_is_prob_space(const std::vector<Event>& family, const OutcomeSpace& space) {
  std::set<Bitset> members;
  for (const Event& e : family) members.insert(e.members());
  const std::size_t n = space.size();
  if (!members.count(Bitset(n)) || !members.count(Bitset::full(n))) return false;
  for (const Bitset& a : members) {
    if (!members.count(~a)) return false;
    for (const Bitset& b : members)
      if (!members.count(a | b)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("outcome space validation") {
  CHECK_THROWS_AS(OutcomeSpace(std::vector<std::string>{}), ValidationError);
  CHECK_THROWS_WITH(OutcomeSpace({"x", "x"}), "duplicate outcome label 'x'");
  OutcomeSpace s({"heads", "tails"});
  CHECK(s.size() == 2);
  CHECK(s.label(1) == "tails");
  CHECK(s.index_of("heads") == std::size_t{0});
  CHECK_FALSE(s.index_of("edge").has_value());
  CHECK_FALSE(s.is_boolean_cube());
}

TEST_CASE("boolean cube enumeration order") {
  OutcomeSpace cube = OutcomeSpace::boolean_cube({"A", "B"});
  CHECK(cube.labels() == std::vector<std::string>{"FF", "FT", "TF", "TT"});
  CHECK(cube.variables() == std::vector<std::string>{"A", "B"});
  CHECK(cube.is_boolean_cube());
  CHECK_FALSE(cube.component(1, 0));  // FT: A false
  CHECK(cube.component(1, 1));        // FT: B true
  CHECK(cube.component(2, 0));        // TF: A true
  CHECK_THROWS_AS(cube.component(0, 5), ValidationError);
  CHECK_THROWS_AS(OutcomeSpace::boolean_cube({}), ValidationError);
  std::vector<std::string> many(21);
  for (std::size_t i = 0; i < many.size(); ++i) many[i] = "v" + std::to_string(i);
  CHECK_THROWS_AS(OutcomeSpace::boolean_cube(many), ValidationError);
}

TEST_CASE("event algebra") {
  OutcomeSpace s = letters(4);
  Event a = Event::where(s, [](std::size_t i) { return i < 2; });
  Event b = Event::where(s, [](std::size_t i) { return i % 2 == 0; });
  CHECK((a & b).member_indices() == std::vector<std::size_t>{0});
  CHECK((a | b).member_indices() == std::vector<std::size_t>{0, 1, 2});
  CHECK(a.complement().member_indices() == std::vector<std::size_t>{2, 3});
  CHECK(a.is_subset_of(a | b));
  CHECK_FALSE(a.disjoint_with(b));
  CHECK(Event::singleton(s, 3).disjoint_with(a));
  CHECK(Event::none(s).is_empty());
  CHECK(Event::all(s).is_full());
  CHECK_THROWS_AS(Event::singleton(s, 9), ValidationError);

  OutcomeSpace other = letters(3);
  CHECK_THROWS_AS(a & Event::none(other), SpaceMismatchError);
  CHECK_THROWS_AS(a | Event::none(other), SpaceMismatchError);
}

TEST_CASE("prior validation messages") {
  OutcomeSpace s = letters(2);
  CHECK_THROWS_WITH(PriorAssignment(s, {Rational(1, 2), Rational(3, 8)}),
                    "prior sums to 7/8, expected 1");
  CHECK_THROWS_WITH(PriorAssignment(s, {Rational(-1, 4), Rational(5, 4)}),
                    "outcome 'a' has negative weight -1/4");
  CHECK_THROWS_WITH(PriorAssignment(s, {Rational(1)}), "prior has 1 weights for 2 outcomes");
  PriorAssignment uniform = PriorAssignment::uniform(s);
  CHECK(uniform.weight(0) == Rational(1, 2));
}

TEST_CASE("pmap sums member weights") {
  OutcomeSpace s = letters(3);
  PriorAssignment prior(s, {Rational(1, 2), Rational(1, 3), Rational(1, 6)});
  CHECK(pmap(prior, Event::all(s)) == Rational(1));
  CHECK(pmap(prior, Event::none(s)) == Rational(0));
  CHECK(pmap(prior, Event::singleton(s, 1)) == Rational(1, 3));
  Event two = Event::where(s, [](std::size_t i) { return i != 0; });
  CHECK(pmap(prior, two) == Rational(1, 2));
  CHECK_THROWS_AS(pmap(prior, Event::none(letters(2))), SpaceMismatchError);
}

TEST_CASE("conditional probability and null conditioning") {
  OutcomeSpace s = letters(4);
  Distribution d = make_distribution(
      PriorAssignment(s, {Rational(1, 4), Rational(1, 4), Rational(1, 2), Rational(0)}));
  Event a = Event::where(s, [](std::size_t i) { return i < 2; });
  Event b = Event::where(s, [](std::size_t i) { return i % 2 == 0; });
  CHECK(cond_prob(d, a, b) == Rational(1, 3));
  CHECK(bayes_posterior(d, a, b) == cond_prob(d, a, b));
  CHECK(cond_prob(d, a, a) == Rational(1));
  Event null_event = Event::singleton(s, 3);
  CHECK_THROWS_AS(cond_prob(d, a, null_event), NullConditionError);
  CHECK_THROWS_WITH(cond_prob(d, a, null_event), "conditioning on an event of probability 0");
}

TEST_CASE("axiom properties on randomized priors") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> size_pick(1, 8);
  for (int iter = 0; iter < 1200; ++iter) {
    OutcomeSpace s = letters(size_pick(rng));
    Distribution d = make_distribution(random_prior(s, rng));
    Event a = random_event(s, rng);
    Event b = random_event(s, rng);

    CHECK(d.measure(Event::all(s)) == Rational(1));
    CHECK(d.measure(Event::none(s)) == Rational(0));
    CHECK(d.measure(a) >= Rational(0));
    CHECK(d.measure(a) <= Rational(1));
    CHECK(d.measure(a.complement()) == Rational(1) - d.measure(a));
    CHECK(d.measure(a) <= d.measure(a | b));
    if (a.disjoint_with(b)) CHECK(d.measure(a | b) == d.measure(a) + d.measure(b));
    Event meet = a & b;
    CHECK(d.measure(a | b) == d.measure(a) + d.measure(b) - d.measure(meet));

    Rational singleton_sum;
    a.members().for_each(
        [&](std::size_t i) { singleton_sum += d.measure(Event::singleton(s, i)); });
    CHECK(singleton_sum == d.measure(a));
  }
}

TEST_CASE("total probability equals the direct measure") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::size_t> size_pick(1, 8);
  for (int iter = 0; iter < 1200; ++iter) {
    OutcomeSpace s = letters(size_pick(rng));
    Distribution d = make_distribution(random_prior(s, rng));
    Event b = random_event(s, rng);
    Partition part = random_partition(s, rng);
    TotalProbabilityResult result = total_probability(d, b, part);
    CHECK(result.total == d.measure(b));
    Rational joint_sum;
    Rational block_sum;
    for (const auto& term : result.terms) {
      joint_sum += term.joint_prob;
      block_sum += term.block_prob;
      if (term.conditional)
        CHECK(*term.conditional * term.block_prob == term.joint_prob);
      else
        CHECK(term.block_prob == Rational(0));
    }
    CHECK(joint_sum == result.total);
    CHECK(block_sum == Rational(1));
  }
}

TEST_CASE("partition validation messages") {
  OutcomeSpace s = letters(3);
  Event ab = Event::where(s, [](std::size_t i) { return i < 2; });
  Event c = Event::singleton(s, 2);
  Event bc = Event::where(s, [](std::size_t i) { return i > 0; });

  CHECK(check_partition(s, {ab, c}).valid);
  PartitionReport overlap = check_partition(s, {ab, bc});
  CHECK_FALSE(overlap.valid);
  CHECK(overlap.message == "blocks 1 and 2 overlap (outcome 'b')");
  PartitionReport gap = check_partition(s, {ab});
  CHECK_FALSE(gap.valid);
  CHECK(gap.message == "outcome 'c' is not covered by any block");
  PartitionReport empty = check_partition(s, {ab, c, Event::none(s)});
  CHECK_FALSE(empty.valid);
  CHECK(empty.message == "block 3 is empty");
  PartitionReport none = check_partition(s, {});
  CHECK_FALSE(none.valid);
  CHECK_THROWS_AS(make_partition(s, {ab, bc}), ValidationError);
  CHECK(make_partition(s, {ab, c}).size() == 2);
}

TEST_CASE("powerset space enumerates every subset") {
  OutcomeSpace s = letters(3);
  std::vector<Event> family = powerset_space(s);
  CHECK(family.size() == 8);
  std::set<Bitset> distinct;
  for (const Event& e : family) distinct.insert(e.members());
  CHECK(distinct.size() == 8);
  CHECK(family.front().is_empty());
  CHECK(family.back().is_full());
  CHECK_THROWS_WITH(powerset_space(letters(21)),
                    "refusing to materialize the powerset of 21 outcomes (limit 20)");
  CHECK_THROWS_AS(powerset_space(letters(5), 4), ValidationError);
}

TEST_CASE("powerset families satisfy closure, including a large one") {
  for (std::size_t n = 1; n <= 6; ++n) {
    OutcomeSpace s = letters(n);
    CHECK(is_prob_space(powerset_space(s), s));
  }
  OutcomeSpace big = letters(16);
  std::vector<Event> family = powerset_space(big, 16);
  CHECK(family.size() == 65536);
  CHECK(is_prob_space(family, big));
}

TEST_CASE("non-closed families are rejected") {
  OutcomeSpace s = letters(2);
  Event empty = Event::none(s);
  Event full = Event::all(s);
  Event a = Event::singleton(s, 0);
  Event b = Event::singleton(s, 1);

  CHECK(is_prob_space({empty, full}, s));
  CHECK(is_prob_space({empty, full, a, b}, s));
  CHECK_FALSE(is_prob_space({empty, a}, s));
  CHECK_FALSE(is_prob_space({empty, full, a}, s));  // complement {b} missing
  CHECK_FALSE(is_prob_space({full}, s));
  CHECK_FALSE(is_prob_space({}, s));
  // Duplicates must not count toward the powerset size shortcut.
  CHECK_FALSE(is_prob_space({empty, empty, a, a}, s));

  OutcomeSpace s3 = letters(3);
  std::vector<Event> almost = powerset_space(s3);
  almost.pop_back();
  CHECK_FALSE(is_prob_space(almost, s3));

  CHECK_THROWS_AS(is_prob_space({Event::none(letters(3))}, s), SpaceMismatchError);
}

TEST_CASE("is_prob_space agrees with the naive definition on random families") {
  std::mt19937 rng(13);
  std::uniform_int_distribution<std::size_t> size_pick(1, 4);
  for (int iter = 0; iter < 400; ++iter) {
    OutcomeSpace s = letters(size_pick(rng));
    std::vector<Event> all = powerset_space(s);
    std::vector<Event> family;
    for (const Event& e : all)
      if (rng() % 3 != 0) family.push_back(e);
    // Bias toward interesting cases: sometimes force the closure seeds in.
    if (rng() & 1) {
      family.push_back(Event::none(s));
      family.push_back(Event::all(s));
    }
    CHECK(is_prob_space(family, s) == naive_is_prob_space(family, s));
  }
}
