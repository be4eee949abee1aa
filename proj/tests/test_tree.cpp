#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "exactprob/tree.hpp"

using namespace exactprob;

TEST_CASE("two fair levels give a uniform leaf table") {
  ProtocolTree tree = build_tree({fair_level("X"), fair_level("Y")});
  CHECK(tree.levels() == 2);
  CHECK(tree.leaf_count() == 4);
  for (const Rational& leaf : tree.leaves()) CHECK(leaf == Rational(1, 4));
  OutcomeSpace cube = OutcomeSpace::boolean_cube({"X", "Y"});
  PriorAssignment prior = to_prior(tree, cube);
  CHECK(prior == PriorAssignment::uniform(cube));
}

TEST_CASE("constant and prefix-dependent levels") {
  std::vector<BranchRule> rules;
  rules.push_back(constant_level("Rain", Rational(1, 3)));
  // Umbrella is likelier when it rains.
  rules.push_back(BranchRule{"Umbrella", [](const std::vector<bool>& prefix) -> EdgePair {
                               if (prefix[0]) return {Rational(9, 10), Rational(1, 10)};
                               return {Rational(1, 5), Rational(4, 5)};
                             }});
  ProtocolTree tree = build_tree(rules);
  // Leaf order: FF, FT, TF, TT.
  CHECK(tree.leaves()[0] == Rational(2, 3) * Rational(4, 5));
  CHECK(tree.leaves()[1] == Rational(2, 3) * Rational(1, 5));
  CHECK(tree.leaves()[2] == Rational(1, 3) * Rational(1, 10));
  CHECK(tree.leaves()[3] == Rational(1, 3) * Rational(9, 10));
  CHECK(leaf_probability(tree, {true, true}) == Rational(3, 10));
  CHECK(leaf_probability(tree, {false, false}) == Rational(8, 15));
  CHECK_THROWS_WITH(leaf_probability(tree, {true}), "assignment has 1 choices for a 2-level tree");

  Rational total;
  for (const Rational& leaf : tree.leaves()) total += leaf;
  CHECK(total == Rational(1));
}

TEST_CASE("edge validation names the offending node") {
  std::vector<BranchRule> rules;
  rules.push_back(fair_level("A"));
  rules.push_back(BranchRule{"B", [](const std::vector<bool>& prefix) -> EdgePair {
                               if (prefix[0]) return {Rational(2, 3), Rational(1, 2)};
                               return {Rational(1, 2), Rational(1, 2)};
                             }});
  CHECK_THROWS_WITH(build_tree(rules),
                    "level 'B', prefix 'T': edge pair 2/3 / 1/2 is not a probability split");

  std::vector<BranchRule> negative;
  negative.push_back(BranchRule{"N", [](const std::vector<bool>&) -> EdgePair {
                                  return {Rational(3, 2), Rational(-1, 2)};
                                }});
  CHECK_THROWS_AS(build_tree(negative), ValidationError);
}

TEST_CASE("level limits") {
  CHECK_THROWS_AS(build_tree({}), ValidationError);
  std::vector<BranchRule> rules;
  for (int i = 0; i < 21; ++i) rules.push_back(fair_level("L" + std::to_string(i)));
  CHECK_THROWS_WITH(build_tree(rules), "tree has 21 levels (limit 20)");
  CHECK(build_tree(rules, 21).leaf_count() == std::size_t{1} << 21);
}

TEST_CASE("to_prior rejects a mismatched space") {
  ProtocolTree tree = build_tree({fair_level("X")});
  OutcomeSpace cube = OutcomeSpace::boolean_cube({"X", "Y"});
  CHECK_THROWS_WITH(to_prior(tree, cube),
                    "space of 4 outcomes does not match a tree with 2 leaves");
}

TEST_CASE("render lists both branches true-first") {
  ProtocolTree tree = build_tree({constant_level("Coin", Rational(1, 3))});
  CHECK(tree.render() ==
        "Coin T:1/3\n"
        "  -> 1/3\n"
        "Coin F:2/3\n"
        "  -> 2/3\n");
}

TEST_CASE("edges_at addresses nodes by prefix bits") {
  std::vector<BranchRule> rules;
  rules.push_back(fair_level("A"));
  rules.push_back(BranchRule{"B", [](const std::vector<bool>& prefix) -> EdgePair {
                               if (prefix[0]) return {Rational(1), Rational(0)};
                               return {Rational(0), Rational(1)};
                             }});
  ProtocolTree tree = build_tree(rules);
  CHECK(tree.edges_at(1, 1).first == Rational(1));
  CHECK(tree.edges_at(1, 0).first == Rational(0));
  CHECK(tree.edges_at(0, 0).first == Rational(1, 2));
}
