#include "exactprob/tree.hpp"

#include <sstream>

namespace exactprob {

namespace {

std::string prefix_pattern(std::size_t prefix_index, std::size_t length) {
  std::string s(length, 'F');
  for (std::size_t k = 0; k < length; ++k)
    if ((prefix_index >> (length - 1 - k)) & 1) s[k] = 'T';
  return s;
}

std::vector<bool> prefix_choices(std::size_t prefix_index, std::size_t length) {
  std::vector<bool> v(length);
  for (std::size_t k = 0; k < length; ++k) v[k] = (prefix_index >> (length - 1 - k)) & 1;
  return v;
}

}  // namespace

BranchRule fair_level(std::string variable) {
  return {std::move(variable), [](const std::vector<bool>&) {
            return EdgePair{Rational(BigInt(1), BigInt(2)), Rational(BigInt(1), BigInt(2))};
          }};
}

BranchRule constant_level(std::string variable, Rational prob_true) {
  Rational rest = Rational(1) - prob_true;
  return {std::move(variable),
          [p = std::move(prob_true), q = std::move(rest)](const std::vector<bool>&) {
            return EdgePair{p, q};
          }};
}

ProtocolTree build_tree(const std::vector<BranchRule>& rules, std::size_t max_levels) {
  if (rules.empty()) throw ValidationError("tree needs at least one level");
  if (rules.size() > max_levels)
    throw ValidationError("tree has " + std::to_string(rules.size()) + " levels (limit " +
                          std::to_string(max_levels) + ")");
  ProtocolTree tree;
  for (const auto& rule : rules) tree.names_.push_back(rule.variable);

  const std::size_t levels = rules.size();
  tree.edges_.resize(levels);
  for (std::size_t level = 0; level < levels; ++level) {
    const std::size_t prefixes = std::size_t{1} << level;
    tree.edges_[level].reserve(prefixes);
    for (std::size_t p = 0; p < prefixes; ++p) {
      EdgePair pair = rules[level].edge_probs(prefix_choices(p, level));
      if (pair.first.is_negative() || pair.second.is_negative() ||
          !(pair.first + pair.second == Rational(1))) {
        throw ValidationError("level '" + rules[level].variable + "', prefix '" +
                              prefix_pattern(p, level) + "': edge pair " + pair.first.str() +
                              " / " + pair.second.str() + " is not a probability split");
      }
      tree.edges_[level].push_back(std::move(pair));
    }
  }

  tree.leaves_.assign(std::size_t{1} << levels, Rational(1));
  for (std::size_t leaf = 0; leaf < tree.leaves_.size(); ++leaf) {
    for (std::size_t level = 0; level < levels; ++level) {
      const std::size_t prefix = leaf >> (levels - level);
      const bool choice = (leaf >> (levels - 1 - level)) & 1;
      const EdgePair& pair = tree.edges_[level][prefix];
      tree.leaves_[leaf] *= choice ? pair.first : pair.second;
    }
  }
  return tree;
}

Rational leaf_probability(const ProtocolTree& tree, const std::vector<bool>& assignment) {
  if (assignment.size() != tree.levels())
    throw ValidationError("assignment has " + std::to_string(assignment.size()) +
                          " choices for a " + std::to_string(tree.levels()) + "-level tree");
  std::size_t index = 0;
  for (bool b : assignment) index = (index << 1) | (b ? 1 : 0);
  return tree.leaves()[index];
}

PriorAssignment to_prior(const ProtocolTree& tree, const OutcomeSpace& space) {
  if (space.size() != tree.leaf_count())
    throw ValidationError("space of " + std::to_string(space.size()) +
                          " outcomes does not match a tree with " +
                          std::to_string(tree.leaf_count()) + " leaves");
  return PriorAssignment(space, tree.leaves());
}

std::string ProtocolTree::render() const {
  std::ostringstream out;
  // Depth-first, True branch first, matching the leaf table order when read
  // with T above F at each node.
  auto walk = [&](auto&& self, std::size_t level, std::size_t prefix) -> void {
    if (level == levels()) {
      out << std::string(2 * level, ' ') << "-> " << leaves_[prefix].str() << "\n";
      return;
    }
    const EdgePair& pair = edges_[level][prefix];
    out << std::string(2 * level, ' ') << names_[level] << " T:" << pair.first.str() << "\n";
    self(self, level + 1, (prefix << 1) | 1);
    out << std::string(2 * level, ' ') << names_[level] << " F:" << pair.second.str() << "\n";
    self(self, level + 1, (prefix << 1));
  };
  walk(walk, 0, 0);
  return out.str();
}

}  // namespace exactprob
