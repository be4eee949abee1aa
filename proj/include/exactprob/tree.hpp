#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "exactprob/distribution.hpp"
#include "exactprob/rational.hpp"

namespace exactprob {

/// Probabilities of the two edges leaving one node: first the True branch,
/// then the False branch. Each pair must be nonnegative and sum to 1.
using EdgePair = std::pair<Rational, Rational>;

/// One level of a binary protocol tree. The edge probabilities may depend on
/// the full path prefix (the choices made at every earlier level), which is
/// exactly the generality a basis-dependent final measurement needs.
struct BranchRule {
  std::string variable;
  std::function<EdgePair(const std::vector<bool>& prefix)> edge_probs;
};

BranchRule fair_level(std::string variable);
BranchRule constant_level(std::string variable, Rational prob_true);

/// Fully materialized binary decision tree: one branching variable per
/// level, edge probabilities per node, and a leaf table of exact path
/// products. Leaves are indexed with the root variable most significant and
/// False before True, so leaf i corresponds to outcome i of the matching
/// boolean cube. Immutable once built.
class ProtocolTree {
public:
  std::size_t levels() const { return names_.size(); }
  const std::vector<std::string>& level_names() const { return names_; }
  std::size_t leaf_count() const { return leaves_.size(); }
  const std::vector<Rational>& leaves() const { return leaves_; }

  /// Edge pair at the node reached by `prefix_index` choices encoded as bits
  /// (first choice most significant) at the given level.
  const EdgePair& edges_at(std::size_t level, std::size_t prefix_index) const {
    return edges_.at(level).at(prefix_index);
  }

  /// Indented two-branch listing with edge probabilities and leaf values.
  std::string render() const;

private:
  friend ProtocolTree build_tree(const std::vector<BranchRule>& rules, std::size_t max_levels);
  ProtocolTree() = default;

  std::vector<std::string> names_;
  std::vector<std::vector<EdgePair>> edges_;  // edges_[level][prefix_index]
  std::vector<Rational> leaves_;
};

/// Materializes the tree, validating every node's edge pair. A pair that is
/// negative or does not sum to 1 is reported with its path prefix.
ProtocolTree build_tree(const std::vector<BranchRule>& rules, std::size_t max_levels = 20);

/// Exact product of the edge probabilities along the path selected by
/// `assignment` (one choice per level).
Rational leaf_probability(const ProtocolTree& tree, const std::vector<bool>& assignment);

/// The leaf table as a prior over `space`, which must enumerate exactly the
/// tree's 2^levels assignments in canonical order.
PriorAssignment to_prior(const ProtocolTree& tree, const OutcomeSpace& space);

}  // namespace exactprob
