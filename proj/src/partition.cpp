#include "exactprob/partition.hpp"

namespace exactprob {

PartitionReport check_partition(const OutcomeSpace& space, const std::vector<Event>& blocks) {
  if (blocks.empty()) return {false, "partition has no blocks"};
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (!(blocks[i].space() == space))
      return {false, "block " + std::to_string(i + 1) + " belongs to a different outcome space"};
    if (blocks[i].is_empty())
      return {false, "block " + std::to_string(i + 1) + " is empty"};
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < blocks.size(); ++j) {
      if (!blocks[i].disjoint_with(blocks[j])) {
        const Event overlap = blocks[i] & blocks[j];
        return {false, "blocks " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                           " overlap (outcome '" +
                           space.label(overlap.member_indices().front()) + "')"};
      }
    }
  }
  Bitset covered(space.size());
  for (const Event& b : blocks) covered = covered | b.members();
  for (std::size_t i = 0; i < space.size(); ++i)
    if (!covered.test(i))
      return {false, "outcome '" + space.label(i) + "' is not covered by any block"};
  return {true, ""};
}

Partition make_partition(const OutcomeSpace& space, std::vector<Event> blocks) {
  const PartitionReport report = check_partition(space, blocks);
  if (!report.valid) throw ValidationError(report.message);
  return Partition(space, std::move(blocks));
}

TotalProbabilityResult total_probability(const Distribution& dist, const Event& b,
                                         const Partition& part) {
  require_same_space(dist.space(), part.space());
  require_same_space(dist.space(), b.space());
  TotalProbabilityResult result;
  for (const Event& block : part.blocks()) {
    TotalProbabilityTerm term{block, dist.measure(block), dist.measure(b & block), std::nullopt};
    if (!term.block_prob.is_zero()) term.conditional = term.joint_prob / term.block_prob;
    result.total += term.joint_prob;
    result.terms.push_back(std::move(term));
  }
  return result;
}

}  // namespace exactprob
