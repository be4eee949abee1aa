#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exactprob/distribution.hpp"
#include "exactprob/space.hpp"

namespace exactprob {

/// Outcome of validating a candidate partition. When invalid, `message`
/// names the first violation found: an out-of-space block, an empty block,
/// the first overlapping pair, or the first uncovered outcome.
struct PartitionReport {
  bool valid = false;
  std::string message;
};

PartitionReport check_partition(const OutcomeSpace& space, const std::vector<Event>& blocks);

/// Pairwise-disjoint, covering, nonempty blocks over one space. Only
/// make_partition produces instances, so every Partition in flight is valid.
class Partition {
public:
  const OutcomeSpace& space() const { return space_; }
  const std::vector<Event>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }

private:
  friend Partition make_partition(const OutcomeSpace& space, std::vector<Event> blocks);
  Partition(OutcomeSpace space, std::vector<Event> blocks)
      : space_(std::move(space)), blocks_(std::move(blocks)) {}

  OutcomeSpace space_;
  std::vector<Event> blocks_;
};

/// Validates and wraps the blocks; throws ValidationError with the
/// check_partition message if they do not partition the space.
Partition make_partition(const OutcomeSpace& space, std::vector<Event> blocks);

/// One block's contribution to a total-probability decomposition.
/// `conditional` is absent when the block has probability zero (its joint
/// term is then exactly 0 and the conditional is undefined).
struct TotalProbabilityTerm {
  Event block;
  Rational block_prob;                  // P(A_j)
  Rational joint_prob;                  // P(B ∩ A_j)
  std::optional<Rational> conditional;  // P(B | A_j) when P(A_j) > 0
};

struct TotalProbabilityResult {
  Rational total;  // Σ_j P(B ∩ A_j), equal to the direct measure of B
  std::vector<TotalProbabilityTerm> terms;
};

/// Decomposes P(b) over the partition: total = Σ_j P(b ∩ A_j), with both the
/// joint and (where defined) conditional factor reported per block.
TotalProbabilityResult total_probability(const Distribution& dist, const Event& b,
                                         const Partition& part);

}  // namespace exactprob
