#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "exactprob/bitset.hpp"
#include "exactprob/errors.hpp"

namespace exactprob {

/// Finite set of distinct outcome labels with a fixed, reproducible
/// enumeration order. Copies share the underlying data; equality is
/// structural (same labels in the same order).
class OutcomeSpace {
public:
  explicit OutcomeSpace(std::vector<std::string> labels);

  /// The 2^n truth assignments over `vars`, enumerated with the first
  /// variable most significant and F before T. Outcome labels are compact
  /// patterns like "TFFT"; outcome index i has variable k set iff bit
  /// (n-1-k) of i is set.
  static OutcomeSpace boolean_cube(std::vector<std::string> vars);

  std::size_t size() const { return data_->labels.size(); }
  const std::string& label(std::size_t i) const { return data_->labels.at(i); }
  const std::vector<std::string>& labels() const { return data_->labels; }
  std::optional<std::size_t> index_of(std::string_view label) const;

  /// Variable names when built via boolean_cube, empty otherwise.
  const std::vector<std::string>& variables() const { return data_->vars; }
  bool is_boolean_cube() const { return !data_->vars.empty(); }

  /// Truth value of variable `var` in outcome `index` (boolean cubes only).
  bool component(std::size_t index, std::size_t var) const;

  friend bool operator==(const OutcomeSpace& a, const OutcomeSpace& b) {
    return a.data_ == b.data_ || a.data_->labels == b.data_->labels;
  }

private:
  struct Data {
    std::vector<std::string> labels;
    std::unordered_map<std::string, std::size_t> index;
    std::vector<std::string> vars;
  };
  explicit OutcomeSpace(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

void require_same_space(const OutcomeSpace& a, const OutcomeSpace& b);

/// A subset of an outcome space, stored as a bitset over the canonical
/// enumeration. Events are comparable and combinable only within one space.
class Event {
public:
  Event(OutcomeSpace space, Bitset members);

  static Event none(const OutcomeSpace& space) { return Event(space, Bitset(space.size())); }
  static Event all(const OutcomeSpace& space) { return Event(space, Bitset::full(space.size())); }
  static Event singleton(const OutcomeSpace& space, std::size_t index);

  /// Event of all outcomes whose index satisfies `pred`.
  template <typename Pred>
  static Event where(const OutcomeSpace& space, Pred&& pred) {
    Bitset bits(space.size());
    for (std::size_t i = 0; i < space.size(); ++i)
      if (pred(i)) bits.set(i);
    return Event(space, std::move(bits));
  }

  const OutcomeSpace& space() const { return space_; }
  const Bitset& members() const { return bits_; }
  std::size_t count() const { return bits_.count(); }
  bool contains(std::size_t index) const { return bits_.test(index); }
  bool is_empty() const { return bits_.none(); }
  bool is_full() const { return bits_.count() == space_.size(); }

  Event operator&(const Event& o) const;
  Event operator|(const Event& o) const;
  Event complement() const { return Event(space_, ~bits_); }

  bool is_subset_of(const Event& o) const;
  bool disjoint_with(const Event& o) const;

  friend bool operator==(const Event& a, const Event& b) {
    return a.space_ == b.space_ && a.bits_ == b.bits_;
  }

  std::vector<std::size_t> member_indices() const;

private:
  OutcomeSpace space_;
  Bitset bits_;
};

}  // namespace exactprob
