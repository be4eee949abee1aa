#include "exactprob/space.hpp"

namespace exactprob {

OutcomeSpace::OutcomeSpace(std::vector<std::string> labels) {
  if (labels.empty()) throw ValidationError("outcome space must have at least one outcome");
  auto data = std::make_shared<Data>();
  data->labels = std::move(labels);
  for (std::size_t i = 0; i < data->labels.size(); ++i) {
    auto [it, inserted] = data->index.emplace(data->labels[i], i);
    if (!inserted)
      throw ValidationError("duplicate outcome label '" + data->labels[i] + "'");
  }
  data_ = std::move(data);
}

OutcomeSpace OutcomeSpace::boolean_cube(std::vector<std::string> vars) {
  if (vars.empty()) throw ValidationError("boolean cube needs at least one variable");
  if (vars.size() > 20) throw ValidationError("boolean cube capped at 20 variables");
  const std::size_t n = vars.size();
  auto data = std::make_shared<Data>();
  data->labels.reserve(std::size_t{1} << n);
  for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
    std::string label(n, 'F');
    for (std::size_t k = 0; k < n; ++k)
      if ((i >> (n - 1 - k)) & 1) label[k] = 'T';
    data->index.emplace(label, i);
    data->labels.push_back(std::move(label));
  }
  data->vars = std::move(vars);
  return OutcomeSpace(std::move(data));
}

std::optional<std::size_t> OutcomeSpace::index_of(std::string_view label) const {
  auto it = data_->index.find(std::string(label));
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

bool OutcomeSpace::component(std::size_t index, std::size_t var) const {
  const std::size_t n = data_->vars.size();
  if (var >= n) throw ValidationError("variable position out of range");
  return (index >> (n - 1 - var)) & 1;
}

void require_same_space(const OutcomeSpace& a, const OutcomeSpace& b) {
  if (!(a == b))
    throw SpaceMismatchError("events belong to different outcome spaces");
}

Event::Event(OutcomeSpace space, Bitset members)
    : space_(std::move(space)), bits_(std::move(members)) {
  if (bits_.universe() != space_.size())
    throw SpaceMismatchError("event bitset does not match its outcome space");
}

Event Event::singleton(const OutcomeSpace& space, std::size_t index) {
  if (index >= space.size()) throw ValidationError("outcome index out of range");
  Bitset bits(space.size());
  bits.set(index);
  return Event(space, std::move(bits));
}

Event Event::operator&(const Event& o) const {
  require_same_space(space_, o.space_);
  return Event(space_, bits_ & o.bits_);
}

Event Event::operator|(const Event& o) const {
  require_same_space(space_, o.space_);
  return Event(space_, bits_ | o.bits_);
}

bool Event::is_subset_of(const Event& o) const {
  require_same_space(space_, o.space_);
  return bits_.is_subset_of(o.bits_);
}

bool Event::disjoint_with(const Event& o) const {
  require_same_space(space_, o.space_);
  return !bits_.intersects(o.bits_);
}

std::vector<std::size_t> Event::member_indices() const {
  std::vector<std::size_t> out;
  out.reserve(bits_.count());
  bits_.for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

}  // namespace exactprob
