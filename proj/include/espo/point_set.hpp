#pragma once

#include <cstddef>
#include <unordered_set>
#include <vector>

#include "espo/group.hpp"

namespace espo {

/// Finite duplicate-free set of elements of one GroupModel, in insertion order,
/// with exact hashed membership.
class PointSet {
 public:
  explicit PointSet(GroupModel ambient) : ambient_(std::move(ambient)) {}
  PointSet(GroupModel ambient, const std::vector<GroupElement>& elements);

  const GroupModel& ambient() const noexcept { return ambient_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  const std::vector<GroupElement>& elements() const noexcept { return elements_; }
  const GroupElement& operator[](std::size_t i) const { return elements_[i]; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  // Validates; returns false if already present.
  bool insert(GroupElement e);
  bool contains(const GroupElement& e) const { return index_.count(e) != 0; }

  // Elements in canonical (sorted) order.
  std::vector<GroupElement> sorted() const;

  // Set equality, ignoring order.
  friend bool operator==(const PointSet& a, const PointSet& b);

 private:
  GroupModel ambient_;
  std::vector<GroupElement> elements_;
  std::unordered_set<GroupElement, GroupElementHash> index_;
};

// True if every element of a lies in b.
bool is_subset(const PointSet& a, const PointSet& b);

}  // namespace espo
