#include "espo/point_set.hpp"

#include <algorithm>

#include "espo/errors.hpp"

namespace espo {

PointSet::PointSet(GroupModel ambient, const std::vector<GroupElement>& elements) : ambient_(std::move(ambient)) {
  for (const auto& e : elements) insert(e);
}

bool PointSet::insert(GroupElement e) {
  validate(ambient_, e);
  if (index_.count(e)) return false;
  index_.insert(e);
  elements_.push_back(std::move(e));
  return true;
}

std::vector<GroupElement> PointSet::sorted() const {
  std::vector<GroupElement> out = elements_;
  std::sort(out.begin(), out.end());
  return out;
}

bool is_subset(const PointSet& a, const PointSet& b) {
  return std::all_of(a.begin(), a.end(), [&b](const GroupElement& e) { return b.contains(e); });
}

bool operator==(const PointSet& a, const PointSet& b) {
  return a.ambient_ == b.ambient_ && a.size() == b.size() && is_subset(a, b);
}

}  // namespace espo
