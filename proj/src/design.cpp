#include "gdd/design.hpp"

#include <algorithm>

#include "gdd/error.hpp"

namespace gdd {

Design::Design(int v_, std::vector<PointSet> groups_, int block_size)
    : v(v_), groups(std::move(groups_)), block_size_(block_size) {}

void Design::set_block_size(int k) {
  if (!points_.empty() && k != block_size_) {
    fail(ErrorKind::MalformedDesign, "cannot change block size of a design with blocks");
  }
  block_size_ = k;
}

void Design::add_block(std::span<const Point> pts) {
  if (block_size_ == 0) block_size_ = static_cast<int>(pts.size());
  if (pts.size() != static_cast<std::size_t>(block_size_)) {
    fail(ErrorKind::MalformedDesign, "block of size " + std::to_string(pts.size()) + " in a design with block size " +
                                         std::to_string(block_size_));
  }
  const auto first = points_.size();
  points_.insert(points_.end(), pts.begin(), pts.end());
  std::sort(points_.begin() + static_cast<std::ptrdiff_t>(first), points_.end());
}

std::vector<int> Design::group_index() const {
  std::vector<int> gid(static_cast<std::size_t>(std::max(v, 0)), -1);
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (Point p : groups[i]) {
      if (p >= 0 && p < v) gid[static_cast<std::size_t>(p)] = static_cast<int>(i);
    }
  }
  return gid;
}

void canonicalize_parts(std::vector<PointSet>& parts) {
  for (auto& p : parts) std::sort(p.begin(), p.end());
  std::stable_sort(parts.begin(), parts.end(), [](const PointSet& a, const PointSet& b) {
    if (a.empty() || b.empty()) return !a.empty() && b.empty();
    return a.front() < b.front();
  });
}

GroupType group_type_of(const Design& design) {
  std::vector<int> sizes;
  sizes.reserve(design.groups.size());
  for (const auto& g : design.groups) {
    if (!g.empty()) sizes.push_back(static_cast<int>(g.size()));
  }
  return GroupType::from_sizes(sizes);
}

}  // namespace gdd
