#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gdd/group_type.hpp"

namespace gdd {

using Point = int;
using PointSet = std::vector<Point>;

// A block design on the points 0..v-1: a group partition, a list of blocks of
// one common size, and optionally a hole partition (DGDD) and a resolution
// into parallel classes (RGDD, given as block-index sets).
//
// Blocks are kept with their points sorted; block order is the insertion
// order and is what serialization reproduces.
class Design {
 public:
  Design() = default;
  Design(int v, std::vector<PointSet> groups, int block_size = 4);

  int v = 0;
  std::vector<PointSet> groups;
  std::optional<std::vector<PointSet>> holes;
  std::optional<std::vector<std::vector<std::size_t>>> resolution;

  int block_size() const noexcept { return block_size_; }
  void set_block_size(int k);
  std::size_t num_blocks() const noexcept {
    return block_size_ == 0 ? 0 : points_.size() / static_cast<std::size_t>(block_size_);
  }
  std::span<const Point> block(std::size_t i) const {
    return {points_.data() + i * static_cast<std::size_t>(block_size_), static_cast<std::size_t>(block_size_)};
  }
  // Appends one block (points in any order). The first block fixes the block
  // size when none was set.
  void add_block(std::span<const Point> pts);
  void add_block(std::initializer_list<Point> pts) { add_block(std::span<const Point>(pts.begin(), pts.size())); }
  void reserve_blocks(std::size_t n) { points_.reserve(n * static_cast<std::size_t>(block_size_)); }
  void clear_blocks() { points_.clear(); }
  const std::vector<Point>& flat_points() const noexcept { return points_; }

  // Group index of every point; -1 for points in no group.
  std::vector<int> group_index() const;

 private:
  int block_size_ = 0;
  std::vector<Point> points_;
};

// Sorts each part ascending and orders the parts by least element.
void canonicalize_parts(std::vector<PointSet>& parts);

GroupType group_type_of(const Design& design);

}  // namespace gdd
