#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gdd {

struct GroupPart {
  int size = 0;
  int count = 0;
  auto operator<=>(const GroupPart&) const = default;
};

// A multiset of group sizes, the "type" g1^u1 g2^u2 ... of a design.
// Always held in canonical form: sizes strictly decreasing, counts >= 1.
class GroupType {
 public:
  GroupType() = default;
  explicit GroupType(std::vector<GroupPart> parts);

  static GroupType from_sizes(std::span<const int> sizes);
  // Accepts "10^2 4^5", "4^5_10^2", "3^4 3^1" (merged to 3^5) and bare "7" for 7^1.
  static GroupType parse(std::string_view text);

  const std::vector<GroupPart>& parts() const noexcept { return parts_; }
  bool empty() const noexcept { return parts_.empty(); }
  std::int64_t total_points() const noexcept;
  int num_groups() const noexcept;
  // Group sizes expanded in canonical (non-increasing) order.
  std::vector<int> sizes() const;
  // Adds `count` groups of `size`; size 0 is ignored.
  GroupType with(int size, int count = 1) const;

  std::string str() const;        // "10^2 4^5"
  std::string file_stem() const;  // "10^2_4^5"

  bool operator==(const GroupType&) const = default;
  auto operator<=>(const GroupType&) const = default;

 private:
  std::vector<GroupPart> parts_;
};

// Pairs of points lying in different groups.
std::int64_t cross_pairs(const GroupType& type);

// Number of blocks forced by exact coverage of the cross pairs with blocks of
// the given size. Throws NonIntegral when no design can exist.
std::int64_t expected_block_count(const GroupType& type, int block_size = 4);

std::int64_t choose2(std::int64_t n);

}  // namespace gdd
