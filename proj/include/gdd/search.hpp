#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gdd/design.hpp"
#include "gdd/group_type.hpp"

namespace gdd {

// Exact cover formulation of a 4-GDD: one column per cross pair, one row per
// 4-set meeting four distinct groups.
struct ExactCoverInstance {
  GroupType type;
  int v = 0;
  std::vector<PointSet> groups;                  // canonical order, consecutive points
  std::vector<std::pair<Point, Point>> columns;  // ascending pairs
  std::vector<std::array<Point, 4>> rows;        // lexicographic
  std::vector<std::array<int, 6>> row_columns;
  std::vector<std::vector<int>> column_rows;

  int column_of(Point a, Point b) const;
};

// Throws NonIntegral when the block count is fractional.
ExactCoverInstance build_instance(const GroupType& type);

struct SearchLimits {
  double timeout_seconds = 60.0;
  std::uint64_t node_cap = 100'000'000;
  bool deterministic = true;
  bool symmetry_breaking = true;
  unsigned threads = 1;
};

// A longer budget for refutations such as 2^6 5^1.
SearchLimits slow_limits();

enum class SearchOutcome { Found, Exhausted, Timeout };

std::string to_string(SearchOutcome outcome);

struct SearchResult {
  SearchOutcome outcome = SearchOutcome::Exhausted;
  std::optional<Design> design;  // verified, set only when Found
  std::uint64_t nodes = 0;
  double seconds = 0.0;
  std::size_t branches = 0;  // first-level branches explored
};

// On Found, the design passes verify_gdd. Exhausted is reported only when every
// first-level branch ran to completion within the limits.
SearchResult solve_existence(const GroupType& type, const SearchLimits& limits = {});

// The first-level rows forced by symmetry breaking: blocks on point 0 whose
// other points are the first points of the lowest-index groups of each size.
std::vector<int> canonical_first_rows(const ExactCoverInstance& instance);

}  // namespace gdd
