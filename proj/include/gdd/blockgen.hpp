#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gdd/design.hpp"

namespace gdd {

// One piece of a point mapping. A plain segment shifts cyclically:
//   x -> start + ((x - start + step*j) mod length).
// A prod3 segment of length 3c carries Z_c x Z_3, element (a,b) stored as
// start + 3a + b, and with e(t) = (floor(t/3) mod c, t mod 3):
//   step 1: x + e(j)
//   step 2: x + e(j) + e(j)
//   step 3: x + (j mod c, 0)      (element number 3j)
struct Segment {
  Point start = 0;
  int length = 0;
  int step = 0;
  std::optional<int> prod3;

  bool contains(Point x) const noexcept { return x >= start && x < start + length; }
  bool operator==(const Segment&) const = default;
};

struct OrbitClass {
  std::vector<std::array<Point, 4>> base_blocks;
  int j_count = 1;
  std::vector<Segment> segments;
  bool operator==(const OrbitClass&) const = default;
};

struct GroupDirective {
  enum class Kind { Residues, Range };
  Kind kind = Kind::Range;
  int modulus = 1;  // residues only
  Point begin = 0;
  Point end = 0;    // half open
  bool operator==(const GroupDirective&) const = default;
};

struct BaseBlockSpec {
  std::string name;
  int v = 0;
  std::vector<GroupDirective> group_directives;
  std::vector<OrbitClass> orbit_classes;
  std::optional<std::string> signature;
  bool operator==(const BaseBlockSpec&) const = default;
};

Point apply_mapping(Point x, std::int64_t j, std::span<const Segment> segments);

// Groups realized from the directives, in directive order (residue r ascending).
std::vector<PointSet> realize_groups(const BaseBlockSpec& spec);
// Group type derived from the directives.
GroupType directive_type(const BaseBlockSpec& spec);
// Group sizes and counts per directive, in directive order (the T list).
std::vector<GroupPart> directive_parts(const BaseBlockSpec& spec);

// Throws PartitionError / TypeMismatch / UnmappedPoint on structural problems.
void validate_spec(const BaseBlockSpec& spec);

struct ExpandOptions {
  unsigned threads = 1;
};

// Develops every base block under j = 0..j_count-1 of its orbit class.
// Block order is canonical: class order, base-block order, then j.
Design expand(const BaseBlockSpec& spec, const ExpandOptions& options = {});

BaseBlockSpec parse_spec(std::string_view text);
std::string serialize_spec(const BaseBlockSpec& spec);
BaseBlockSpec read_spec(const std::string& path);

}  // namespace gdd
