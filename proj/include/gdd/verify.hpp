#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gdd/design.hpp"

namespace gdd {

enum class FailureKind {
  Uncovered,         // cross pair in no block
  Overcovered,       // cross pair in more than one block
  SameGroupPair,     // pair inside a group appears in a block
  SameHolePair,      // pair inside a hole appears in a block
  UnevenHole,        // |group ∩ hole| differs across holes for one group
  ClassNotParallel,  // a resolution class does not partition the points
  BlockUnassigned,   // block in no resolution class
  BlockReassigned,   // block in several resolution classes
};

std::string to_string(FailureKind kind);

struct Failure {
  FailureKind kind{};
  Point a = -1;            // witness pair (a < b) for pair failures
  Point b = -1;
  std::int64_t index = -1;  // group / class / block index for structural failures
  int count = 0;           // observed coverage or intersection size

  bool operator==(const Failure&) const = default;
};

struct VerificationReport {
  bool ok = false;
  std::vector<Failure> failures;     // first max_witnesses failures, ascending pair order
  std::int64_t total_failures = 0;   // including those not listed
  std::int64_t counted_blocks = 0;
  std::int64_t expected_blocks = 0;  // -1 when the pair count is not divisible

  bool operator==(const VerificationReport&) const = default;
};

struct VerifyOptions {
  std::size_t max_witnesses = 10;  // 0 lists every failure
  unsigned threads = 1;
};

// Throws MalformedDesign when groups do not partition 0..v-1, or a block has
// an out-of-range or repeated point.
void check_structure(const Design& design);

VerificationReport verify_gdd(const Design& design, const VerifyOptions& options = {});
// Throws MissingHoles when the design has no hole partition.
VerificationReport verify_dgdd(const Design& design, const VerifyOptions& options = {});
// Throws MissingResolution when the design carries no resolution.
VerificationReport verify_resolution(const Design& design, const VerifyOptions& options = {});

std::string describe(const Failure& failure);

}  // namespace gdd
