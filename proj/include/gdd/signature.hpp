#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gdd/blockgen.hpp"

namespace gdd {

// Compact (v, M, T) block-generation signature:
//   M = ((blockCount, jCount, (segment...)), ...)
//   segment = (length, step) | (length, step, (c, 3))
//   T = ((size, count), ...)
// Tuples follow Python conventions, so a one-element tuple written without a
// trailing comma collapses to its element.
struct SignatureSegment {
  int length = 0;
  int step = 0;
  std::optional<int> prod3;
  bool operator==(const SignatureSegment&) const = default;
};

struct SignatureClass {
  int block_count = 0;
  int j_count = 0;
  std::vector<SignatureSegment> segments;
  bool operator==(const SignatureClass&) const = default;
};

struct CompactSignature {
  int v = 0;
  std::vector<SignatureClass> classes;
  std::vector<GroupPart> type_parts;
  bool operator==(const CompactSignature&) const = default;
};

CompactSignature parse_signature(std::string_view text);
CompactSignature signature_of(const BaseBlockSpec& spec);
std::string format_signature(const CompactSignature& sig);

struct SignatureCheck {
  bool ok = false;
  std::vector<std::string> diffs;
};

// Compares the spec's `sig` against its directives and orbit classes.
// A spec without a signature yields ok=false with a single "no signature" diff.
SignatureCheck check_signature(const BaseBlockSpec& spec);

}  // namespace gdd
