#include "gdd/group_type.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "gdd/error.hpp"

namespace gdd {

std::int64_t choose2(std::int64_t n) { return n * (n - 1) / 2; }

GroupType::GroupType(std::vector<GroupPart> parts) {
  std::map<int, std::int64_t, std::greater<>> merged;
  for (const auto& p : parts) {
    if (p.size <= 0 || p.count <= 0) {
      fail(ErrorKind::BadParameter, "group parts must have positive size and count");
    }
    merged[p.size] += p.count;
  }
  for (const auto& [size, count] : merged) parts_.push_back({size, static_cast<int>(count)});
}

GroupType GroupType::from_sizes(std::span<const int> sizes) {
  std::vector<GroupPart> parts;
  parts.reserve(sizes.size());
  for (int s : sizes) parts.push_back({s, 1});
  return GroupType(std::move(parts));
}

GroupType GroupType::parse(std::string_view text) {
  std::vector<GroupPart> parts;
  std::size_t i = 0;
  auto skip_sep = [&] {
    while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '_' ||
                               text[i] == ',')) {
      ++i;
    }
  };
  auto read_int = [&]() -> int {
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) {
      fail(ErrorKind::SyntaxError, "bad group type '" + std::string(text) + "'");
    }
    long value = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      value = value * 10 + (text[i] - '0');
      if (value > 1'000'000'000) fail(ErrorKind::SyntaxError, "group type value too large");
      ++i;
    }
    return static_cast<int>(value);
  };
  skip_sep();
  while (i < text.size()) {
    int size = read_int();
    int count = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      bool braced = i < text.size() && text[i] == '{';
      if (braced) ++i;
      count = read_int();
      if (braced) {
        if (i >= text.size() || text[i] != '}') fail(ErrorKind::SyntaxError, "unbalanced brace in group type");
        ++i;
      }
    }
    if (size <= 0 || count <= 0) fail(ErrorKind::SyntaxError, "group type parts must be positive");
    parts.push_back({size, count});
    skip_sep();
  }
  if (parts.empty()) fail(ErrorKind::SyntaxError, "empty group type");
  return GroupType(std::move(parts));
}

std::int64_t GroupType::total_points() const noexcept {
  std::int64_t v = 0;
  for (const auto& p : parts_) v += static_cast<std::int64_t>(p.size) * p.count;
  return v;
}

int GroupType::num_groups() const noexcept {
  int n = 0;
  for (const auto& p : parts_) n += p.count;
  return n;
}

std::vector<int> GroupType::sizes() const {
  std::vector<int> out;
  for (const auto& p : parts_) out.insert(out.end(), p.count, p.size);
  return out;
}

GroupType GroupType::with(int size, int count) const {
  if (size == 0 || count == 0) return *this;
  auto parts = parts_;
  parts.push_back({size, count});
  return GroupType(std::move(parts));
}

std::string GroupType::str() const {
  std::string out;
  for (const auto& p : parts_) {
    if (!out.empty()) out += ' ';
    out += std::to_string(p.size) + "^" + std::to_string(p.count);
  }
  return out;
}

std::string GroupType::file_stem() const {
  std::string out = str();
  std::replace(out.begin(), out.end(), ' ', '_');
  return out;
}

std::int64_t cross_pairs(const GroupType& type) {
  std::int64_t same = 0;
  for (const auto& p : type.parts()) same += p.count * choose2(p.size);
  return choose2(type.total_points()) - same;
}

std::int64_t expected_block_count(const GroupType& type, int block_size) {
  if (block_size < 2) fail(ErrorKind::BadParameter, "block size must be at least 2");
  const auto cross = cross_pairs(type);
  const auto per_block = choose2(block_size);
  if (cross % per_block != 0) {
    fail(ErrorKind::NonIntegral, std::to_string(cross) + " cross pairs of type " + type.str() +
                                     " are not divisible by " + std::to_string(per_block));
  }
  return cross / per_block;
}

}  // namespace gdd
