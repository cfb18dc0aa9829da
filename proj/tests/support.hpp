#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "gdd/design.hpp"

namespace testing {

inline std::filesystem::path catalog_dir() { return GDD_DEFAULT_CATALOG_DIR; }

inline std::filesystem::path catalog_file(const std::string& name) { return catalog_dir() / (name + ".gdd"); }

// Straightforward pair census used as an independent check on the verifier:
// every cross pair once, no group pair, and nothing else.
struct NaiveCensus {
  std::set<std::pair<int, int>> uncovered, overcovered, same_group;
  bool ok() const { return uncovered.empty() && overcovered.empty() && same_group.empty(); }
};

inline NaiveCensus naive_census(const gdd::Design& d) {
  std::map<std::pair<int, int>, int> seen;
  for (std::size_t i = 0; i < d.num_blocks(); ++i) {
    auto b = d.block(i);
    for (std::size_t x = 0; x < b.size(); ++x) {
      for (std::size_t y = x + 1; y < b.size(); ++y) ++seen[{std::min(b[x], b[y]), std::max(b[x], b[y])}];
    }
  }
  std::vector<int> gid(static_cast<std::size_t>(d.v), -1);
  for (std::size_t g = 0; g < d.groups.size(); ++g) {
    for (int p : d.groups[g]) gid[static_cast<std::size_t>(p)] = static_cast<int>(g);
  }
  NaiveCensus c;
  for (int a = 0; a < d.v; ++a) {
    for (int b = a + 1; b < d.v; ++b) {
      const auto it = seen.find({a, b});
      const int n = it == seen.end() ? 0 : it->second;
      if (gid[static_cast<std::size_t>(a)] == gid[static_cast<std::size_t>(b)]) {
        if (n) c.same_group.insert({a, b});
      } else if (n == 0) {
        c.uncovered.insert({a, b});
      } else if (n > 1) {
        c.overcovered.insert({a, b});
      }
    }
  }
  return c;
}

// The design with its points renamed by a random permutation.
inline gdd::Design relabel(const gdd::Design& d, std::mt19937& rng) {
  std::vector<int> perm(static_cast<std::size_t>(d.v));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  gdd::Design out(d.v, {}, d.block_size());
  for (const auto& g : d.groups) {
    gdd::PointSet h;
    for (int p : g) h.push_back(perm[static_cast<std::size_t>(p)]);
    out.groups.push_back(h);
  }
  std::vector<int> blk(static_cast<std::size_t>(d.block_size()));
  for (std::size_t i = 0; i < d.num_blocks(); ++i) {
    auto b = d.block(i);
    for (std::size_t k = 0; k < b.size(); ++k) blk[k] = perm[static_cast<std::size_t>(b[k])];
    out.add_block(blk);
  }
  return out;
}

inline gdd::Design without_block(const gdd::Design& d, std::size_t skip) {
  gdd::Design out(d.v, d.groups, d.block_size());
  out.holes = d.holes;
  for (std::size_t i = 0; i < d.num_blocks(); ++i) {
    if (i != skip) out.add_block(d.block(i));
  }
  return out;
}

}  // namespace testing

#include "gdd/blockgen.hpp"

namespace testing {

// Develops a spec under an arbitrary point mapping, bypassing duplicate checks,
// so alternative readings of the mapping rules can be tried.
template <class Mapping>
gdd::Design develop_with(const gdd::BaseBlockSpec& spec, Mapping mapping) {
  gdd::Design d(spec.v, gdd::realize_groups(spec), 4);
  for (const auto& oc : spec.orbit_classes) {
    for (const auto& b : oc.base_blocks) {
      for (int j = 0; j < oc.j_count; ++j) {
        std::array<int, 4> img{};
        for (std::size_t t = 0; t < 4; ++t) img[t] = mapping(b[t], j, oc.segments);
        d.add_block(img);
      }
    }
  }
  return d;
}

// The step-2 product rule read as adding element number 2j instead of e(j) twice.
inline int doubled_element_mapping(int x, std::int64_t j, const std::vector<gdd::Segment>& segs) {
  for (const auto& s : segs) {
    if (!s.contains(x) || !s.prod3 || s.step != 2) continue;
    const std::int64_t c = *s.prod3, t = 2 * j;
    const std::int64_t off = x - s.start;
    const std::int64_t a = (off / 3 + (t / 3) % c) % c, b = (off % 3 + t % 3) % 3;
    return static_cast<int>(s.start + 3 * a + b);
  }
  return gdd::apply_mapping(x, j, segs);
}

}  // namespace testing
