#include "gdd/verify.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include "gdd/error.hpp"

namespace gdd {

namespace {

// Triangular pair counter: one saturating byte per unordered pair.
class PairCounter {
 public:
  explicit PairCounter(int v) : v_(v), counts_(static_cast<std::size_t>(choose2(v)), 0) {}

  std::size_t index(Point a, Point b) const {
    const auto aa = static_cast<std::size_t>(a);
    return aa * (2 * static_cast<std::size_t>(v_) - aa - 1) / 2 + static_cast<std::size_t>(b - a - 1);
  }
  void bump(Point a, Point b) {
    auto& c = counts_[index(a, b)];
    if (c != 0xff) ++c;
  }
  int count(Point a, Point b) const { return counts_[index(a, b)]; }
  const std::uint8_t* row(Point a) const { return counts_.data() + index(a, a + 1); }

 private:
  int v_;
  std::vector<std::uint8_t> counts_;
};

std::vector<int> partition_index(const std::vector<PointSet>& parts, int v, const char* what) {
  std::vector<int> owner(static_cast<std::size_t>(v), -1);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (Point p : parts[i]) {
      if (p < 0 || p >= v) {
        fail(ErrorKind::MalformedDesign, std::string(what) + " point " + std::to_string(p) + " out of range");
      }
      if (owner[static_cast<std::size_t>(p)] != -1) {
        fail(ErrorKind::MalformedDesign, "point " + std::to_string(p) + " lies in two " + what + "s");
      }
      owner[static_cast<std::size_t>(p)] = static_cast<int>(i);
    }
  }
  for (int p = 0; p < v; ++p) {
    if (owner[static_cast<std::size_t>(p)] == -1) {
      fail(ErrorKind::MalformedDesign, "point " + std::to_string(p) + " lies in no " + what);
    }
  }
  return owner;
}

struct Collector {
  std::size_t limit;
  std::vector<Failure> failures;
  std::int64_t total = 0;
  void add(const Failure& f) {
    ++total;
    if (limit == 0 || failures.size() < limit) failures.push_back(f);
  }
  void merge(Collector&& other) {
    for (auto& f : other.failures) {
      if (limit == 0 || failures.size() < limit) failures.push_back(f);
    }
    total += other.total;
  }
};

PairCounter count_pairs(const Design& d) {
  PairCounter counter(d.v);
  const auto k = static_cast<std::size_t>(d.block_size());
  for (std::size_t i = 0; i < d.num_blocks(); ++i) {
    auto b = d.block(i);
    for (std::size_t x = 0; x < k; ++x) {
      for (std::size_t y = x + 1; y < k; ++y) counter.bump(b[x], b[y]);
    }
  }
  return counter;
}

// Scans all pairs in ascending order. `excluded(a,b)` selects the pairs that
// must not be covered; all others must be covered exactly once. Rows are
// split into contiguous chunks so the merged witness list does not depend on
// the thread count.
template <class Classify>
void scan_pairs(const PairCounter& counter, int v, unsigned threads, Classify classify, Collector& out) {
  threads = std::max(1u, threads);
  if (v < 2) return;
  const auto total_pairs = static_cast<std::uint64_t>(choose2(v));
  std::vector<int> cuts{0};
  if (threads > 1) {
    std::uint64_t acc = 0;
    for (int a = 0; a < v; ++a) {
      acc += static_cast<std::uint64_t>(v - a - 1);
      if (acc * threads >= total_pairs * cuts.size() && static_cast<unsigned>(cuts.size()) < threads) {
        cuts.push_back(a + 1);
      }
    }
  }
  if (cuts.back() != v) cuts.push_back(v);
  const std::size_t chunks = cuts.size() - 1;
  std::vector<Collector> parts(chunks, Collector{out.limit, {}, 0});
  auto work = [&](std::size_t c) {
    auto& col = parts[c];
    for (int a = cuts[c]; a < cuts[c + 1]; ++a) {
      const std::uint8_t* row = counter.row(a);
      for (int b = a + 1; b < v; ++b) {
        const int n = row[b - a - 1];
        const auto shut = classify(a, b);
        if (shut.has_value()) {
          if (n != 0) col.add({*shut, a, b, -1, n});
        } else if (n == 0) {
          col.add({FailureKind::Uncovered, a, b, -1, 0});
        } else if (n > 1) {
          col.add({FailureKind::Overcovered, a, b, -1, n});
        }
      }
    }
  };
  if (chunks == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t c = 0; c < chunks; ++c) pool.emplace_back(work, c);
    for (auto& t : pool) t.join();
  }
  for (auto& p : parts) out.merge(std::move(p));
}

}  // namespace

std::string to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::Uncovered: return "uncovered";
    case FailureKind::Overcovered: return "overcovered";
    case FailureKind::SameGroupPair: return "same-group";
    case FailureKind::SameHolePair: return "same-hole";
    case FailureKind::UnevenHole: return "uneven-hole";
    case FailureKind::ClassNotParallel: return "class-not-parallel";
    case FailureKind::BlockUnassigned: return "block-unassigned";
    case FailureKind::BlockReassigned: return "block-reassigned";
  }
  return "unknown";
}

std::string describe(const Failure& f) {
  std::string s = to_string(f.kind);
  if (f.a >= 0) s += " pair (" + std::to_string(f.a) + ", " + std::to_string(f.b) + ")";
  if (f.index >= 0) s += " index " + std::to_string(f.index);
  s += " count " + std::to_string(f.count);
  return s;
}

void check_structure(const Design& d) {
  if (d.v < 0) fail(ErrorKind::MalformedDesign, "negative point count");
  partition_index(d.groups, d.v, "group");
  const auto k = static_cast<std::size_t>(d.block_size());
  for (std::size_t i = 0; i < d.num_blocks(); ++i) {
    auto b = d.block(i);
    for (std::size_t x = 0; x < k; ++x) {
      if (b[x] < 0 || b[x] >= d.v) {
        fail(ErrorKind::MalformedDesign, "block " + std::to_string(i) + " has out-of-range point " +
                                             std::to_string(b[x]));
      }
      if (x > 0 && b[x] == b[x - 1]) {
        fail(ErrorKind::MalformedDesign, "block " + std::to_string(i) + " repeats point " + std::to_string(b[x]));
      }
    }
  }
}

VerificationReport verify_gdd(const Design& d, const VerifyOptions& opt) {
  check_structure(d);
  const auto gid = d.group_index();
  const auto counter = count_pairs(d);
  Collector col{opt.max_witnesses, {}, 0};
  scan_pairs(counter, d.v, opt.threads,
             [&](Point a, Point b) -> std::optional<FailureKind> {
               if (gid[static_cast<std::size_t>(a)] == gid[static_cast<std::size_t>(b)]) {
                 return FailureKind::SameGroupPair;
               }
               return std::nullopt;
             },
             col);

  VerificationReport r;
  r.counted_blocks = static_cast<std::int64_t>(d.num_blocks());
  std::int64_t same = 0;
  for (const auto& g : d.groups) same += choose2(static_cast<std::int64_t>(g.size()));
  const auto cross = choose2(d.v) - same;
  const auto per = d.block_size() >= 2 ? choose2(d.block_size()) : 1;
  r.expected_blocks = (d.block_size() >= 2 && cross % per == 0) ? cross / per : -1;
  r.failures = std::move(col.failures);
  r.total_failures = col.total;
  r.ok = r.total_failures == 0 && r.counted_blocks == r.expected_blocks;
  return r;
}

VerificationReport verify_dgdd(const Design& d, const VerifyOptions& opt) {
  if (!d.holes) fail(ErrorKind::MissingHoles, "design has no hole partition");
  check_structure(d);
  const auto gid = d.group_index();
  const auto hid = partition_index(*d.holes, d.v, "hole");
  Collector col{opt.max_witnesses, {}, 0};

  // Each group must meet every hole in the same number of points.
  const std::size_t ng = d.groups.size(), nh = d.holes->size();
  std::vector<std::int64_t> cell(ng * nh, 0);
  for (int p = 0; p < d.v; ++p) {
    ++cell[static_cast<std::size_t>(gid[static_cast<std::size_t>(p)]) * nh +
           static_cast<std::size_t>(hid[static_cast<std::size_t>(p)])];
  }
  std::int64_t excluded = 0;
  for (std::size_t g = 0; g < ng; ++g) {
    for (std::size_t h = 0; h < nh; ++h) {
      if (cell[g * nh + h] != cell[g * nh]) {
        col.add({FailureKind::UnevenHole, -1, -1, static_cast<std::int64_t>(g), static_cast<int>(cell[g * nh + h])});
        break;
      }
    }
    for (std::size_t h = 0; h < nh; ++h) excluded -= choose2(cell[g * nh + h]);
  }
  for (const auto& g : d.groups) excluded += choose2(static_cast<std::int64_t>(g.size()));
  for (const auto& h : *d.holes) excluded += choose2(static_cast<std::int64_t>(h.size()));

  const auto counter = count_pairs(d);
  scan_pairs(counter, d.v, opt.threads,
             [&](Point a, Point b) -> std::optional<FailureKind> {
               if (gid[static_cast<std::size_t>(a)] == gid[static_cast<std::size_t>(b)]) {
                 return FailureKind::SameGroupPair;
               }
               if (hid[static_cast<std::size_t>(a)] == hid[static_cast<std::size_t>(b)]) {
                 return FailureKind::SameHolePair;
               }
               return std::nullopt;
             },
             col);

  VerificationReport r;
  r.counted_blocks = static_cast<std::int64_t>(d.num_blocks());
  const auto open = choose2(d.v) - excluded;
  const auto per = d.block_size() >= 2 ? choose2(d.block_size()) : 1;
  r.expected_blocks = (d.block_size() >= 2 && open % per == 0) ? open / per : -1;
  r.failures = std::move(col.failures);
  r.total_failures = col.total;
  r.ok = r.total_failures == 0 && r.counted_blocks == r.expected_blocks;
  return r;
}

VerificationReport verify_resolution(const Design& d, const VerifyOptions& opt) {
  if (!d.resolution) fail(ErrorKind::MissingResolution, "design has no resolution");
  check_structure(d);
  Collector col{opt.max_witnesses, {}, 0};
  const auto nb = d.num_blocks();
  std::vector<int> owner(nb, -1);
  std::int64_t assigned = 0;
  std::vector<int> seen(static_cast<std::size_t>(d.v), -1);
  const auto& classes = *d.resolution;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    bool parallel = true;
    std::int64_t covered = 0;
    for (std::size_t bi : classes[c]) {
      if (bi >= nb) fail(ErrorKind::MalformedDesign, "resolution refers to missing block " + std::to_string(bi));
      if (owner[bi] != -1) {
        col.add({FailureKind::BlockReassigned, -1, -1, static_cast<std::int64_t>(bi), 2});
        continue;
      }
      owner[bi] = static_cast<int>(c);
      ++assigned;
      for (Point p : d.block(bi)) {
        if (seen[static_cast<std::size_t>(p)] == static_cast<int>(c)) parallel = false;
        seen[static_cast<std::size_t>(p)] = static_cast<int>(c);
        ++covered;
      }
    }
    if (!parallel || covered != d.v) {
      col.add({FailureKind::ClassNotParallel, -1, -1, static_cast<std::int64_t>(c), static_cast<int>(covered)});
    }
  }
  for (std::size_t bi = 0; bi < nb; ++bi) {
    if (owner[bi] == -1) col.add({FailureKind::BlockUnassigned, -1, -1, static_cast<std::int64_t>(bi), 0});
  }
  VerificationReport r;
  r.counted_blocks = assigned;
  r.expected_blocks = static_cast<std::int64_t>(nb);
  r.failures = std::move(col.failures);
  r.total_failures = col.total;
  r.ok = r.total_failures == 0 && r.counted_blocks == r.expected_blocks;
  return r;
}

}  // namespace gdd
