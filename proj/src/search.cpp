#include "gdd/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "gdd/error.hpp"
#include "gdd/verify.hpp"

namespace gdd {

int ExactCoverInstance::column_of(Point a, Point b) const {
  if (a > b) std::swap(a, b);
  auto it = std::lower_bound(columns.begin(), columns.end(), std::make_pair(a, b));
  if (it == columns.end() || *it != std::make_pair(a, b)) return -1;
  return static_cast<int>(it - columns.begin());
}

ExactCoverInstance build_instance(const GroupType& type) {
  expected_block_count(type);
  ExactCoverInstance inst;
  inst.type = type;
  std::vector<int> group_of;
  for (int size : type.sizes()) {
    PointSet g;
    for (int i = 0; i < size; ++i) {
      g.push_back(inst.v + i);
      group_of.push_back(static_cast<int>(inst.groups.size()));
    }
    inst.v += size;
    inst.groups.push_back(std::move(g));
  }
  for (Point a = 0; a < inst.v; ++a) {
    for (Point b = a + 1; b < inst.v; ++b) {
      if (group_of[static_cast<std::size_t>(a)] != group_of[static_cast<std::size_t>(b)]) inst.columns.emplace_back(a, b);
    }
  }
  const auto g = [&](Point x) { return group_of[static_cast<std::size_t>(x)]; };
  const int v = inst.v;
  for (Point a = 0; a < v; ++a) {
    for (Point b = a + 1; b < v; ++b) {
      if (g(b) == g(a)) continue;
      for (Point c = b + 1; c < v; ++c) {
        if (g(c) == g(a) || g(c) == g(b)) continue;
        for (Point d = c + 1; d < v; ++d) {
          if (g(d) == g(a) || g(d) == g(b) || g(d) == g(c)) continue;
          inst.rows.push_back({a, b, c, d});
        }
      }
    }
  }
  inst.column_rows.resize(inst.columns.size());
  inst.row_columns.reserve(inst.rows.size());
  for (std::size_t r = 0; r < inst.rows.size(); ++r) {
    const auto& row = inst.rows[r];
    std::array<int, 6> cols{};
    int k = 0;
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) cols[static_cast<std::size_t>(k++)] = inst.column_of(row[static_cast<std::size_t>(i)], row[static_cast<std::size_t>(j)]);
    }
    std::sort(cols.begin(), cols.end());
    for (int c : cols) inst.column_rows[static_cast<std::size_t>(c)].push_back(static_cast<int>(r));
    inst.row_columns.push_back(cols);
  }
  return inst;
}

SearchLimits slow_limits() {
  SearchLimits l;
  l.timeout_seconds = 3600.0;
  l.node_cap = 100'000'000'000ULL;
  return l;
}

std::string to_string(SearchOutcome outcome) {
  switch (outcome) {
    case SearchOutcome::Found: return "Found";
    case SearchOutcome::Exhausted: return "Exhausted";
    case SearchOutcome::Timeout: return "Timeout";
  }
  return "?";
}

std::vector<int> canonical_first_rows(const ExactCoverInstance& inst) {
  if (inst.groups.size() < 4) return {};
  // Size classes of the groups other than group 0, each with its groups in index order.
  std::map<int, std::vector<int>, std::greater<>> by_size;
  for (std::size_t i = 1; i < inst.groups.size(); ++i) {
    by_size[static_cast<int>(inst.groups[i].size())].push_back(static_cast<int>(i));
  }
  std::vector<std::vector<int>> classes;
  for (auto& [size, ids] : by_size) classes.push_back(ids);

  std::vector<int> out;
  std::vector<int> take(classes.size(), 0);
  // Every way of drawing three groups, counted per size class.
  auto recurse = [&](auto&& self, std::size_t ci, int left) -> void {
    if (ci == classes.size()) {
      if (left != 0) return;
      std::array<Point, 4> row{0, 0, 0, 0};
      std::size_t k = 1;
      for (std::size_t c = 0; c < classes.size(); ++c) {
        for (int t = 0; t < take[c]; ++t) row[k++] = inst.groups[static_cast<std::size_t>(classes[c][static_cast<std::size_t>(t)])].front();
      }
      std::sort(row.begin(), row.end());
      auto it = std::lower_bound(inst.rows.begin(), inst.rows.end(), row);
      if (it != inst.rows.end() && *it == row) out.push_back(static_cast<int>(it - inst.rows.begin()));
      return;
    }
    const int cap = std::min<int>(left, static_cast<int>(classes[ci].size()));
    for (int t = cap; t >= 0; --t) {
      take[ci] = t;
      self(self, ci + 1, left - t);
    }
    take[ci] = 0;
  };
  recurse(recurse, 0, 3);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Dancing links over a fixed instance. Node 0 is the root; nodes 1..C are
// column headers; the rest are row cells.
class Dlx {
 public:
  explicit Dlx(const ExactCoverInstance& inst) : inst_(inst) {
    const int ncols = static_cast<int>(inst.columns.size());
    const std::size_t total = 1 + static_cast<std::size_t>(ncols) + inst.rows.size() * 6;
    left_.resize(total);
    right_.resize(total);
    up_.resize(total);
    down_.resize(total);
    col_.resize(total);
    row_.resize(total, -1);
    size_.assign(static_cast<std::size_t>(ncols) + 1, 0);
    for (int c = 0; c <= ncols; ++c) {
      left_[static_cast<std::size_t>(c)] = c == 0 ? ncols : c - 1;
      right_[static_cast<std::size_t>(c)] = c == ncols ? 0 : c + 1;
      up_[static_cast<std::size_t>(c)] = down_[static_cast<std::size_t>(c)] = c;
      col_[static_cast<std::size_t>(c)] = c;
    }
    int next = ncols + 1;
    row_head_.resize(inst.rows.size());
    for (std::size_t r = 0; r < inst.rows.size(); ++r) {
      const int first = next;
      row_head_[r] = first;
      for (int k = 0; k < 6; ++k) {
        const int n = next++;
        const int c = inst.row_columns[r][static_cast<std::size_t>(k)] + 1;
        const auto un = static_cast<std::size_t>(n);
        col_[un] = c;
        row_[un] = static_cast<int>(r);
        up_[un] = up_[static_cast<std::size_t>(c)];
        down_[un] = c;
        down_[static_cast<std::size_t>(up_[static_cast<std::size_t>(c)])] = n;
        up_[static_cast<std::size_t>(c)] = n;
        ++size_[static_cast<std::size_t>(c)];
        left_[un] = k == 0 ? first + 5 : n - 1;
        right_[un] = k == 5 ? first : n + 1;
      }
    }
  }

  // Selects row r as if chosen by the search (covers all its columns).
  void select(int r) {
    const int head = row_head_[static_cast<std::size_t>(r)];
    cover(col_[static_cast<std::size_t>(head)]);
    for (int j = right_[static_cast<std::size_t>(head)]; j != head; j = right_[static_cast<std::size_t>(j)]) cover(col_[static_cast<std::size_t>(j)]);
    solution_.push_back(r);
  }

  int first_column() const { return choose(); }
  std::vector<int> rows_of_column(int c) const {
    std::vector<int> out;
    for (int i = down_[static_cast<std::size_t>(c)]; i != c; i = down_[static_cast<std::size_t>(i)]) out.push_back(row_[static_cast<std::size_t>(i)]);
    return out;
  }
  bool solved() const { return right_[0] == 0; }

  enum class Status { Solved, Exhausted, Aborted };

  template <class Budget>
  Status search(Budget& budget) {
    if (right_[0] == 0) return Status::Solved;
    if (!budget()) return Status::Aborted;
    const int c = choose();
    if (size_[static_cast<std::size_t>(c)] == 0) return Status::Exhausted;
    cover(c);
    for (int r = down_[static_cast<std::size_t>(c)]; r != c; r = down_[static_cast<std::size_t>(r)]) {
      solution_.push_back(row_[static_cast<std::size_t>(r)]);
      for (int j = right_[static_cast<std::size_t>(r)]; j != r; j = right_[static_cast<std::size_t>(j)]) cover(col_[static_cast<std::size_t>(j)]);
      const Status s = search(budget);
      if (s == Status::Solved) return s;
      for (int j = left_[static_cast<std::size_t>(r)]; j != r; j = left_[static_cast<std::size_t>(j)]) uncover(col_[static_cast<std::size_t>(j)]);
      solution_.pop_back();
      if (s == Status::Aborted) {
        uncover(c);
        return s;
      }
    }
    uncover(c);
    return Status::Exhausted;
  }

  const std::vector<int>& solution() const { return solution_; }

 private:
  int choose() const {
    int best = right_[0];
    int best_size = std::numeric_limits<int>::max();
    for (int c = right_[0]; c != 0; c = right_[static_cast<std::size_t>(c)]) {
      if (size_[static_cast<std::size_t>(c)] < best_size) {
        best = c;
        best_size = size_[static_cast<std::size_t>(c)];
        if (best_size == 0) break;
      }
    }
    return best;
  }

  void cover(int c) {
    const auto uc = static_cast<std::size_t>(c);
    right_[static_cast<std::size_t>(left_[uc])] = right_[uc];
    left_[static_cast<std::size_t>(right_[uc])] = left_[uc];
    for (int i = down_[uc]; i != c; i = down_[static_cast<std::size_t>(i)]) {
      for (int j = right_[static_cast<std::size_t>(i)]; j != i; j = right_[static_cast<std::size_t>(j)]) {
        const auto uj = static_cast<std::size_t>(j);
        up_[static_cast<std::size_t>(down_[uj])] = up_[uj];
        down_[static_cast<std::size_t>(up_[uj])] = down_[uj];
        --size_[static_cast<std::size_t>(col_[uj])];
      }
    }
  }

  void uncover(int c) {
    const auto uc = static_cast<std::size_t>(c);
    for (int i = up_[uc]; i != c; i = up_[static_cast<std::size_t>(i)]) {
      for (int j = left_[static_cast<std::size_t>(i)]; j != i; j = left_[static_cast<std::size_t>(j)]) {
        const auto uj = static_cast<std::size_t>(j);
        ++size_[static_cast<std::size_t>(col_[uj])];
        up_[static_cast<std::size_t>(down_[uj])] = j;
        down_[static_cast<std::size_t>(up_[uj])] = j;
      }
    }
    right_[static_cast<std::size_t>(left_[uc])] = c;
    left_[static_cast<std::size_t>(right_[uc])] = c;
  }

  const ExactCoverInstance& inst_;
  std::vector<int> left_, right_, up_, down_, col_, row_, size_, row_head_;
  std::vector<int> solution_;
};

}  // namespace

SearchResult solve_existence(const GroupType& type, const SearchLimits& limits) {
  const auto start = std::chrono::steady_clock::now();
  const ExactCoverInstance inst = build_instance(type);
  SearchResult result;

  std::vector<int> first;
  if (limits.symmetry_breaking) {
    first = canonical_first_rows(inst);
  } else if (!inst.columns.empty()) {
    Dlx probe(inst);
    first = probe.rows_of_column(probe.first_column());
  }
  // Types with no cross pairs (a single group) are covered by the empty design.
  if (inst.columns.empty()) {
    result.outcome = SearchOutcome::Found;
    result.design = Design(inst.v, inst.groups, 4);
    return result;
  }

  const auto deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                    std::chrono::duration<double>(limits.timeout_seconds));
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> out_of_budget{false};
  // Index of the earliest branch known to hold a solution; later branches stop.
  std::atomic<std::size_t> best{first.size()};

  struct BranchResult {
    Dlx::Status status = Dlx::Status::Exhausted;
    std::vector<int> solution;
  };
  std::vector<BranchResult> branch(first.size());

  auto run_branch = [&](std::size_t b) {
    Dlx dlx(inst);
    dlx.select(first[b]);
    std::uint64_t local = 0;
    auto budget = [&]() {
      if (best.load(std::memory_order_relaxed) < b || out_of_budget.load(std::memory_order_relaxed)) return false;
      if (++local % 1024 == 0) {
        if (nodes.fetch_add(1024) + 1024 > limits.node_cap || std::chrono::steady_clock::now() > deadline) {
          out_of_budget = true;
          return false;
        }
      }
      return true;
    };
    branch[b].status = dlx.search(budget);
    nodes.fetch_add(local % 1024);
    if (branch[b].status == Dlx::Status::Solved) {
      branch[b].solution = dlx.solution();
      std::size_t cur = best.load();
      while (b < cur && !best.compare_exchange_weak(cur, b)) {
      }
    }
  };

  const unsigned threads = std::max(1u, limits.threads);
  if (threads == 1 || first.size() <= 1) {
    for (std::size_t b = 0; b < first.size(); ++b) {
      run_branch(b);
      if (branch[b].status != Dlx::Status::Exhausted) break;
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(threads, first.size()); ++t) {
      pool.emplace_back([&] {
        for (std::size_t b; (b = next.fetch_add(1)) < first.size();) run_branch(b);
      });
    }
    for (auto& t : pool) t.join();
  }

  result.nodes = nodes.load();
  result.branches = first.size();
  result.outcome = SearchOutcome::Exhausted;
  for (std::size_t b = 0; b < first.size(); ++b) {
    if (branch[b].status == Dlx::Status::Solved) {
      result.outcome = SearchOutcome::Found;
      auto rows = branch[b].solution;
      std::sort(rows.begin(), rows.end());
      Design d(inst.v, inst.groups, 4);
      d.reserve_blocks(rows.size());
      for (int r : rows) d.add_block(inst.rows[static_cast<std::size_t>(r)]);
      if (!verify_gdd(d).ok) fail(ErrorKind::InternalError, "search produced an invalid design for " + type.str());
      result.design = std::move(d);
      break;
    }
    if (branch[b].status == Dlx::Status::Aborted) {
      result.outcome = SearchOutcome::Timeout;
      break;
    }
  }
  if (result.outcome == SearchOutcome::Exhausted && out_of_budget.load()) result.outcome = SearchOutcome::Timeout;
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace gdd
