#include "gdd/constructions.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "gdd/error.hpp"
#include "gdd/verify.hpp"

namespace gdd {

namespace {

void must_verify(const Design& d, const char* op) {
  const auto r = d.holes ? verify_dgdd(d) : verify_gdd(d);
  if (!r.ok) {
    fail(ErrorKind::InternalError, std::string(op) + " produced a design that does not verify" +
                                       (r.failures.empty() ? "" : ": " + describe(r.failures.front())));
  }
}

void require_gdd(const Design& d, const char* role) {
  const auto r = d.holes ? verify_dgdd(d) : verify_gdd(d);
  if (!r.ok) {
    fail(ErrorKind::BadIngredient, std::string(role) + " does not verify" +
                                       (r.failures.empty() ? "" : ": " + describe(r.failures.front())));
  }
}

// Filler groups ordered by size (largest first), ties by lowest point.
std::vector<PointSet> ordered_groups(const Design& filler) {
  auto gs = filler.groups;
  for (auto& g : gs) std::sort(g.begin(), g.end());
  std::stable_sort(gs.begin(), gs.end(), [](const PointSet& a, const PointSet& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  return gs;
}

// Appends filler's blocks with filler point x sent to image[x].
void overlay(Design& out, const Design& filler, const std::vector<Point>& image) {
  std::vector<Point> block(static_cast<std::size_t>(filler.block_size()));
  for (std::size_t i = 0; i < filler.num_blocks(); ++i) {
    auto b = filler.block(i);
    for (std::size_t k = 0; k < b.size(); ++k) block[k] = image[static_cast<std::size_t>(b[k])];
    out.add_block(block);
  }
}

// Image map sending the t-th ordered filler group onto targets[t] in order.
std::vector<Point> image_map(const Design& filler, const std::vector<PointSet>& ordered,
                             const std::vector<const PointSet*>& targets) {
  std::vector<Point> image(static_cast<std::size_t>(filler.v), -1);
  for (std::size_t t = 0; t < ordered.size(); ++t) {
    const auto& src = ordered[t];
    const auto& dst = *targets[t];
    if (src.size() != dst.size()) {
      fail(ErrorKind::AlignmentError, "filler group of size " + std::to_string(src.size()) +
                                          " cannot be placed on a part of size " + std::to_string(dst.size()));
    }
    for (std::size_t k = 0; k < src.size(); ++k) image[static_cast<std::size_t>(src[k])] = dst[k];
  }
  return image;
}

// Overlays each part in `fill` (with cells cut out by `cut`) plus m new points,
// and returns a design whose groups are `keep` followed by the new group.
Design overlay_parts(const Design& d, const std::vector<PointSet>& fill, const std::vector<PointSet>& cut,
                     const std::vector<PointSet>& keep, int m, DesignLibrary& lib, const char* op) {
  if (m < 0) fail(ErrorKind::BadParameter, "m must be non-negative");
  std::vector<int> cut_of(static_cast<std::size_t>(d.v), -1);
  for (std::size_t j = 0; j < cut.size(); ++j) {
    for (Point x : cut[j]) cut_of[static_cast<std::size_t>(x)] = static_cast<int>(j);
  }
  PointSet fresh(static_cast<std::size_t>(m));
  std::iota(fresh.begin(), fresh.end(), d.v);

  struct Plan {
    std::vector<PointSet> cells;
  };
  std::vector<Plan> plans;
  std::optional<GroupType> common;
  for (const auto& part : fill) {
    std::vector<PointSet> cells(cut.size());
    for (Point x : part) cells[static_cast<std::size_t>(cut_of[static_cast<std::size_t>(x)])].push_back(x);
    std::erase_if(cells, [](const PointSet& c) { return c.empty(); });
    for (auto& c : cells) std::sort(c.begin(), c.end());
    std::stable_sort(cells.begin(), cells.end(), [](const PointSet& a, const PointSet& b) {
      if (a.size() != b.size()) return a.size() > b.size();
      return a.front() < b.front();
    });
    std::vector<int> sizes;
    for (const auto& c : cells) sizes.push_back(static_cast<int>(c.size()));
    const GroupType t = GroupType::from_sizes(sizes).with(m);
    if (common && *common != t) {
      fail(ErrorKind::AlignmentError, std::string(op) + ": parts need different fillers (" + common->str() + " and " +
                                          t.str() + ")");
    }
    common = t;
    plans.push_back({std::move(cells)});
  }

  Design out(d.v + m, keep, 4);
  if (m > 0) out.groups.push_back(fresh);
  for (std::size_t i = 0; i < d.num_blocks(); ++i) out.add_block(d.block(i));
  if (!common) return out;

  const auto entry = lib.get(*common);
  const Design& filler = entry.design;
  const auto ordered = ordered_groups(filler);
  // The new points take the last filler group of size m in that order.
  std::size_t fresh_slot = ordered.size();
  if (m > 0) {
    for (std::size_t t = ordered.size(); t-- > 0;) {
      if (static_cast<int>(ordered[t].size()) == m) {
        fresh_slot = t;
        break;
      }
    }
  }
  for (const auto& plan : plans) {
    std::vector<const PointSet*> targets;
    std::size_t c = 0;
    for (std::size_t t = 0; t < ordered.size(); ++t) {
      targets.push_back(t == fresh_slot ? &fresh : &plan.cells[c++]);
    }
    overlay(out, filler, image_map(filler, ordered, targets));
  }
  return out;
}

}  // namespace

Design wfc_inflate(const Design& master, const std::vector<int>& weights, DesignLibrary& lib) {
  require_gdd(master, "master design");
  if (weights.size() != static_cast<std::size_t>(master.v)) {
    fail(ErrorKind::BadParameter, "expected " + std::to_string(master.v) + " weights, got " + std::to_string(weights.size()));
  }
  std::vector<Point> offset(weights.size() + 1, 0);
  for (std::size_t p = 0; p < weights.size(); ++p) {
    if (weights[p] < 0) fail(ErrorKind::BadParameter, "weights must be non-negative");
    offset[p + 1] = offset[p] + weights[p];
  }
  const auto copies = [&](Point p) {
    PointSet s(static_cast<std::size_t>(weights[static_cast<std::size_t>(p)]));
    std::iota(s.begin(), s.end(), offset[static_cast<std::size_t>(p)]);
    return s;
  };

  std::vector<PointSet> groups;
  for (const auto& g : master.groups) {
    PointSet inflated;
    for (Point p : g) {
      const auto c = copies(p);
      inflated.insert(inflated.end(), c.begin(), c.end());
    }
    if (!inflated.empty()) groups.push_back(std::move(inflated));
  }
  Design out(offset.back(), std::move(groups), 4);

  struct Pattern {
    std::vector<Point> pts;
    GroupType type;
  };
  std::vector<Pattern> patterns(master.num_blocks());
  for (std::size_t i = 0; i < master.num_blocks(); ++i) {
    auto& pts = patterns[i].pts;
    for (Point p : master.block(i)) {
      if (weights[static_cast<std::size_t>(p)] > 0) pts.push_back(p);
    }
    if (pts.size() <= 1) continue;
    // Heaviest points first; the block is sorted, so equal weights keep point order.
    std::stable_sort(pts.begin(), pts.end(), [&](Point a, Point c) {
      return weights[static_cast<std::size_t>(a)] > weights[static_cast<std::size_t>(c)];
    });
    std::vector<int> sizes;
    for (Point p : pts) sizes.push_back(weights[static_cast<std::size_t>(p)]);
    patterns[i].type = GroupType::from_sizes(sizes);
    if (pts.size() < 4) {
      fail(ErrorKind::MissingIngredient, "4-GDD of type " + patterns[i].type.str() + " for master block " +
                                             std::to_string(i) + ": fewer than four weighted points");
    }
  }

  // Every pattern is looked up before any overlay so that all missing types are reported together.
  std::map<GroupType, LibraryEntry> fillers;
  std::vector<std::string> missing;
  for (const auto& pat : patterns) {
    if (pat.pts.size() <= 1 || fillers.contains(pat.type)) continue;
    if (std::find(missing.begin(), missing.end(), pat.type.str()) != missing.end()) continue;
    try {
      fillers.emplace(pat.type, lib.get(pat.type));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::MissingIngredient) throw;
      missing.push_back(pat.type.str());
    }
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    fail(ErrorKind::MissingIngredient, "no 4-GDD available of type " + list);
  }

  std::int64_t expected = 0;
  for (const auto& pat : patterns) {
    if (pat.pts.size() <= 1) continue;
    const Design& filler = fillers.at(pat.type).design;
    const auto ordered = ordered_groups(filler);
    std::vector<PointSet> cells;
    for (Point p : pat.pts) cells.push_back(copies(p));
    std::vector<const PointSet*> targets;
    for (const auto& c : cells) targets.push_back(&c);
    overlay(out, filler, image_map(filler, ordered, targets));
    expected += static_cast<std::int64_t>(filler.num_blocks());
  }
  if (static_cast<std::int64_t>(out.num_blocks()) != expected) {
    fail(ErrorKind::InternalError, "wfc_inflate block count mismatch");
  }
  must_verify(out, "wfc_inflate");
  return out;
}

Design wfc_inflate_dgdd(const Design& master, int h, int u, const Design& dgdd) {
  if (h < 1 || u < 1) fail(ErrorKind::BadParameter, "h and u must be positive");
  require_gdd(master, "master design");
  if (master.block_size() != 4) fail(ErrorKind::BadIngredient, "master design must have blocks of size 4");
  if (!dgdd.holes) fail(ErrorKind::BadIngredient, "ingredient has no holes");
  const int hu = h * u;
  const bool shape_ok = dgdd.block_size() == 4 && dgdd.groups.size() == 4 && dgdd.holes->size() == static_cast<std::size_t>(u) &&
                        dgdd_type(dgdd) == "(" + std::to_string(hu) + ", " + GroupType({{h, u}}).str() + ")^4";
  if (!shape_ok) {
    fail(ErrorKind::BadIngredient, "ingredient has type " + dgdd_type(dgdd) + ", expected (" + std::to_string(hu) + ", " +
                                       std::to_string(h) + "^" + std::to_string(u) + ")^4");
  }
  require_gdd(dgdd, "ingredient DGDD");

  // Position (slot, rank) of every ingredient point within its group.
  std::vector<int> hole_of(static_cast<std::size_t>(dgdd.v), -1);
  for (std::size_t j = 0; j < dgdd.holes->size(); ++j) {
    for (Point x : (*dgdd.holes)[j]) hole_of[static_cast<std::size_t>(x)] = static_cast<int>(j);
  }
  auto gs = dgdd.groups;
  for (auto& g : gs) std::sort(g.begin(), g.end());
  std::sort(gs.begin(), gs.end());
  std::vector<int> group_of(static_cast<std::size_t>(dgdd.v)), copy_of(static_cast<std::size_t>(dgdd.v));
  for (std::size_t i = 0; i < gs.size(); ++i) {
    std::vector<int> rank(static_cast<std::size_t>(u), 0);
    for (Point x : gs[i]) {
      const int j = hole_of[static_cast<std::size_t>(x)];
      group_of[static_cast<std::size_t>(x)] = static_cast<int>(i);
      copy_of[static_cast<std::size_t>(x)] = j * h + rank[static_cast<std::size_t>(j)]++;
    }
  }

  const auto copy = [&](Point p, int c) { return p * hu + c; };
  std::vector<PointSet> groups;
  for (const auto& g : master.groups) {
    PointSet inflated;
    for (Point p : g) {
      for (int c = 0; c < hu; ++c) inflated.push_back(copy(p, c));
    }
    groups.push_back(std::move(inflated));
  }
  Design out(master.v * hu, std::move(groups), 4);
  std::vector<PointSet> holes(static_cast<std::size_t>(u));
  for (Point p = 0; p < master.v; ++p) {
    for (int j = 0; j < u; ++j) {
      for (int r = 0; r < h; ++r) holes[static_cast<std::size_t>(j)].push_back(copy(p, j * h + r));
    }
  }
  out.holes = std::move(holes);
  out.reserve_blocks(master.num_blocks() * dgdd.num_blocks());
  std::vector<Point> image(static_cast<std::size_t>(dgdd.v));
  for (std::size_t i = 0; i < master.num_blocks(); ++i) {
    auto b = master.block(i);
    for (Point x = 0; x < dgdd.v; ++x) {
      image[static_cast<std::size_t>(x)] = copy(b[static_cast<std::size_t>(group_of[static_cast<std::size_t>(x)])], copy_of[static_cast<std::size_t>(x)]);
    }
    overlay(out, dgdd, image);
  }
  must_verify(out, "wfc_inflate_dgdd");
  return out;
}

Design fill_holes(const Design& dgdd, int m, DesignLibrary& lib) {
  if (!dgdd.holes) fail(ErrorKind::MissingHoles, "fill_holes needs a design with holes");
  require_gdd(dgdd, "DGDD");
  Design out = overlay_parts(dgdd, *dgdd.holes, dgdd.groups, dgdd.groups, m, lib, "fill_holes");
  must_verify(out, "fill_holes");
  return out;
}

Design adjoin(const Design& dgdd, int m, DesignLibrary& lib) {
  if (!dgdd.holes) fail(ErrorKind::MissingHoles, "adjoin needs a design with holes");
  require_gdd(dgdd, "DGDD");
  Design out = overlay_parts(dgdd, dgdd.groups, *dgdd.holes, *dgdd.holes, m, lib, "adjoin");
  must_verify(out, "adjoin");
  return out;
}

Design fill_group(const Design& design, std::size_t group_index, const Design& filler) {
  if (group_index >= design.groups.size()) {
    fail(ErrorKind::BadIndex, "group " + std::to_string(group_index) + " of " + std::to_string(design.groups.size()));
  }
  auto target = design.groups[group_index];
  std::sort(target.begin(), target.end());
  if (static_cast<std::size_t>(filler.v) != target.size()) {
    fail(ErrorKind::SizeMismatch, "filler has " + std::to_string(filler.v) + " points, group has " +
                                      std::to_string(target.size()));
  }
  require_gdd(design, "design");
  require_gdd(filler, "filler");
  if (filler.block_size() != design.block_size()) fail(ErrorKind::BadIngredient, "filler block size differs");

  std::vector<PointSet> groups;
  for (std::size_t i = 0; i < design.groups.size(); ++i) {
    if (i != group_index) {
      groups.push_back(design.groups[i]);
      continue;
    }
    for (const auto& fg : filler.groups) {
      PointSet mapped;
      for (Point x : fg) mapped.push_back(target[static_cast<std::size_t>(x)]);
      groups.push_back(std::move(mapped));
    }
  }
  Design out(design.v, std::move(groups), design.block_size());
  for (std::size_t i = 0; i < design.num_blocks(); ++i) out.add_block(design.block(i));
  overlay(out, filler, target);
  must_verify(out, "fill_group");
  return out;
}

Design inflate_uniform(const Design& design, int r, DesignLibrary& lib) {
  if (r < 1) fail(ErrorKind::BadParameter, "r must be positive");
  require_gdd(design, "design");
  if (design.block_size() != 4) fail(ErrorKind::BadIngredient, "inflate_uniform needs blocks of size 4");
  const auto entry = lib.get(GroupType({{r, 4}}));
  const Design& filler = entry.design;
  const auto ordered = ordered_groups(filler);

  std::vector<PointSet> groups;
  for (const auto& g : design.groups) {
    PointSet inflated;
    for (Point p : g) {
      for (int c = 0; c < r; ++c) inflated.push_back(p * r + c);
    }
    groups.push_back(std::move(inflated));
  }
  Design out(design.v * r, std::move(groups), 4);
  out.reserve_blocks(design.num_blocks() * filler.num_blocks());
  std::vector<PointSet> cells(4, PointSet(static_cast<std::size_t>(r)));
  for (std::size_t i = 0; i < design.num_blocks(); ++i) {
    auto b = design.block(i);
    std::vector<const PointSet*> targets;
    for (std::size_t k = 0; k < 4; ++k) {
      std::iota(cells[k].begin(), cells[k].end(), b[k] * r);
      targets.push_back(&cells[k]);
    }
    overlay(out, filler, image_map(filler, ordered, targets));
  }
  must_verify(out, "inflate_uniform");
  return out;
}

Design remove_parallel_class(const Design& rgdd, std::size_t class_index) {
  if (!rgdd.resolution) fail(ErrorKind::MissingResolution, "design has no resolution");
  if (class_index >= rgdd.resolution->size()) {
    fail(ErrorKind::BadIndex, "class " + std::to_string(class_index) + " of " + std::to_string(rgdd.resolution->size()));
  }
  if (!verify_resolution(rgdd).ok || !verify_gdd(rgdd).ok) fail(ErrorKind::BadIngredient, "resolvable design does not verify");
  const auto& removed = (*rgdd.resolution)[class_index];
  std::vector<bool> drop(rgdd.num_blocks(), false);
  std::vector<PointSet> holes;
  for (auto bi : removed) {
    drop[bi] = true;
    auto b = rgdd.block(bi);
    holes.emplace_back(b.begin(), b.end());
  }
  Design out(rgdd.v, rgdd.groups, rgdd.block_size());
  for (std::size_t i = 0; i < rgdd.num_blocks(); ++i) {
    if (!drop[i]) out.add_block(rgdd.block(i));
  }
  out.holes = std::move(holes);
  must_verify(out, "remove_parallel_class");
  return out;
}

std::vector<int> reachable_sums(const std::vector<int>& d, int q) {
  std::vector<int> current{0};
  for (int step = 0; step < q; ++step) {
    std::vector<int> next;
    for (int s : current) {
      for (int x : d) next.push_back(s + x);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    current = std::move(next);
  }
  return q <= 0 ? std::vector<int>{0} : current;
}

}  // namespace gdd
