#include "gdd/library.hpp"

#include <mutex>
#include <sstream>

#include "gdd/algebra.hpp"
#include "gdd/blockgen.hpp"
#include "gdd/catalog.hpp"
#include "gdd/error.hpp"
#include "gdd/oracle.hpp"
#include "gdd/verify.hpp"

namespace gdd {

std::string to_string(DesignKind kind) {
  switch (kind) {
    case DesignKind::GDD: return "GDD";
    case DesignKind::DGDD: return "DGDD";
    case DesignKind::RGDD: return "RGDD";
  }
  return "?";
}

std::string to_string(Source source) {
  switch (source) {
    case Source::Explicit: return "explicit";
    case Source::Catalog: return "catalog";
    case Source::Algebra: return "algebra";
    case Source::Search: return "search";
    case Source::File: return "file";
    case Source::Constructed: return "constructed";
  }
  return "?";
}

DesignKind kind_of(const Design& design) {
  if (design.holes) return DesignKind::DGDD;
  if (design.resolution) return DesignKind::RGDD;
  return DesignKind::GDD;
}

std::string dgdd_type(const Design& d) {
  if (!d.holes) return group_type_of(d).str();
  std::vector<int> hole_of(static_cast<std::size_t>(d.v), -1);
  for (std::size_t j = 0; j < d.holes->size(); ++j) {
    for (Point x : (*d.holes)[j]) hole_of[static_cast<std::size_t>(x)] = static_cast<int>(j);
  }
  // (group size, cell type) -> number of such groups
  std::map<std::pair<int, GroupType>, int, std::greater<>> shapes;
  for (const auto& g : d.groups) {
    std::map<int, int> cells;
    for (Point x : g) ++cells[hole_of[static_cast<std::size_t>(x)]];
    std::vector<int> sizes;
    for (auto [hole, n] : cells) sizes.push_back(n);
    ++shapes[{static_cast<int>(g.size()), GroupType::from_sizes(sizes)}];
  }
  std::ostringstream out;
  bool first = true;
  for (const auto& [shape, count] : shapes) {
    if (!first) out << ' ';
    first = false;
    out << '(' << shape.first << ", " << shape.second.str() << ")^" << count;
  }
  return out.str();
}

std::string library_key(const Design& design) {
  return design.holes ? "dgdd " + dgdd_type(design) : group_type_of(design).str();
}

bool dgdd_known_to_exist(int h, int v, int t) {
  if (h < 1 || t < 4 || v < 4) return false;
  if ((static_cast<std::int64_t>(t - 1) * (v - 1) * h) % 3 != 0) return false;
  return !((h == 1 && v == 4 && t == 6) || (h == 1 && v == 6 && t == 4));
}

namespace {

void require_verified(const Design& d) {
  if (d.block_size() != 4) fail(ErrorKind::BadIngredient, "ingredient blocks must have size 4");
  const auto r = d.holes ? verify_dgdd(d) : verify_gdd(d);
  if (!r.ok) {
    fail(ErrorKind::BadIngredient, "design of type " + library_key(d) + " does not verify" +
                                       (r.failures.empty() ? "" : ": " + describe(r.failures.front())));
  }
  if (d.resolution && !verify_resolution(d).ok) {
    fail(ErrorKind::BadIngredient, "resolution of " + library_key(d) + " does not verify");
  }
}

// Known nonexistence or failed necessary conditions, as a reason string.
std::optional<std::string> known_impossible(const GroupType& type) {
  try {
    expected_block_count(type);
  } catch (const Error&) {
    return "cross pairs are not a multiple of 6";
  }
  if (type.num_groups() < 4) return "fewer than four groups";
  if (auto t = as_gum(type)) {
    const auto [g, u, m] = *t;
    const auto s = status_gum(g, u, m);
    if (s.verdict == Verdict::NotExists || s.verdict == Verdict::NecessaryFail) return s.basis;
  }
  return std::nullopt;
}

}  // namespace

DesignLibrary::DesignLibrary(LibraryOptions options) : options_(std::move(options)) {}

bool DesignLibrary::add(Design design, Source source, std::string origin) {
  require_verified(design);
  auto key = library_key(design);
  std::unique_lock lock(mutex_);
  if (entries_.count(key)) return false;
  entries_.emplace(std::move(key), LibraryEntry{std::move(design), source, std::move(origin)});
  return true;
}

std::optional<LibraryEntry> DesignLibrary::find(const std::string& key) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> DesignLibrary::keys() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [k, e] : entries_) out.push_back(k);
  return out;
}

std::optional<LibraryEntry> DesignLibrary::from_catalog(const GroupType& type) {
  if (!options_.catalog_dir) return std::nullopt;
  std::filesystem::path path;
  {
    std::unique_lock lock(mutex_);
    if (!catalog_index_) {
      catalog_index_.emplace();
      try {
        for (const auto& f : list_catalog(*options_.catalog_dir)) {
          try {
            catalog_index_->emplace(GroupType::parse(f.name), f.path);
          } catch (const Error&) {
          }
        }
      } catch (const Error&) {
      }
    }
    auto it = catalog_index_->find(type);
    if (it == catalog_index_->end()) return std::nullopt;
    path = it->second;
  }
  Design d = expand(read_spec(path.string()));
  return LibraryEntry{std::move(d), Source::Catalog, path.filename().string()};
}

std::optional<LibraryEntry> DesignLibrary::from_algebra(const GroupType& type) const {
  const auto& parts = type.parts();
  if (parts.size() != 1 || parts[0].count != 4) return std::nullopt;
  const int q = parts[0].size;
  if (q == 1) {
    Design d(4, {{0}, {1}, {2}, {3}}, 4);
    d.add_block({0, 1, 2, 3});
    return LibraryEntry{std::move(d), Source::Algebra, "single block"};
  }
  if (q >= 3 && is_prime_power(q)) {
    return LibraryEntry{transversal_design(4, q), Source::Algebra, "td 4 " + std::to_string(q)};
  }
  return std::nullopt;
}

LibraryEntry DesignLibrary::get(const GroupType& type) {
  const auto key = type.str();
  if (auto e = find(key)) return *e;
  {
    std::shared_lock lock(mutex_);
    if (auto it = refused_.find(key); it != refused_.end()) {
      fail(ErrorKind::MissingIngredient, "4-GDD of type " + key + ": " + it->second);
    }
  }
  auto refuse = [&](const std::string& reason) -> LibraryEntry {
    {
      std::unique_lock lock(mutex_);
      refused_.emplace(key, reason);
    }
    fail(ErrorKind::MissingIngredient, "4-GDD of type " + key + ": " + reason);
  };
  if (auto reason = known_impossible(type)) return refuse(*reason);

  std::optional<LibraryEntry> found = from_catalog(type);
  if (!found) found = from_algebra(type);
  if (!found && options_.allow_search && type.total_points() <= options_.search_max_points) {
    auto r = solve_existence(type, options_.search_limits);
    if (r.outcome == SearchOutcome::Found) {
      found = LibraryEntry{std::move(*r.design), Source::Search, "search " + type.file_stem()};
    } else if (r.outcome == SearchOutcome::Exhausted) {
      return refuse("exhaustive search found none");
    } else {
      fail(ErrorKind::MissingIngredient, "4-GDD of type " + key + ": search ran out of budget");
    }
  }
  if (!found) {
    std::string hint = "no source provides it";
    if (auto t = as_gum(type); t && status_gum(std::get<0>(*t), std::get<1>(*t), std::get<2>(*t)).verdict == Verdict::Exists) {
      hint += " (it is known to exist; supply it as a file)";
    }
    fail(ErrorKind::MissingIngredient, "4-GDD of type " + key + ": " + hint);
  }
  add(found->design, found->source, found->origin);
  return *find(key);
}

}  // namespace gdd
