#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "gdd/design.hpp"
#include "gdd/group_type.hpp"
#include "gdd/search.hpp"

namespace gdd {

enum class DesignKind { GDD, DGDD, RGDD };
enum class Source { Explicit, Catalog, Algebra, Search, File, Constructed };

std::string to_string(DesignKind kind);
std::string to_string(Source source);

// Kind of a design as stored: holes make it a DGDD, a resolution an RGDD.
DesignKind kind_of(const Design& design);

// "(12, 3^4)^4" style description of a DGDD: for each group, its size and the
// sizes of its hole cells, collected over equal groups.
std::string dgdd_type(const Design& design);

// Text key under which a design is stored: the group type for GDDs/RGDDs, the
// DGDD type string for DGDDs.
std::string library_key(const Design& design);

struct LibraryEntry {
  Design design;
  Source source = Source::Explicit;
  std::string origin;
};

struct LibraryOptions {
  std::optional<std::filesystem::path> catalog_dir;  // none: catalog not consulted
  bool allow_search = true;
  int search_max_points = 24;
  SearchLimits search_limits = [] {
    SearchLimits l;
    l.timeout_seconds = 20.0;
    return l;
  }();
};

// Existence predicate for a 4-DGDD of type (hv, h^v)^t.
bool dgdd_known_to_exist(int h, int v, int t);

// Verified 4-GDD ingredients keyed by group type (and DGDDs by their type
// string). Reads may run concurrently; each key is written once.
class DesignLibrary {
 public:
  explicit DesignLibrary(LibraryOptions options = {});

  // Verifies the design against its kind; BadIngredient if it fails. Returns
  // false when the key was already present (the earlier design is kept).
  bool add(Design design, Source source, std::string origin = {});

  std::optional<LibraryEntry> find(const std::string& key) const;
  std::optional<LibraryEntry> find(const GroupType& type) const { return find(type.str()); }

  // A 4-GDD of the given type: stored designs first, then the catalog, then
  // algebraic constructions, then bounded search. MissingIngredient otherwise.
  LibraryEntry get(const GroupType& type);

  std::vector<std::string> keys() const;
  const LibraryOptions& options() const noexcept { return options_; }

 private:
  std::optional<LibraryEntry> from_catalog(const GroupType& type);
  std::optional<LibraryEntry> from_algebra(const GroupType& type) const;

  LibraryOptions options_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, LibraryEntry> entries_;
  std::map<std::string, std::string> refused_;  // key -> reason
  std::optional<std::map<GroupType, std::filesystem::path>> catalog_index_;
};

}  // namespace gdd
