#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gdd/group_type.hpp"
#include "gdd/oracle.hpp"

namespace gdd {

// GDDTOOL_CATALOG when set, otherwise the catalog directory of the source tree.
std::filesystem::path default_catalog_dir();

struct CatalogFile {
  std::string name;  // file stem, e.g. "4^5_10^2"
  std::filesystem::path path;
};

// Every *.gdd file in the directory, ordered by name. Throws IoError when the
// directory does not exist.
std::vector<CatalogFile> list_catalog(const std::filesystem::path& dir);

struct EntryCheck {
  std::string name;
  bool ok = false;
  GroupType type;
  std::string signature;
  std::int64_t blocks = 0;
  std::int64_t expected = 0;
  std::string digest;
  double seconds = 0.0;
  std::vector<std::string> problems;
  std::vector<std::string> warnings;
};

// Parses, expands and verifies one spec, and checks its signature. A missing
// signature is a warning; a mismatching one is a problem.
EntryCheck check_entry(const CatalogFile& file, unsigned threads = 1);

struct CatalogSummary {
  std::vector<EntryCheck> entries;  // ordered by name
  std::size_t failures = 0;
};

CatalogSummary catalog_verify_all(const std::filesystem::path& dir, unsigned threads = 1);

struct ManifestRow {
  std::string name;
  std::string type;
  std::string signature;
  std::string digest;
  bool operator==(const ManifestRow&) const = default;
};

// Tab-separated: name, type, signature, digest. Lines starting with '#' are comments.
std::string format_manifest(const CatalogSummary& summary);
std::vector<ManifestRow> parse_manifest(const std::string& text);

// (g, u, m) when the type has the shape g^u m^1 (m = 0 for a uniform type).
std::optional<Triple> as_gum(const GroupType& type);

// (g, u, m) of every catalog file whose name reads as a type of that shape.
std::set<Triple> catalog_triples(const std::filesystem::path& dir);

}  // namespace gdd
