#include "gdd/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <set>
#include <sstream>
#include <thread>

#include "gdd/blockgen.hpp"
#include "gdd/digest.hpp"
#include "gdd/error.hpp"
#include "gdd/gddx.hpp"
#include "gdd/signature.hpp"
#include "gdd/verify.hpp"

#ifndef GDD_DEFAULT_CATALOG_DIR
#define GDD_DEFAULT_CATALOG_DIR "catalog"
#endif

namespace gdd {

namespace fs = std::filesystem;

fs::path default_catalog_dir() {
  if (const char* env = std::getenv("GDDTOOL_CATALOG"); env && *env) return env;
  return GDD_DEFAULT_CATALOG_DIR;
}

std::vector<CatalogFile> list_catalog(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) fail(ErrorKind::IoError, "catalog directory " + dir.string() + " not found");
  std::vector<CatalogFile> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".gdd") out.push_back({e.path().stem().string(), e.path()});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  return out;
}

EntryCheck check_entry(const CatalogFile& file, unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  EntryCheck c;
  c.name = file.name;
  try {
    const auto spec = read_spec(file.path.string());
    if (spec.name != file.name) c.problems.push_back("file name differs from spec name " + spec.name);
    const Design d = expand(spec, {threads});
    c.type = group_type_of(d);
    c.blocks = static_cast<std::int64_t>(d.num_blocks());
    c.expected = expected_block_count(c.type);
    const auto report = verify_gdd(d, {10, threads});
    if (!report.ok) {
      // One witness per failure kind, taken from the full list.
      const auto full = verify_gdd(d, {0, threads});
      std::string w = std::to_string(full.total_failures) + " failures";
      std::set<FailureKind> seen;
      for (const auto& f : full.failures) {
        if (seen.insert(f.kind).second) w += "; " + describe(f);
      }
      if (full.failures.empty()) w = "block count " + std::to_string(report.counted_blocks);
      c.problems.push_back("verification failed: " + w);
    }
    const auto sig = check_signature(spec);
    if (spec.signature) {
      c.signature = *spec.signature;
      for (const auto& diff : sig.diffs) c.problems.push_back("signature: " + diff);
      if (sig.ok && format_signature(signature_of(spec)) != *spec.signature) {
        c.warnings.push_back("signature is not in canonical layout");
      }
    } else {
      c.warnings.push_back("no signature");
    }
    c.digest = design_digest(d);
  } catch (const Error& e) {
    c.problems.push_back(e.what());
  }
  c.ok = c.problems.empty();
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return c;
}

CatalogSummary catalog_verify_all(const fs::path& dir, unsigned threads) {
  const auto files = list_catalog(dir);
  CatalogSummary s;
  s.entries.resize(files.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < files.size();) s.entries[i] = check_entry(files[i]);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(files.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : s.entries) s.failures += e.ok ? 0 : 1;
  return s;
}

std::string format_manifest(const CatalogSummary& summary) {
  std::ostringstream out;
  out << "# name\ttype\tsignature\tdigest\n";
  for (const auto& e : summary.entries) {
    out << e.name << '\t' << e.type.str() << '\t' << e.signature << '\t' << e.digest << '\n';
  }
  return out.str();
}

std::vector<ManifestRow> parse_manifest(const std::string& text) {
  std::vector<ManifestRow> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::size_t pos = 0;
    while (true) {
      const auto tab = line.find('\t', pos);
      f.push_back(line.substr(pos, tab == std::string::npos ? std::string::npos : tab - pos));
      if (tab == std::string::npos) break;
      pos = tab + 1;
    }
    if (f.size() != 4) fail(ErrorKind::SyntaxError, "manifest line " + std::to_string(line_no) + ": expected 4 fields");
    rows.push_back({f[0], f[1], f[2], f[3]});
  }
  return rows;
}

std::optional<Triple> as_gum(const GroupType& type) {
  const auto& p = type.parts();
  if (p.size() == 1) return Triple{p[0].size, p[0].count, 0};
  if (p.size() != 2) return std::nullopt;
  if (p[0].count > 1 && p[1].count == 1) return Triple{p[0].size, p[0].count, p[1].size};
  if (p[1].count > 1 && p[0].count == 1) return Triple{p[1].size, p[1].count, p[0].size};
  return std::nullopt;
}

std::set<Triple> catalog_triples(const fs::path& dir) {
  std::set<Triple> out;
  for (const auto& f : list_catalog(dir)) {
    try {
      if (auto t = as_gum(GroupType::parse(f.name))) out.insert(*t);
    } catch (const Error&) {
    }
  }
  return out;
}

}  // namespace gdd
