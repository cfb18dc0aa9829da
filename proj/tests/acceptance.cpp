// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>

#include "gdd/algebra.hpp"
#include "gdd/blockgen.hpp"
#include "gdd/catalog.hpp"
#include "gdd/digest.hpp"
#include "gdd/gddx.hpp"
#include "gdd/library.hpp"
#include "gdd/oracle.hpp"
#include "gdd/recipe.hpp"
#include "gdd/search.hpp"
#include "gdd/signature.hpp"
#include "gdd/verify.hpp"
#include "mandatory.hpp"
#include "support.hpp"

using namespace gdd;
using Clock = std::chrono::steady_clock;

namespace {

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  Outcome() { note << std::fixed << std::setprecision(3); }
  bool pass = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (pass) note << "first failure: " << what;
      pass = false;
    }
  }
};

double within(Outcome& o, double seconds, double budget, const std::string& what) {
  std::ostringstream m;
  m << what << " took " << seconds << " s, budget " << budget << " s";
  o.require(seconds < budget, m.str());
  return seconds;
}

LibraryOptions catalog_library() {
  LibraryOptions o;
  o.catalog_dir = testing::catalog_dir();
  return o;
}

void catalog_fidelity(Outcome& o) {
  double worst = 0;
  for (auto name : testing::kMandatoryEntries) {
    const std::string n(name);
    const auto t = Clock::now();
    const auto spec = read_spec(testing::catalog_file(n).string());
    const Design d = expand(spec);
    const auto report = verify_gdd(d);
    const double s = since(t);
    worst = std::max(worst, s);
    o.require(report.ok, n + " verifies");
    o.require(static_cast<std::int64_t>(d.num_blocks()) == expected_block_count(group_type_of(d)), n + " block count");
    o.require(spec.signature.has_value() && check_signature(spec).ok, n + " signature matches");
    o.require(spec.signature && *spec.signature == format_signature(signature_of(spec)), n + " signature verbatim");
    within(o, s, 1.0, n);
  }
  const auto count = [](const char* n) { return expand(read_spec(testing::catalog_file(n).string())).num_blocks(); };
  o.require(count("4^5_10^2") == 110 && count("14^6_8^1") == 602 && count("38^9_11^1") == 9291, "reference counts");
  o.note << (o.pass ? "" : "; ") << testing::kMandatoryEntries.size() << " entries, slowest " << worst << " s (< 1 s each)";
}

void product_semantics(Outcome& o) {
  const auto s11 = read_spec(testing::catalog_file("38^9_11^1").string());
  const auto s14 = read_spec(testing::catalog_file("38^9_14^1").string());
  o.require(verify_gdd(expand(s11)).ok, "38^9 11^1 verifies");
  o.require(verify_gdd(expand(s14)).ok, "38^9 14^1 verifies");
  const auto flipped = verify_gdd(testing::develop_with(s11, testing::doubled_element_mapping));
  o.require(!flipped.ok, "flipped step-2 rule fails");
  o.note << (o.pass ? "" : "; ") << "flipped rule gives " << flipped.total_failures << " failures";
}

void algebra(Outcome& o) {
  const auto t = Clock::now();
  int designs = 0;
  for (int q = 2; q <= 32; ++q) {
    if (!is_prime_power(q)) continue;
    const auto m = mols(q);
    o.require(m.squares.size() == static_cast<std::size_t>(q - 1), "mols count " + std::to_string(q));
    for (std::size_t i = 0; i < m.squares.size(); ++i) {
      o.require(is_latin(m.squares[i]), "latin " + std::to_string(q));
      for (std::size_t j = i + 1; j < m.squares.size(); ++j)
        o.require(are_orthogonal(m.squares[i], m.squares[j]), "orthogonal " + std::to_string(q));
    }
    if (q >= 3) {
      o.require(verify_gdd(transversal_design(4, q)).ok, "TD(4," + std::to_string(q) + ")");
      ++designs;
    }
    for (int n = 2; n <= std::min(q, 8); ++n) {
      const Design r = rgdd(n, q);
      o.require(verify_gdd(r).ok && verify_resolution(r).ok, "rgdd " + std::to_string(n) + " " + std::to_string(q));
      ++designs;
    }
  }
  const double s = within(o, since(t), 5.0, "algebra sweep");
  o.note << (o.pass ? "" : "; ") << designs << " designs in " << s << " s (< 5 s)";
}

void recipe(Outcome& o, const std::string& file, const std::string& type, std::size_t blocks, double budget) {
  DesignLibrary lib(catalog_library());
  const auto t = Clock::now();
  const auto r = run_recipe_file(std::filesystem::path(GDD_RECIPE_DIR) / file, lib);
  const double s = since(t);
  o.require(group_type_of(r.design).str() == type, "type " + type);
  o.require(r.design.num_blocks() == blocks, "block count");
  o.require(verify_gdd(r.design).ok, "verifies");
  within(o, s, budget, file);
  o.note << (o.pass ? "" : "; ") << type << ", " << r.design.num_blocks() << " blocks in " << s << " s (< " << static_cast<int>(budget)
         << " s)";
}

void search(Outcome& o) {
  auto t = Clock::now();
  const auto r24 = solve_existence(GroupType::parse("2^4"));
  const double s24 = since(t);
  o.require(r24.outcome == SearchOutcome::Exhausted, "2^4 exhausted");
  within(o, s24, 1.0, "2^4");
  for (const char* type : {"3^4", "3^5"}) {
    t = Clock::now();
    const auto r = solve_existence(GroupType::parse(type));
    o.require(r.outcome == SearchOutcome::Found && r.design && verify_gdd(*r.design).ok, std::string(type) + " found");
    within(o, since(t), 10.0, type);
  }
  t = Clock::now();
  const auto slow = solve_existence(GroupType::parse("2^6 5^1"), slow_limits());
  o.note << (o.pass ? "" : "; ") << "2^4 exhausted in " << s24 << " s; optional 2^6 5^1: " << to_string(slow.outcome)
         << " in " << since(t) << " s";
}

void oracle(Outcome& o) {
  const auto t = Clock::now();
  const auto catalog = catalog_triples(testing::catalog_dir());
  std::vector<Triple> negative;
  std::int64_t points = 0;
  for (std::int64_t g = 1; g <= 62; ++g) {
    for (std::int64_t u = 4; u <= 27; ++u) {
      for (std::int64_t m = 0; 2 * m <= g * (u - 1); ++m) {
        ++points;
        const Verdict v = status_gum(g, u, m).verdict;
        if (v == Verdict::NotExists) negative.emplace_back(g, u, m);
        if ((g % 6 == 2 || g % 6 == 4) && m > 0 && m != g) {
          if (necessary_gum(g, u, m) != necessary_gum_even_form(g, u, m)) {
            o.require(false, "simplified form at " + std::to_string(g) + " " + std::to_string(u) + " " + std::to_string(m));
          }
        }
      }
    }
  }
  o.require(negative == std::vector<Triple>{{2, 4, 0}, {2, 6, 5}, {6, 4, 0}}, "nonexistence set");
  for (const auto& [g, u, m] : catalog) o.require(status_gum(g, u, m).verdict == Verdict::Exists, "catalog type exists");
  const std::map<std::int64_t, int> want{{56, 5}, {80, 3}, {112, 3}};
  for (const auto& [g, n] : want) {
    int open = 0;
    for (std::int64_t m = 0; m <= 4 * g; ++m) open += status_gum(g, 9, m).verdict == Verdict::OpenException;
    o.require(open == n, "open count at g=" + std::to_string(g));
  }
  const double s = within(o, since(t), 10.0, "oracle sweep");
  o.note << (o.pass ? "" : "; ") << points << " grid points, " << catalog.size() << " catalog types, " << s
         << " s (< 10 s)";
}

void digests(Outcome& o) {
  const auto a = catalog_verify_all(testing::catalog_dir(), 1);
  const auto b = catalog_verify_all(testing::catalog_dir(), 4);
  const auto manifest = parse_manifest(read_text_file(testing::catalog_dir() / "MANIFEST"));
  o.require(format_manifest(a) == format_manifest(b), "catalog digests across thread counts");
  o.require(parse_manifest(format_manifest(a)) == manifest, "catalog digests match MANIFEST");

  std::string first;
  for (unsigned threads : {1u, 2u, 4u}) {
    DesignLibrary lib(catalog_library());
    auto limits = lib.options().search_limits;
    limits.threads = threads;
    const auto r = run_recipe_file(std::filesystem::path(GDD_RECIPE_DIR) / "holes_12^4_3^1.rcp", lib);
    const auto sr = solve_existence(GroupType::parse("3^5"), limits);
    const std::string d = design_digest(r.design) + design_digest(*sr.design);
    if (first.empty()) first = d;
    o.require(d == first, "recipe and search digests with " + std::to_string(threads) + " threads");
  }
  o.note << (o.pass ? "" : "; ") << a.entries.size() << " catalog digests, recipe and search digests stable over 1/2/4 threads";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "catalog fidelity", catalog_fidelity},
      {2, "product mapping semantics", product_semantics},
      {3, "fields, MOLS, TD and RGDD for q <= 32", algebra},
      {4, "uniform inflation to 9^5", [](Outcome& o) { recipe(o, "uniform_9^5.rcp", "9^5", 135, 1.0); }},
      {5, "weighted inflation to 15^5", [](Outcome& o) { recipe(o, "weighted_15^5.rcp", "15^5", 375, 5.0); }},
      {6, "hole filling to 12^4 3^1", [](Outcome& o) { recipe(o, "holes_12^4_3^1.rcp", "12^4 3^1", 168, 30.0); }},
      {7, "exact-cover search", search},
      {8, "existence oracle", oracle},
      {9, "digest stability", digests},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t = Clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.note << "exception: " << e.what();
    }
    std::printf("%s [%d] %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, since(t), o.note.str().c_str());
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
