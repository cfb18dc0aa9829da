#include <doctest.h>

#include <map>

#include "gdd/catalog.hpp"
#include "gdd/oracle.hpp"
#include "support.hpp"

using namespace gdd;

TEST_CASE("necessary conditions for g^u") {
  CHECK(necessary_gu(2, 4));
  CHECK(necessary_gu(3, 5));
  CHECK_FALSE(necessary_gu(2, 5));
  CHECK_FALSE(necessary_gu(3, 3));
  CHECK(necessary_gu(1, 4));
  CHECK(necessary_gu(1, 13));
  CHECK_FALSE(necessary_gu(1, 7));
}

TEST_CASE("necessary conditions for g^u m^1") {
  CHECK(necessary_gum(2, 6, 5));
  CHECK_FALSE(necessary_gum(5, 6, 2));
  CHECK(necessary_gum(14, 9, 56));
  CHECK_FALSE(necessary_gum(14, 9, 59));  // beyond g(u-1)/2
  CHECK(necessary_gum(4, 5, 10) == false);
  CHECK(necessary_gum(4, 6, 1));
  CHECK_FALSE(necessary_gum(2, 3, 2));
}

TEST_CASE("the simplified form agrees for g = 2, 4 mod 6") {
  int checked = 0;
  for (std::int64_t g = 2; g <= 200; ++g) {
    if (g % 6 != 2 && g % 6 != 4) continue;
    for (std::int64_t u = 1; u <= 60; ++u)
      for (std::int64_t m = 1; 2 * m <= g * (u - 1); ++m) {
        if (m == g) continue;
        CHECK_MESSAGE(necessary_gum(g, u, m) == necessary_gum_even_form(g, u, m), g, " ", u, " ", m);
        ++checked;
      }
  }
  CHECK(checked > 100000);
}

TEST_CASE("status of uniform types") {
  CHECK(status_gu(2, 4).verdict == Verdict::NotExists);
  CHECK(status_gu(6, 4).verdict == Verdict::NotExists);
  CHECK(status_gu(2, 5).verdict == Verdict::NecessaryFail);
  CHECK(status_gu(3, 5).verdict == Verdict::Exists);
  CHECK(status_gu(9, 5).verdict == Verdict::Exists);
  CHECK(status_gu(2, 7).verdict == Verdict::Exists);
}

TEST_CASE("status of g^u m^1") {
  CHECK(status_gum(2, 6, 5).verdict == Verdict::NotExists);
  CHECK(status_gum(56, 9, 206).verdict == Verdict::OpenException);
  CHECK(status_gum(14, 9, 11).verdict == Verdict::Exists);
  CHECK(status_gum(20, 9, 11).verdict == Verdict::Exists);
  CHECK(status_gum(44, 6, 8).verdict == Verdict::Exists);
  CHECK(status_gum(5, 6, 2).verdict == Verdict::NecessaryFail);
  CHECK(status_gum(2, 4, 0).verdict == Verdict::NotExists);
  CHECK(status_gum(2, 3, 2).verdict == Verdict::NotExists);  // m = g gives 2^4
  CHECK(status_gum(3, 4, 3).verdict == Verdict::Exists);
  CHECK(status_gum(14, 9, 59).verdict == Verdict::NecessaryFail);
  // Unresolved orders inside the odd family.
  CHECK(status_gum(37, 9, 40).verdict == Verdict::OpenException);
  CHECK(status_gum(37, 12, 10).verdict == Verdict::OpenException);
  CHECK(status_gum(37, 12, 40).verdict == Verdict::Exists);
  // The large u = 24 clause needs g free of divisors from the set; for g = 47 it is 10g < m < (23g - 3)/2.
  CHECK(status_gum(47, 24, 473).verdict == Verdict::OpenException);
  CHECK(status_gum(47, 24, 470).verdict == Verdict::Exists);
  CHECK(status_gum(37, 24, 373).verdict == Verdict::Exists);
  // The g = 9 mod 12 family starts at g = 141 (141/3 = 47 has no divisor in the set).
  CHECK(status_gum(141, 8, 426).verdict == Verdict::OpenException);
  CHECK(status_gum(141, 8, 423).verdict == Verdict::Exists);
}

TEST_CASE("verified designs upgrade open points") {
  const std::set<Triple> verified{{56, 9, 206}};
  const auto s = status_gum(56, 9, 206, {&verified});
  CHECK(s.verdict == Verdict::Exists);
  CHECK(s.basis.find("verified") != std::string::npos);
  CHECK(status_gum(56, 9, 209, {&verified}).verdict == Verdict::OpenException);
}

TEST_CASE("statuses explain themselves") {
  const auto s = status_gum(5, 6, 2);
  CHECK_FALSE(s.basis.empty());
  REQUIRE_FALSE(s.congruences.empty());
  bool any_failed = false;
  for (const auto& c : s.congruences) any_failed |= !c.holds;
  CHECK(any_failed);
  CHECK(status_gum(20, 9, 11).basis.find("resolved") != std::string::npos);
}

TEST_CASE("exception set and resolved orders") {
  CHECK(in_exception_set_p(5));
  CHECK(in_exception_set_p(9));
  CHECK(in_exception_set_p(43));
  CHECK_FALSE(in_exception_set_p(47));
  CHECK_FALSE(in_exception_set_p(2));
  CHECK(divisible_by_exception_set_p(141) == true);  // 3 divides it
  CHECK_FALSE(divisible_by_exception_set_p(47));
  CHECK_FALSE(divisible_by_exception_set_p(94));
  CHECK(divisible_by_exception_set_p(2209));
  for (std::int64_t g : {1, 2, 14, 20, 56, 80, 112, 50, 38 * 19, 2 * 625, 62}) CHECK(resolved_order(g));
  for (std::int64_t g : {37, 49, 361, 74, 3, 6}) CHECK_FALSE(resolved_order(g));
}

TEST_CASE("residual cases") {
  const auto& r = residual_cases();
  CHECK(r.size() == 11);
  std::map<std::int64_t, int> per_g;
  for (const auto& [g, u, m] : r) {
    ++per_g[g];
    CHECK(u == 9);
    CHECK(status_gum(g, u, m).verdict == Verdict::OpenException);
  }
  CHECK(per_g == std::map<std::int64_t, int>{{56, 5}, {80, 3}, {112, 3}});
  for (std::int64_t g : {56, 80, 112}) {
    int open = 0;
    for (std::int64_t m = 0; m <= 4 * g; ++m) open += status_gum(g, 9, m).verdict == Verdict::OpenException;
    CHECK(open == per_g[g]);
  }
}

TEST_CASE("grid census") {
  // Frozen from an independent implementation of the decision procedure.
  std::map<Verdict, int> counts;
  std::map<std::int64_t, int> open_per_g;
  std::vector<Triple> nonexistent;
  for (std::int64_t g = 1; g <= 62; ++g)
    for (std::int64_t u = 4; u <= 27; ++u)
      for (std::int64_t m = 0; 2 * m <= g * (u - 1); ++m) {
        const Verdict v = status_gum(g, u, m).verdict;
        ++counts[v];
        if (v == Verdict::OpenException) ++open_per_g[g];
        if (v == Verdict::NotExists) nonexistent.emplace_back(g, u, m);
      }
  CHECK(counts[Verdict::Exists] == 48589);
  CHECK(counts[Verdict::NecessaryFail] == 291674);
  CHECK(counts[Verdict::NotExists] == 3);
  CHECK(counts[Verdict::OpenException] == 858);
  CHECK(nonexistent == std::vector<Triple>{{2, 4, 0}, {2, 6, 5}, {6, 4, 0}});
  CHECK(open_per_g == std::map<std::int64_t, int>{{37, 67}, {41, 73}, {43, 78}, {47, 106}, {49, 89},
                                                   {53, 95}, {55, 100}, {56, 5}, {59, 134}, {61, 111}});
}

TEST_CASE("catalog designs all exist") {
  const auto triples = catalog_triples(testing::catalog_dir());
  CHECK(triples.size() > 150);
  for (const auto& [g, u, m] : triples) {
    CAPTURE(g);
    CAPTURE(u);
    CAPTURE(m);
    CHECK(status_gum(g, u, m).verdict == Verdict::Exists);
  }
}
