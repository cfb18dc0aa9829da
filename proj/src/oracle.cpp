#include "gdd/oracle.hpp"

#include <algorithm>
#include <array>

namespace gdd {

namespace {

constexpr std::array<std::int64_t, 13> kSmallPrimes{3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43};
constexpr std::array<std::int64_t, 11> kResolvedBases{1, 5, 7, 11, 13, 17, 19, 23, 25, 29, 31};
constexpr std::array<std::int64_t, 5> kResolvedPowerBases{19, 23, 25, 29, 31};

std::int64_t pmod(std::int64_t a, std::int64_t n) {
  const auto r = a % n;
  return r < 0 ? r + n : r;
}

std::string num(std::int64_t x) { return std::to_string(x); }

std::vector<Congruence> gu_congruences(std::int64_t g, std::int64_t u) {
  return {
      {"u >= 4", u >= 4},
      {"g(u-1) = 0 mod 3", pmod(g * (u - 1), 3) == 0},
      {"g^2 u(u-1) = 0 mod 12", pmod(g * g * u * (u - 1), 12) == 0},
  };
}

std::vector<Congruence> gum_congruences(std::int64_t g, std::int64_t u, std::int64_t m) {
  return {
      {"u >= 4", u >= 4},
      {"m <= g(u-1)/2", 2 * m <= g * (u - 1)},
      {"gu = 0 mod 3", pmod(g * u, 3) == 0},
      {"g(u-1) + m = 0 mod 3", pmod(g * (u - 1) + m, 3) == 0},
      {"g^2 u(u-1) + 2gum = 0 mod 12", pmod(g * g * u * (u - 1) + 2 * g * u * m, 12) == 0},
  };
}

bool all_hold(const std::vector<Congruence>& cs) {
  return std::all_of(cs.begin(), cs.end(), [](const Congruence& c) { return c.holds; });
}

std::string first_failure(const std::vector<Congruence>& cs) {
  for (const auto& c : cs) {
    if (!c.holds) return c.expression;
  }
  return {};
}

bool one_of(std::int64_t x, std::initializer_list<std::int64_t> xs) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

// Exception family the triple falls into, or empty. Divisions such as
// (7g-21)/2 are compared after clearing denominators.
std::string exception_family(std::int64_t g, std::int64_t u, std::int64_t m) {
  if (pmod(g, 12) == 9 && g >= 141 && !divisible_by_exception_set_p(g / 3) && u == 8) {
    // m' < m < (7g - 21)/2
    const bool lower = pmod(g, 30) == 3 ? 5 * m > 17 * g - 6 : m > 3 * g;
    if (lower && 2 * m < 7 * g - 21) return "exception family g = 9 mod 12, u = 8";
  }
  if ((pmod(g, 6) == 1 || pmod(g, 6) == 5) && g >= 37) {
    if (u == 9) return "exception family g = 1, 5 mod 6, u = 9";
    if (one_of(u, {12, 24, 15, 27, 39, 51, 21, 33}) && m > 0 && m < g) {
      return "exception family g = 1, 5 mod 6, u = " + num(u) + ", 0 < m < g";
    }
    if (u == 24 && !divisible_by_exception_set_p(g)) {
      const bool lower = (pmod(g, 30) == 1 || pmod(g, 30) == 11) ? 5 * m > 56 * g - 6 : m > 10 * g;
      if (lower && 2 * m < 23 * g - 3) return "exception family g = 1, 5 mod 6, u = 24, large m";
    }
  }
  if ((pmod(g, 6) == 2 || pmod(g, 6) == 4) && g >= 14 && g != 16) {
    if (u == 6 || u == 9) return "exception family g = 2, 4 mod 6, u = " + num(u);
    if (one_of(u, {12, 15, 18, 21, 27}) && m > 0 && m < g) {
      return "exception family g = 2, 4 mod 6, u = " + num(u) + ", 0 < m < g";
    }
  }
  return {};
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Exists: return "Exists";
    case Verdict::NotExists: return "NotExists";
    case Verdict::NecessaryFail: return "NecessaryFail";
    case Verdict::OpenException: return "OpenException";
  }
  return "?";
}

bool necessary_gu(std::int64_t g, std::int64_t u) { return all_hold(gu_congruences(g, u)); }

bool necessary_gum(std::int64_t g, std::int64_t u, std::int64_t m) { return all_hold(gum_congruences(g, u, m)); }

bool necessary_gum_even_form(std::int64_t g, std::int64_t u, std::int64_t m) {
  return u >= 4 && pmod(u, 3) == 0 && pmod(m - g, 3) == 0 && 2 * m <= g * (u - 1);
}

bool in_exception_set_p(std::int64_t n) {
  if (n >= 5 && pmod(n, 4) == 1) return true;
  return std::find(kSmallPrimes.begin(), kSmallPrimes.end(), n) != kSmallPrimes.end();
}

bool divisible_by_exception_set_p(std::int64_t n) {
  for (std::int64_t d = 3; d <= n; ++d) {
    if (n % d == 0 && in_exception_set_p(d)) return true;
  }
  return false;
}

bool resolved_order(std::int64_t g) {
  if (g < 1) return false;
  std::int64_t odd = g;
  int t = 0;
  while (odd % 2 == 0) {
    odd /= 2;
    ++t;
  }
  if (std::find(kResolvedBases.begin(), kResolvedBases.end(), odd) != kResolvedBases.end()) return true;
  if (t < 1) return false;
  for (auto q : kResolvedPowerBases) {
    std::int64_t x = odd;
    int s = 0;
    while (x % q == 0) {
      x /= q;
      ++s;
    }
    if (x == 1 && s >= 1) return true;
  }
  return false;
}

const std::vector<Triple>& residual_cases() {
  static const std::vector<Triple> cases{
      {56, 9, 206}, {56, 9, 209}, {56, 9, 215}, {56, 9, 218}, {56, 9, 221},  //
      {80, 9, 299}, {80, 9, 311}, {80, 9, 317},                              //
      {112, 9, 433}, {112, 9, 439}, {112, 9, 445},
  };
  return cases;
}

ExistenceStatus status_gu(std::int64_t g, std::int64_t u) {
  ExistenceStatus s;
  s.congruences = gu_congruences(g, u);
  if (!all_hold(s.congruences)) {
    s.verdict = Verdict::NecessaryFail;
    s.basis = "necessary condition fails: " + first_failure(s.congruences);
  } else if ((g == 2 || g == 6) && u == 4) {
    s.verdict = Verdict::NotExists;
    s.basis = "no 4-GDD of type " + num(g) + "^4";
  } else {
    s.verdict = Verdict::Exists;
    s.basis = "necessary conditions are sufficient for uniform type g^u";
  }
  return s;
}

ExistenceStatus status_gum(std::int64_t g, std::int64_t u, std::int64_t m, const StatusOptions& options) {
  if (m == 0) {
    auto s = status_gu(g, u);
    s.basis = "m = 0 reduces to type g^u; " + s.basis;
    return s;
  }
  if (m == g) {
    auto s = status_gu(g, u + 1);
    s.basis = "m = g reduces to type g^(u+1); " + s.basis;
    return s;
  }
  ExistenceStatus s;
  s.congruences = gum_congruences(g, u, m);
  if (!all_hold(s.congruences)) {
    s.verdict = Verdict::NecessaryFail;
    s.basis = "necessary condition fails: " + first_failure(s.congruences);
    return s;
  }
  if (g == 2 && u == 6 && m == 5) {
    s.verdict = Verdict::NotExists;
    s.basis = "no 4-GDD of type 2^6 5^1";
    return s;
  }
  const auto family = exception_family(g, u, m);
  if (family.empty()) {
    s.verdict = Verdict::Exists;
    s.basis = "necessary conditions are sufficient outside the exception families";
    return s;
  }
  const auto& residual = residual_cases();
  const bool is_residual = std::find(residual.begin(), residual.end(), Triple{g, u, m}) != residual.end();
  if (resolved_order(g) && !is_residual) {
    s.verdict = Verdict::Exists;
    s.basis = family + ", resolved for g = " + num(g);
    return s;
  }
  if (options.verified && options.verified->count(Triple{g, u, m})) {
    s.verdict = Verdict::Exists;
    s.basis = family + ", upgraded by a verified catalog design";
    return s;
  }
  s.verdict = Verdict::OpenException;
  s.basis = is_residual ? family + ", residual undecided case" : family;
  return s;
}

}  // namespace gdd
