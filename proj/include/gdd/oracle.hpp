#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace gdd {

enum class Verdict { Exists, NotExists, NecessaryFail, OpenException };

std::string_view to_string(Verdict v);

struct Congruence {
  std::string expression;
  bool holds = false;
};

struct ExistenceStatus {
  Verdict verdict = Verdict::Exists;
  std::string basis;
  std::vector<Congruence> congruences;
};

using Triple = std::tuple<std::int64_t, std::int64_t, std::int64_t>;

struct StatusOptions {
  // (g, u, m) triples with a verified design on disk. An OpenException at one
  // of these points is reported as Exists.
  const std::set<Triple>* verified = nullptr;
};

bool necessary_gu(std::int64_t g, std::int64_t u);
bool necessary_gum(std::int64_t g, std::int64_t u, std::int64_t m);

// u = 0 (mod 3), m = g (mod 3), m <= g(u-1)/2 and u >= 4: the form the
// conditions take when g = 2, 4 (mod 6).
bool necessary_gum_even_form(std::int64_t g, std::int64_t u, std::int64_t m);

ExistenceStatus status_gu(std::int64_t g, std::int64_t u);
ExistenceStatus status_gum(std::int64_t g, std::int64_t u, std::int64_t m, const StatusOptions& options = {});

// Membership in the set {n = 1 (mod 4), n >= 5} together with the small primes
// 3, 5, ..., 43 listed with it.
bool in_exception_set_p(std::int64_t n);
// True when some member of that set divides n.
bool divisible_by_exception_set_p(std::int64_t n);

// True for g = 2^t q with q in {1,5,7,11,13,17,19,23,25,29,31}, or
// g = 2^t q^s with q in {19,23,25,29,31} and s, t >= 1.
bool resolved_order(std::int64_t g);

// Points left undecided even though their g is a resolved order.
const std::vector<Triple>& residual_cases();

}  // namespace gdd
