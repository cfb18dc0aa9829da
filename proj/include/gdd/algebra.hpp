#pragma once

#include <cstdint>
#include <vector>

#include "gdd/design.hpp"

namespace gdd {

// GF(p^n) on the labels 0..q-1. Label t encodes the polynomial whose
// coefficient of x^i is the i-th base-p digit of t, so labels below p form the
// prime subfield, 0 is zero and 1 is one.
class FiniteField {
 public:
  int order() const noexcept { return q_; }
  int characteristic() const noexcept { return p_; }
  int degree() const noexcept { return n_; }
  // Coefficients c_0..c_n of the monic modulus (c_n = 1). Degree 1 gives x.
  const std::vector<int>& modulus() const noexcept { return modulus_; }
  int primitive_element() const noexcept { return primitive_; }

  int add(int a, int b) const { return add_[index(a, b)]; }
  int mul(int a, int b) const { return mul_[index(a, b)]; }
  int neg(int a) const { return neg_[static_cast<std::size_t>(a)]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  // Throws BadParameter for a = 0.
  int inv(int a) const;

  friend FiniteField make_field(int q);

 private:
  std::size_t index(int a, int b) const noexcept {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(q_) + static_cast<std::size_t>(b);
  }

  int q_ = 0, p_ = 0, n_ = 0, primitive_ = 0;
  std::vector<int> modulus_;
  std::vector<int> add_, mul_, neg_, inv_;
};

// Returns {p, n} with q = p^n, or {0, 0} when q is not a prime power.
std::pair<int, int> prime_power_decomposition(std::int64_t q);
bool is_prime_power(std::int64_t q);

// Throws NotPrimePower. The modulus is the lexicographically least monic
// irreducible polynomial of degree n (comparing c_{n-1}, ..., c_0).
FiniteField make_field(int q);

using LatinSquare = std::vector<std::vector<int>>;

struct LatinSquareSet {
  int side = 0;
  std::vector<LatinSquare> squares;
  // Set when fewer than two squares exist (q = 2), so orthogonality is vacuous.
  bool degenerate = false;
};

bool is_latin(const LatinSquare& square);
bool are_orthogonal(const LatinSquare& a, const LatinSquare& b);

// The q-1 squares L_a(x, y) = a*x + y for nonzero a.
LatinSquareSet mols(int q);

// Transversal design with `groups` groups of size q and q^2 blocks of size
// `groups`; point g*q + x is element x of group g. Requires 3 <= groups <= q+1
// (TooManyGroups otherwise).
Design transversal_design(int groups, int q);

// Resolvable transversal design with `groups` groups of size q (2 <= groups <= q),
// q parallel classes of q blocks each.
Design rgdd(int groups, int q);

}  // namespace gdd
