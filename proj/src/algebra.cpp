#include "gdd/algebra.hpp"

#include <numeric>
#include <set>

#include "gdd/error.hpp"
#include "gdd/verify.hpp"

namespace gdd {

namespace {

constexpr int kMaxOrder = 4096;

using Poly = std::vector<int>;  // coefficients, low degree first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo the monic polynomial m over GF(p).
Poly poly_mod(Poly a, const Poly& m, int p) {
  trim(a);
  const auto dm = m.size() - 1;
  while (a.size() > dm) {
    const int lead = a.back();
    const auto shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = ((a[shift + i] - lead * m[i]) % p + p) % p;
    }
    trim(a);
  }
  return a;
}

Poly monic_from_label(int label, int degree, int p) {
  Poly f(static_cast<std::size_t>(degree) + 1, 0);
  for (int i = 0; i < degree; ++i) {
    f[static_cast<std::size_t>(i)] = label % p;
    label /= p;
  }
  f[static_cast<std::size_t>(degree)] = 1;
  return f;
}

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

bool irreducible(const Poly& f, int p) {
  const int n = static_cast<int>(f.size()) - 1;
  for (int d = 1; d <= n / 2; ++d) {
    for (int label = 0; label < ipow(p, d); ++label) {
      if (poly_mod(f, monic_from_label(label, d, p), p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

std::pair<int, int> prime_power_decomposition(std::int64_t q) {
  if (q < 2) return {0, 0};
  std::int64_t p = 2;
  while (p * p <= q && q % p != 0) ++p;
  if (q % p != 0) p = q;
  int n = 0;
  while (q % p == 0) {
    q /= p;
    ++n;
  }
  if (q != 1) return {0, 0};
  return {static_cast<int>(p), n};
}

bool is_prime_power(std::int64_t q) { return prime_power_decomposition(q).first != 0; }

int FiniteField::inv(int a) const {
  if (a == 0) fail(ErrorKind::BadParameter, "zero has no inverse");
  return inv_[static_cast<std::size_t>(a)];
}

FiniteField make_field(int q) {
  const auto [p, n] = prime_power_decomposition(q);
  if (p == 0) fail(ErrorKind::NotPrimePower, std::to_string(q) + " is not a prime power");
  if (q > kMaxOrder) fail(ErrorKind::BadParameter, "field order " + std::to_string(q) + " is too large");

  FiniteField f;
  f.q_ = q;
  f.p_ = p;
  f.n_ = n;
  if (n == 1) {
    f.modulus_ = {0, 1};
  } else {
    for (int label = 0;; ++label) {
      auto cand = monic_from_label(label, n, p);
      if (irreducible(cand, p)) {
        f.modulus_ = std::move(cand);
        break;
      }
    }
  }

  const auto qs = static_cast<std::size_t>(q);
  std::vector<Poly> poly(qs);
  for (int t = 0; t < q; ++t) {
    Poly a(static_cast<std::size_t>(n));
    int x = t;
    for (int i = 0; i < n; ++i) {
      a[static_cast<std::size_t>(i)] = x % p;
      x /= p;
    }
    poly[static_cast<std::size_t>(t)] = std::move(a);
  }
  auto label_of = [&](const Poly& a) {
    int t = 0;
    for (std::size_t i = a.size(); i-- > 0;) t = t * p + a[i];
    return t;
  };

  f.add_.assign(qs * qs, 0);
  f.mul_.assign(qs * qs, 0);
  f.neg_.assign(qs, 0);
  f.inv_.assign(qs, 0);
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      const auto& pa = poly[static_cast<std::size_t>(a)];
      const auto& pb = poly[static_cast<std::size_t>(b)];
      Poly s(static_cast<std::size_t>(n));
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = (pa[i] + pb[i]) % p;
      f.add_[f.index(a, b)] = label_of(s);
      if (n == 1) {
        f.mul_[f.index(a, b)] = static_cast<int>((static_cast<std::int64_t>(a) * b) % p);
      } else {
        Poly prod(2 * static_cast<std::size_t>(n), 0);
        for (std::size_t i = 0; i < pa.size(); ++i) {
          for (std::size_t k = 0; k < pb.size(); ++k) prod[i + k] = (prod[i + k] + pa[i] * pb[k]) % p;
        }
        prod = poly_mod(std::move(prod), f.modulus_, p);
        prod.resize(static_cast<std::size_t>(n), 0);
        f.mul_[f.index(a, b)] = label_of(prod);
      }
    }
  }
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      if (f.add(a, b) == 0) f.neg_[static_cast<std::size_t>(a)] = b;
      if (f.mul(a, b) == 1) f.inv_[static_cast<std::size_t>(a)] = b;
    }
    if (a != 0 && f.mul(a, f.inv_[static_cast<std::size_t>(a)]) != 1) {
      fail(ErrorKind::InternalError, "GF(" + std::to_string(q) + ") construction produced a zero divisor");
    }
  }
  for (int g = 1; g < q; ++g) {
    int x = 1, order = 0;
    do {
      x = f.mul(x, g);
      ++order;
    } while (x != 1);
    if (order == q - 1) {
      f.primitive_ = g;
      break;
    }
  }
  return f;
}

bool is_latin(const LatinSquare& square) {
  const auto n = square.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (square[i].size() != n) return false;
    std::vector<bool> row(n), col(n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto r = static_cast<std::size_t>(square[i][j]);
      const auto c = static_cast<std::size_t>(square[j][i]);
      if (r >= n || c >= n || row[r] || col[c]) return false;
      row[r] = col[c] = true;
    }
  }
  return true;
}

bool are_orthogonal(const LatinSquare& a, const LatinSquare& b) {
  const auto n = a.size();
  if (b.size() != n) return false;
  std::vector<bool> seen(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto key = static_cast<std::size_t>(a[i][j]) * n + static_cast<std::size_t>(b[i][j]);
      if (key >= n * n || seen[key]) return false;
      seen[key] = true;
    }
  }
  return true;
}

LatinSquareSet mols(int q) {
  const FiniteField f = make_field(q);
  LatinSquareSet set;
  set.side = q;
  for (int a = 1; a < q; ++a) {
    LatinSquare sq(static_cast<std::size_t>(q), std::vector<int>(static_cast<std::size_t>(q)));
    for (int x = 0; x < q; ++x) {
      for (int y = 0; y < q; ++y) sq[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = f.add(f.mul(a, x), y);
    }
    set.squares.push_back(std::move(sq));
  }
  set.degenerate = set.squares.size() < 2;
  return set;
}

namespace {

std::vector<PointSet> uniform_groups(int groups, int q) {
  std::vector<PointSet> out(static_cast<std::size_t>(groups));
  for (int g = 0; g < groups; ++g) {
    for (int x = 0; x < q; ++x) out[static_cast<std::size_t>(g)].push_back(g * q + x);
  }
  return out;
}

void require_ok(const VerificationReport& r, const std::string& what) {
  if (!r.ok) {
    fail(ErrorKind::InternalError, what + " failed verification" +
                                       (r.failures.empty() ? std::string() : ": " + describe(r.failures.front())));
  }
}

}  // namespace

Design transversal_design(int groups, int q) {
  const FiniteField f = make_field(q);
  if (groups < 3 || groups > q + 1) {
    fail(ErrorKind::TooManyGroups, "TD(" + std::to_string(groups) + "," + std::to_string(q) +
                                       ") needs 3 <= groups <= q+1 = " + std::to_string(q + 1));
  }
  Design d(groups * q, uniform_groups(groups, q), groups);
  d.reserve_blocks(static_cast<std::size_t>(q) * static_cast<std::size_t>(q));
  std::vector<Point> block(static_cast<std::size_t>(groups));
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      for (int g = 0; g + 1 < groups; ++g) block[static_cast<std::size_t>(g)] = g * q + f.add(f.mul(a, g), b);
      block[static_cast<std::size_t>(groups - 1)] = (groups - 1) * q + a;
      d.add_block(block);
    }
  }
  require_ok(verify_gdd(d), "transversal design");
  return d;
}

Design rgdd(int groups, int q) {
  const FiniteField f = make_field(q);
  if (groups < 2 || groups > q) {
    fail(ErrorKind::TooManyGroups, "resolvable TD(" + std::to_string(groups) + "," + std::to_string(q) +
                                       ") needs 2 <= groups <= q = " + std::to_string(q));
  }
  // Multipliers: field labels other than 1 in increasing order, then infinity.
  constexpr int kInfinity = -1;
  std::vector<int> alphas;
  for (int t = 0; t < q && static_cast<int>(alphas.size()) < groups; ++t) {
    if (t != 1) alphas.push_back(t);
  }
  if (static_cast<int>(alphas.size()) < groups) alphas.push_back(kInfinity);

  Design d(groups * q, uniform_groups(groups, q), groups);
  d.reserve_blocks(static_cast<std::size_t>(q) * static_cast<std::size_t>(q));
  std::vector<std::vector<std::size_t>> classes(static_cast<std::size_t>(q));
  std::vector<Point> block(static_cast<std::size_t>(groups));
  for (int c = 0; c < q; ++c) {
    for (int y = 0; y < q; ++y) {
      const int x = f.sub(c, y);
      for (int g = 0; g < groups; ++g) {
        const int alpha = alphas[static_cast<std::size_t>(g)];
        const int value = alpha == kInfinity ? y : f.add(x, f.mul(alpha, y));
        block[static_cast<std::size_t>(g)] = g * q + value;
      }
      classes[static_cast<std::size_t>(c)].push_back(d.num_blocks());
      d.add_block(block);
    }
  }
  d.resolution = std::move(classes);
  require_ok(verify_gdd(d), "resolvable design");
  require_ok(verify_resolution(d), "resolution");
  return d;
}

}  // namespace gdd
