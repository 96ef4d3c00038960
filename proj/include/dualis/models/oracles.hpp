#pragma once
// Independent oracles: Koszul cohomology of Z^n and the classical index,
// cusp and genus formulas for Gamma_0(N).

#include "dualis/linalg.hpp"

#include <bit>

namespace dualis {

/// dim H^m(Z^n; E) for m = 0..n from the Koszul complex E (x) Lambda^m Q^n
/// with differential sum_j (rho(t_j) - 1) (x) e_j.
inline std::vector<std::size_t> koszul_cohomology(const std::vector<Matrix>& translations) {
  const std::size_t n = translations.size();
  if (n == 0 || n > 8) throw std::invalid_argument("koszul_cohomology: need 1..8 operators");
  const std::size_t d = translations.front().rows();
  for (const auto& a : translations)
    for (const auto& b : translations)
      if (a * b != b * a) throw std::invalid_argument("koszul_cohomology: operators do not commute");
  std::vector<std::vector<unsigned>> by_size(n + 1);
  for (unsigned s = 0; s < (1u << n); ++s) by_size[static_cast<std::size_t>(std::popcount(s))].push_back(s);
  auto pos = [&](std::size_t size, unsigned s) {
    const auto& v = by_size[size];
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), s) - v.begin());
  };
  std::vector<Matrix> diffs;  // d_m : K^m -> K^{m+1}
  for (std::size_t m = 0; m < n; ++m) {
    Matrix dm(by_size[m + 1].size() * d, by_size[m].size() * d);
    for (unsigned s : by_size[m])
      for (std::size_t j = 0; j < n; ++j) {
        if (s & (1u << j)) continue;
        unsigned t = s | (1u << j);
        int sign = (std::popcount(s & ((1u << j) - 1)) % 2 == 0) ? 1 : -1;
        Matrix block = translations[j] - Matrix::identity(d);
        block *= Scalar(sign);
        dm.add_block(pos(m + 1, t) * d, pos(m, s) * d, block);
      }
    diffs.push_back(dm);
  }
  std::vector<std::size_t> dims;
  for (std::size_t m = 0; m <= n; ++m) {
    std::size_t cdim = by_size[m].size() * d;
    std::size_t rank_out = m < n ? rank(diffs[m]) : 0;
    std::size_t rank_in = m > 0 ? rank(diffs[m - 1]) : 0;
    dims.push_back(cdim - rank_out - rank_in);
  }
  return dims;
}

struct GenusData {
  long index = 1;
  long cusps = 1;
  long elliptic2 = 0;
  long elliptic3 = 0;
  long genus = 0;
};

namespace oracle_detail {

inline std::vector<long> prime_factors(long n) {
  std::vector<long> ps;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

inline long euler_phi(long n) {
  long r = n;
  for (long p : prime_factors(n)) r = r / p * (p - 1);
  return r;
}

/// Legendre/Kronecker symbol (a / p) for an odd prime p, and (a / 2) as used
/// by the elliptic point counts ((-1/2) = 0, (-3/2) = -1).
inline long legendre(long a, long p) {
  if (p == 2) {
    if (a % 2 == 0) return 0;
    long r = ((a % 8) + 8) % 8;
    return (r == 1 || r == 7) ? 1 : -1;
  }
  long x = ((a % p) + p) % p;
  if (x == 0) return 0;
  long acc = 1, base = x, e = (p - 1) / 2;
  while (e) {
    if (e & 1) acc = acc * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return acc == 1 ? 1 : -1;
}

inline long gcd(long a, long b) { return b == 0 ? a : gcd(b, a % b); }

}  // namespace oracle_detail

/// Classical formulas: index N prod(1 + 1/p), elliptic point counts, cusps
/// sum_{d | N} phi(gcd(d, N/d)), and g = 1 + mu/12 - nu2/4 - nu3/3 - c/2.
inline GenusData genus_oracle(long n) {
  using namespace oracle_detail;
  if (n < 1) throw std::invalid_argument("genus_oracle: level must be positive");
  GenusData g;
  auto ps = prime_factors(n);
  long index = n;
  for (long p : ps) index = index / p * (p + 1);
  g.index = index;
  g.elliptic2 = n % 4 == 0 ? 0 : 1;
  g.elliptic3 = n % 9 == 0 ? 0 : 1;
  for (long p : ps) {
    if (g.elliptic2) g.elliptic2 *= 1 + (p == 2 ? 0 : legendre(-1, p));
    if (g.elliptic3) g.elliptic3 *= 1 + (p == 3 ? 0 : legendre(-3, p));
  }
  g.cusps = 0;
  for (long d = 1; d <= n; ++d)
    if (n % d == 0) g.cusps += euler_phi(gcd(d, n / d));
  // 12 g = 12 + mu - 3 nu2 - 4 nu3 - 6 c
  long twelve_g = 12 + g.index - 3 * g.elliptic2 - 4 * g.elliptic3 - 6 * g.cusps;
  if (twelve_g % 12 != 0) throw InvariantError("genus formula produced a non-integer");
  g.genus = twelve_g / 12;
  return g;
}

/// dim S_k(Gamma_0(N)) for even k >= 2 from the genus data.
inline long cusp_form_dimension(long n, long k) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("cusp_form_dimension: weight must be even and >= 2");
  GenusData g = genus_oracle(n);
  if (k == 2) return g.genus;
  return (k - 1) * (g.genus - 1) + (k / 2 - 1) * g.cusps + g.elliptic2 * (k / 4) + g.elliptic3 * (k / 3);
}

/// #E(F_p) for y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 by brute force
/// (including the point at infinity).
inline long count_points(long a1, long a2, long a3, long a4, long a6, long p) {
  auto mod = [p](long x) { return ((x % p) + p) % p; };
  long count = 1;
  for (long x = 0; x < p; ++x)
    for (long y = 0; y < p; ++y)
      if (mod(y * y + a1 * x * y + a3 * y - (x * x * x + a2 * x * x + a4 * x + a6)) == 0) ++count;
  return count;
}

}  // namespace dualis
