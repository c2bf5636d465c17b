#pragma once
// Exact integer / rational number theory and S-integer structures.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "klver/complex_approx.hpp"

namespace klver {

using Int = mpz_class;
using Rat = mpq_class;

inline long ilong(const Int& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("ilong: value out of long range");
  return z.get_si();
}

// ---------------------------------------------------------------------------
// small modular helpers (64-bit)

inline std::int64_t mod_reduce(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline std::int64_t mulmod_u64(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>(
      static_cast<__int128>(a) * static_cast<__int128>(b) % m);
}

inline std::int64_t powmod_u64(std::int64_t a, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  a = mod_reduce(a, m);
  while (e > 0) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

// extended Euclid; requires gcd(a,m)=1
inline std::int64_t invmod_u64(std::int64_t a, std::int64_t m) {
  std::int64_t t = 0, nt = 1, r = m, nr = mod_reduce(a, m);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (r != 1) throw std::domain_error("invmod: arguments not coprime");
  return mod_reduce(t, m);
}

inline bool is_prime_u64(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  // deterministic Miller-Rabin for 64-bit range
  std::int64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (std::int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::int64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Kronecker symbol, full classical extension: n may be 0, negative or even.

inline int kronecker_symbol(Int a, Int n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;  // (a/-1) = sign(a)
  }
  if (n % 2 == 0) {
    if (a % 2 == 0) return 0;
    long v = 0;
    while (n % 2 == 0) { n /= 2; ++v; }
    long am8 = mpz_class(a % 8).get_si();
    if (am8 < 0) am8 += 8;
    if ((v & 1) && (am8 == 3 || am8 == 5)) result = -result;  // (a/2) = (2/a)
  }
  // now n odd positive: Jacobi via reciprocity
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    long v = 0;
    while (a % 2 == 0) { a /= 2; ++v; }
    long nm8 = mpz_class(n % 8).get_si();
    if ((v & 1) && (nm8 == 3 || nm8 == 5)) result = -result;
    long am4 = mpz_class(a % 4).get_si();
    long nm4 = mpz_class(n % 4).get_si();
    if (am4 == 3 && nm4 == 3) result = -result;
    std::swap(a, n);
    a %= n;
  }
  return n == 1 ? result : 0;
}

inline int kronecker_symbol(std::int64_t a, std::int64_t n) {
  return kronecker_symbol(Int(static_cast<long>(a)), Int(static_cast<long>(n)));
}

// ---------------------------------------------------------------------------
// factorization (trial division; desk scale)

inline std::vector<std::pair<Int, int>> factorize(Int n) {
  if (n < 0) n = -n;
  if (n == 0) throw std::domain_error("factorize: zero");
  std::vector<std::pair<Int, int>> fac;
  auto strip = [&](const Int& p) {
    int e = 0;
    while (n % p == 0) { n /= p; ++e; }
    if (e) fac.emplace_back(p, e);
  };
  strip(2);
  strip(3);
  for (Int p = 5; p * p <= n;) {
    strip(p);
    p += 2;
    if (p * p > n) break;
    strip(p);
    p += 4;
  }
  if (n > 1) fac.emplace_back(n, 1);
  return fac;
}

struct MultiplicativeSuite {
  int mobius = 1;
  Int euler_phi = 1;
  Int divisor_count = 1;
  Int divisor_sum = 1;
  Int radical = 1;
  std::optional<Int> von_mangoldt_base;  // p when n = p^k, else absent
};

inline MultiplicativeSuite multiplicative_suite(const Int& n) {
  if (n <= 0) throw std::domain_error("multiplicative_suite: n must be >= 1");
  MultiplicativeSuite r;
  auto fac = factorize(n);
  for (auto& [p, e] : fac) {
    r.mobius = (e > 1) ? 0 : -r.mobius;
    Int pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    r.euler_phi *= pe - pe / p;
    r.divisor_count *= e + 1;
    r.divisor_sum *= (pe * p - 1) / (p - 1);
    r.radical *= p;
  }
  if (fac.size() == 1) r.von_mangoldt_base = fac[0].first;
  if (n == 1) r.mobius = 1;
  return r;
}

inline std::vector<Int> divisors(const Int& n) {
  auto fac = factorize(n);
  std::vector<Int> divs{1};
  for (auto& [p, e] : fac) {
    size_t sz = divs.size();
    Int pe = 1;
    for (int i = 0; i < e; ++i) {
      pe *= p;
      for (size_t j = 0; j < sz; ++j) divs.push_back(divs[j] * pe);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

// ---------------------------------------------------------------------------
// valuations

inline long valuation(const Int& ell, Int x) {
  if (x == 0) throw std::domain_error("valuation: v_ell(0) is +infinity");
  long v = 0;
  while (x % ell == 0) { x /= ell; ++v; }
  return v;
}

inline long valuation(const Int& ell, const Rat& x) {
  if (x == 0) throw std::domain_error("valuation: v_ell(0) is +infinity");
  return valuation(ell, Int(x.get_num())) - valuation(ell, Int(x.get_den()));
}

// |x|_ell as exact rational
inline Rat padic_norm(const Int& ell, const Rat& x) {
  long v = valuation(ell, x);
  Rat r(1);
  Int pe = 1;
  for (long i = 0; i < std::labs(v); ++i) pe *= ell;
  if (v >= 0) r = Rat(1, pe); else r = Rat(pe, 1);
  return r;
}

// Modified norm |.|'_ell. For odd ell: ell^{-2*floor(v/2)}; for ell=2 the
// three-case split on v mod 2 and the unit part mod 4. Satisfies
// |a^2 y|' = |a| * |y|' exactly.
inline Rat modified_norm(const Int& ell, const Rat& y) {
  if (y == 0) throw std::domain_error("modified_norm: y = 0");
  long v = valuation(ell, y);
  long e;  // |y|' = ell^{-e}
  if (ell != 2) {
    // 2*floor(v/2), exact for negative v
    e = (v >= 0 || v % 2 == 0) ? 2 * (v / 2) : 2 * ((v - 1) / 2);
  } else {
    if (v % 2 == 0) {
      // unit part y0 = y * 2^{-v}; its class mod 4 decides
      Rat y0 = y;
      long av = std::labs(v);
      Int pw = 1;
      for (long i = 0; i < av; ++i) pw *= 2;
      if (v >= 0) y0 /= Rat(pw); else y0 *= Rat(pw);
      // y0 is a 2-adic unit rational; its value mod 4 = num * inv(den) mod 4
      Int num = y0.get_num(), den = y0.get_den();
      long n4 = mpz_class(num % 4).get_si(); if (n4 < 0) n4 += 4;
      long d4 = mpz_class(den % 4).get_si(); if (d4 < 0) d4 += 4;
      long y04 = (n4 * ((d4 == 1) ? 1 : 3)) % 4;  // inverse of 1,3 mod 4 is itself
      e = (y04 == 1) ? v : v - 2;
    } else {
      e = v - 3;
    }
  }
  Rat r;
  Int pe = 1;
  for (long i = 0; i < std::labs(e); ++i) pe *= ell;
  if (e >= 0) r = Rat(1, pe); else r = Rat(pe, 1);
  return r;
}

// Sign functions on discriminants. At infinity: 0 iff x > 0.
inline int omega_sign_inf(const Rat& x) {
  if (x == 0) throw std::domain_error("omega_sign_inf: x = 0");
  return x > 0 ? 0 : 1;
}

// At a finite prime: Kronecker symbol of y*|y|'_ell mod ell.
inline int omega_sign(const Int& ell, const Rat& y) {
  if (y == 0) throw std::domain_error("omega_sign: y = 0");
  Rat z = y * modified_norm(ell, y);
  // z is an ell-integral rational; symbol is of z * den(z)^2 which has the
  // same class, so clear the denominator with a square
  Int num = z.get_num(), den = z.get_den();
  return kronecker_symbol(num * den, ell);
}

// ---------------------------------------------------------------------------
// SSet: S = {oo, q_1 < ... < q_r}, with 2 in S always.

struct SSet {
  std::vector<long> primes;

  explicit SSet(std::vector<long> qs) : primes(std::move(qs)) {
    if (primes.empty()) throw std::invalid_argument("SSet: need at least one prime");
    for (size_t i = 0; i < primes.size(); ++i) {
      if (!is_prime_u64(primes[i])) throw std::invalid_argument("SSet: non-prime entry");
      if (i && primes[i] <= primes[i - 1])
        throw std::invalid_argument("SSet: entries must be strictly increasing");
    }
    if (primes[0] != 2) throw std::invalid_argument("SSet: 2 must belong to S");
  }

  size_t r() const { return primes.size(); }
  bool contains(const Int& p) const {
    for (long q : primes) if (p == q) return true;
    return false;
  }
  bool coprime(Int n) const {
    if (n == 0) return false;
    for (long q : primes) if (n % q == 0) return false;
    return true;
  }
  // prod (1 - 1/q_i) as exact rational
  Rat density() const {
    Rat d(1);
    for (long q : primes) d *= Rat(q - 1, q);
    return d;
  }
};

// ---------------------------------------------------------------------------
// FactoredSInteger: sign * core * prod q_i^{nu_i}, core > 0 coprime to S.
// Canonical zero: sign = 0, core = 1, nu = 0.

struct FactoredSInteger {
  int sign = 0;
  std::vector<long> nu;  // one exponent per S-prime, may be negative
  Int core = 1;

  FactoredSInteger() = default;

  static FactoredSInteger zero(const SSet& S) {
    FactoredSInteger f;
    f.nu.assign(S.r(), 0);
    return f;
  }

  static FactoredSInteger from_rat(const SSet& S, const Rat& x) {
    FactoredSInteger f;
    f.nu.assign(S.r(), 0);
    if (x == 0) return f;
    f.sign = (x > 0) ? 1 : -1;
    Int num = abs(Int(x.get_num())), den = Int(x.get_den());
    for (size_t i = 0; i < S.r(); ++i) {
      Int q = S.primes[i];
      while (num % q == 0) { num /= q; ++f.nu[i]; }
      while (den % q == 0) { den /= q; --f.nu[i]; }
    }
    if (den != 1)
      throw std::domain_error("FactoredSInteger: denominator not supported on S");
    f.core = num;
    return f;
  }

  static FactoredSInteger from_int(const SSet& S, const Int& n) {
    return from_rat(S, Rat(n));
  }

  Rat value(const SSet& S) const {
    if (sign == 0) return Rat(0);
    Rat v(core);
    for (size_t i = 0; i < S.r(); ++i) {
      Int q = S.primes[i];
      Int pw = 1;
      for (long j = 0; j < std::labs(nu[i]); ++j) pw *= q;
      if (nu[i] >= 0) v *= Rat(pw); else v /= Rat(pw);
    }
    if (sign < 0) v = -v;
    return v;
  }

  bool is_zero() const { return sign == 0; }

  // positive prime-to-S part (|x|^{(q)} in the s-integer decomposition)
  Int prime_to_S_part() const { return core; }

  bool operator==(const FactoredSInteger& o) const {
    return sign == o.sign && nu == o.nu && core == o.core;
  }
};

// ---------------------------------------------------------------------------
// Semilocal additive character e(x) * prod_{q in S} e_q(x).
// Equals e(theta) where theta is the prime-to-S fractional part of x.

inline ComplexApprox semilocal_char(const SSet& S, const Rat& x) {
  Rat xr = x;
  xr.canonicalize();
  Int num = xr.get_num(), den = xr.get_den();
  // den = d_S * d', d' coprime to S; only d' contributes
  Int dS = 1, dp = den;
  for (long q : S.primes) {
    while (dp % q == 0) { dp /= q; dS *= q; }
  }
  if (dp == 1) return ComplexApprox{{1.0, 0.0}, 1e-15};
  // theta = num * dS^{-1} mod dp, over dp
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), dS.get_mpz_t(), dp.get_mpz_t()) == 0)
    throw std::logic_error("semilocal_char: inversion failed");
  Int a = ((num % dp) * inv) % dp;
  if (a < 0) a += dp;
  double frac = a.get_d() / dp.get_d();
  double ang = 2.0 * M_PI * frac;
  double budget = 1e-12 * static_cast<double>(S.r() + 1);
  return ComplexApprox{{std::cos(ang), std::sin(ang)}, budget};
}

// ---------------------------------------------------------------------------
// Height [[a * xi]] = (1 + |a xi|_oo) prod (1 + |xi|_{q_i}).

inline Rat height_exact(const Rat& a, const FactoredSInteger& xi, const SSet& S) {
  Rat xv = xi.value(S);
  Rat h = 1 + abs(a * xv);
  if (!xi.is_zero())
    for (size_t i = 0; i < S.r(); ++i) h *= 1 + padic_norm(S.primes[i], xv);
  return h;
}

inline double height(double a, const FactoredSInteger& xi, const SSet& S) {
  Rat xv = xi.value(S);
  double h = 1.0 + std::abs(a * xv.get_d());
  if (!xi.is_zero())
    for (size_t i = 0; i < S.r(); ++i)
      h *= 1.0 + padic_norm(S.primes[i], xv).get_d();
  return h;
}

}  // namespace klver
