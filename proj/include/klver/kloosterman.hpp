#pragma once
// Partial, local and transformed generalized Kloosterman sums: brute-force
// definitions, closed-form evaluations, CRT factorization, coefficient bound.

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "klver/arith.hpp"
#include "klver/complex_approx.hpp"

namespace klver {

using std::int64_t;

struct LocalKlParams {
  long ell;
  int u;
  int v;
  int cap = 8;

  LocalKlParams(long l, int uu, int vv, int c = 8) : ell(l), u(uu), v(vv), cap(c) {
    if (l < 3 || !is_prime_u64(l) || l % 2 == 0)
      throw std::invalid_argument("LocalKlParams: ell must be an odd prime >= 3");
    if (u < 0 || v < 0) throw std::invalid_argument("LocalKlParams: u, v >= 0");
    if (u + 2 * v > cap) throw std::domain_error("LocalKlParams: modulus cap exceeded");
  }

  int64_t modulus() const {
    int64_t m = 1;
    for (int i = 0; i < u + 2 * v; ++i) m *= ell;
    return m;
  }
};

namespace detail {

// Legendre symbol table mod ell via Euler's criterion
inline std::vector<int> legendre_table(long ell) {
  std::vector<int> t(static_cast<size_t>(ell), 0);
  for (long x = 1; x < ell; ++x)
    t[static_cast<size_t>(x)] = (powmod_u64(x, (ell - 1) / 2, ell) == 1) ? 1 : -1;
  return t;
}

// (s / ell^u) for s mod ell^u
inline int symbol_pow(const std::vector<int>& leg, long ell, int u, int64_t s) {
  if (u == 0) return 1;
  long r = static_cast<long>(mod_reduce(s, ell));
  if (r == 0) return 0;
  return (u % 2 == 0) ? 1 : leg[static_cast<size_t>(r)];
}

inline std::vector<std::complex<double>> root_table(int64_t M) {
  std::vector<std::complex<double>> e(static_cast<size_t>(M));
  for (int64_t j = 0; j < M; ++j) {
    double ang = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(M);
    e[static_cast<size_t>(j)] = {std::cos(ang), std::sin(ang)};
  }
  return e;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Local sums, literal definitions.
//
//   Kl_{l^u,l^v}(xi, m) = sum_{a mod l^{u+2v}, a^2-4m = 0 (l^{2v})}
//                           ((a^2-4m)/l^{2v} | l^u) e(a xi / l^{u+2v})
//   Klhat(xi, alpha)    = sum_{m mod l^{u+2v}} Kl(xi, m) e(m alpha / l^{u+2v})

inline ComplexApprox local_kl_bruteforce(const LocalKlParams& p, int64_t xi, int64_t m) {
  int64_t M = p.modulus();
  int64_t l2v = 1;
  for (int i = 0; i < 2 * p.v; ++i) l2v *= p.ell;
  auto leg = detail::legendre_table(p.ell);
  auto roots = detail::root_table(M);
  int64_t xr = mod_reduce(xi, M), mr = mod_reduce(m, M);
  std::complex<double> sum = 0.0;
  int64_t terms = 0;
  for (int64_t a = 0; a < M; ++a) {
    int64_t d = mod_reduce(a * a - 4 * mr, M);
    if (d % l2v != 0) continue;
    int64_t s = d / l2v;  // well defined mod l^u
    int sym = detail::symbol_pow(leg, p.ell, p.u, s);
    if (sym == 0) continue;
    sum += static_cast<double>(sym) * roots[static_cast<size_t>(mulmod_u64(a, xr, M))];
    ++terms;
  }
  return {sum, static_cast<double>(std::max<int64_t>(terms, 1)) * 1e-14};
}

inline ComplexApprox local_klhat_bruteforce(const LocalKlParams& p, int64_t xi,
                                            int64_t alpha) {
  int64_t M = p.modulus();
  if (M > 30000) throw std::domain_error("local_klhat_bruteforce: modulus cap exceeded");
  auto roots = detail::root_table(M);
  int64_t ar = mod_reduce(alpha, M);
  std::complex<double> sum = 0.0;
  double errbud = 0.0;
  for (int64_t m = 0; m < M; ++m) {
    ComplexApprox kl = local_kl_bruteforce(p, xi, m);
    sum += kl.v * roots[static_cast<size_t>(mulmod_u64(m, ar, M))];
    errbud += kl.err + 1e-14;
  }
  return {sum, errbud};
}

// ---------------------------------------------------------------------------
// Closed form. Core evaluation from the local data
//   (ell, u, v, v_alpha, alpha0 mod ell^{u+2v}, v_xi_eff, xi0 mod ell^{u+2v})
// where alpha0, xi0 are the unit parts. v_alpha < 0 encodes alpha = 0;
// v_xi_eff is capped at u+2v (xi enters mod ell^{u+2v} only).
//
// For u odd the two Gauss factors of the sum combine to the real value
// ell^{2u+v-1}: the kappa factors and the alpha-symbols cancel exactly
// (kappa(l)^3 kappa(l^{2v+1}) = 1 and (a|l)(-a|l) = (-1|l) = kappa(l)^2).

struct LocalClosed {
  std::complex<double> c;      // the c-coefficient (0 if unsupported)
  std::complex<double> phase;  // e_l(xi^2 / (alpha l^{u+2v})), 1 when absent
  std::complex<double> value() const { return c * phase; }
};

inline LocalClosed local_closed_core(long ell, int u, int v, long v_alpha,
                                     int64_t alpha0, long v_xi_eff, int64_t xi0) {
  const int e = u + 2 * v;
  int64_t M = 1;
  for (int i = 0; i < e; ++i) M *= ell;
  auto zero = LocalClosed{{0.0, 0.0}, {1.0, 0.0}};

  if (v_alpha < 0) {  // alpha = 0
    if (u % 2 == 0 && v_xi_eff >= e) {
      double phiu = 1.0;
      if (u > 0) {
        double lu = std::pow(static_cast<double>(ell), u);
        phiu = lu - lu / ell;
      }
      return {{static_cast<double>(M) * phiu, 0.0}, {1.0, 0.0}};
    }
    return zero;
  }

  long w = std::min<long>(v_alpha, e);
  if (v_xi_eff < w) return zero;

  std::complex<double> c;
  if (u % 2 == 0) {
    double bracket;
    if (v_alpha >= u) {
      double lu = std::pow(static_cast<double>(ell), u);
      bracket = (u > 0) ? lu - lu / ell : 1.0;
    } else if (v_alpha == u - 1) {
      bracket = -std::pow(static_cast<double>(ell), u - 1);
    } else {
      return zero;
    }
    int Mp = static_cast<int>(e - w);
    double mag = std::pow(static_cast<double>(ell), 0.5 * (e + w));
    // kappa(ell^Mp)
    std::complex<double> kap =
        (ell % 4 == 3 && Mp % 2 == 1) ? std::complex<double>(0.0, 1.0)
                                      : std::complex<double>(1.0, 0.0);
    int sym = 1;
    if (Mp % 2 == 1) {
      auto leg = detail::legendre_table(ell);
      long r = static_cast<long>(mod_reduce(alpha0, ell));
      sym = leg[static_cast<size_t>(r)];
    }
    c = mag * kap * static_cast<double>(sym) * bracket;
  } else {
    if (v_alpha != u - 1) return zero;
    c = std::pow(static_cast<double>(ell), 2 * u + v - 1);
  }

  // phase exponent j = e + w - 2 v_xi_eff; e(-(alpha0^{-1} xi0^2)/ell^j)
  long j = e + w - 2 * v_xi_eff;
  std::complex<double> phase(1.0, 0.0);
  if (j > 0) {
    int64_t lj = 1;
    for (long i = 0; i < j; ++i) lj *= ell;
    int64_t ainv = invmod_u64(mod_reduce(alpha0, lj), lj);
    int64_t arg = mulmod_u64(mulmod_u64(xi0, xi0, lj), ainv, lj);
    double ang = -2.0 * M_PI * static_cast<double>(arg) / static_cast<double>(lj);
    phase = {std::cos(ang), std::sin(ang)};
  }
  return {c, phase};
}

inline ComplexApprox local_klhat_closed(const LocalKlParams& p, int64_t xi, int64_t alpha) {
  int64_t M = p.modulus();
  int64_t xr = mod_reduce(xi, M);
  long v_xi_eff, v_alpha;
  int64_t xi0 = 0, alpha0 = 0;
  if (xr == 0) {
    v_xi_eff = p.u + 2 * p.v;
  } else {
    v_xi_eff = 0;
    int64_t t = xr;
    while (t % p.ell == 0) { t /= p.ell; ++v_xi_eff; }
    xi0 = t;
  }
  if (alpha == 0) {
    v_alpha = -1;
  } else {
    v_alpha = 0;
    int64_t t = alpha;
    while (t % p.ell == 0) { t /= p.ell; ++v_alpha; }
    alpha0 = mod_reduce(t, M > 1 ? M : 1);
    if (M == 1) alpha0 = 0;
  }
  auto lc = local_closed_core(p.ell, p.u, p.v, v_alpha, alpha0, v_xi_eff, xi0);
  std::complex<double> val = lc.value();
  return {val, 1e-12 * (1.0 + std::abs(val))};
}

inline std::complex<double> local_c_closed(const LocalKlParams& p, int64_t alpha) {
  if (alpha == 0) throw std::domain_error("local_c_closed: alpha must be nonzero");
  long v_alpha = 0;
  int64_t t = alpha;
  while (t % p.ell == 0) { t /= p.ell; ++v_alpha; }
  int64_t M = p.modulus();
  int64_t alpha0 = mod_reduce(t, M > 1 ? M : 1);
  auto lc = local_closed_core(p.ell, p.u, p.v, v_alpha, alpha0, p.u + 2 * p.v, 0);
  return lc.c;
}

// ---------------------------------------------------------------------------
// Global (partial) sums over a mod k f^2, k and f coprime to S.

namespace detail {

// prime-to-S fractional part of x, as c/D with D coprime to S, 0 <= c < D
inline std::pair<Int, Int> prime_to_S_fraction(const SSet& S, const Rat& x) {
  Rat xr = x;
  xr.canonicalize();
  Int num = xr.get_num(), den = xr.get_den();
  Int dS = 1, dp = den;
  for (long q : S.primes)
    while (dp % q == 0) { dp /= q; dS *= q; }
  if (dp == 1) return {Int(0), Int(1)};
  Int inv;
  mpz_invert(inv.get_mpz_t(), dS.get_mpz_t(), dp.get_mpz_t());
  Int c = ((num % dp) * inv) % dp;
  if (c < 0) c += dp;
  return {c, dp};
}

// S-decomposition of a nonzero rational: sign, S-exponents, prime-to-S core
struct SDecomp {
  int sign;
  std::vector<long> mu;
  Int core;  // positive, coprime to S
};

inline SDecomp s_decompose(const SSet& S, const Rat& x) {
  SDecomp d;
  d.mu.assign(S.r(), 0);
  Rat xr = x;
  xr.canonicalize();
  d.sign = (xr > 0) ? 1 : -1;
  Int num = abs(Int(xr.get_num())), den = Int(xr.get_den());
  for (size_t i = 0; i < S.r(); ++i) {
    long q = S.primes[i];
    while (num % q == 0) { num /= q; ++d.mu[i]; }
    while (den % q == 0) { den /= q; --d.mu[i]; }
  }
  if (den != 1) throw std::domain_error("s_decompose: not an S-integer ratio");
  d.core = num;
  return d;
}

}  // namespace detail

// Kl^S_{k,f}(xi, m): direct sum over a mod kf^2 with f^2 | a^2 - 4m (in Z^S),
// Kronecker symbol of (a^2-4m)/f^2 mod k, characters e * e_q at a xi/(k f^2).
inline ComplexApprox global_kl_bruteforce(const SSet& S, const Int& k, const Int& f,
                                          const FactoredSInteger& xi,
                                          const FactoredSInteger& m,
                                          int64_t cap = 4000) {
  if (k <= 0 || f <= 0) throw std::invalid_argument("global_kl: k, f > 0");
  if (!S.coprime(k) || !S.coprime(f))
    throw std::invalid_argument("global_kl: k, f must be coprime to S");
  Int kf2_z = k * f * f;
  if (kf2_z > cap) throw std::domain_error("global_kl: cap exceeded");
  int64_t kf2 = ilong(kf2_z);
  Rat xv = xi.value(S), mv = m.value(S);

  auto [cx, Dx] = detail::prime_to_S_fraction(S, xv / Rat(kf2_z));
  int64_t D = ilong(Dx), c = ilong(cx);
  auto roots = detail::root_table(D);

  Int f2 = f * f;
  std::complex<double> sum = 0.0;
  int64_t terms = 0;
  for (int64_t a = 0; a < kf2; ++a) {
    Rat disc = Rat(Int(a) * a) - 4 * mv;
    int sym;
    if (disc == 0) {
      // (0/k) = 1 iff k = 1
      if (k != 1) continue;
      sym = 1;
    } else {
      auto dec = detail::s_decompose(S, disc);
      if (dec.core % f2 != 0) continue;
      Int y = dec.core / f2;
      if (dec.sign < 0) y = -y;
      int s0 = kronecker_symbol(y, k);
      for (size_t i = 0; i < S.r(); ++i) {
        if (dec.mu[i] == 0) continue;
        int sq = kronecker_symbol(Int(S.primes[i]), k);
        if (dec.mu[i] % 2 != 0) s0 *= sq;  // even powers contribute square = 1 (or 0)
        if (sq == 0) s0 = 0;
      }
      sym = s0;
      if (sym == 0) continue;
    }
    sum += static_cast<double>(sym) *
           roots[static_cast<size_t>(mulmod_u64(mod_reduce(a, D), c, D))];
    ++terms;
  }
  return {sum, static_cast<double>(std::max<int64_t>(terms, 1)) * 1e-14};
}

// Klhat^S_{k,f}(xi, alpha) = sum_{m mod kf^2} Kl(xi,m) e(m alpha/kf^2) e_q(...).
// The m-sum is enumerated through m = inv4 (a^2 - s f^2), s mod k, which is the
// definition's constraint solved for m; nothing closed-form enters.
inline ComplexApprox global_klhat_bruteforce(const SSet& S, const Int& k, const Int& f,
                                             const FactoredSInteger& xi,
                                             const FactoredSInteger& alpha,
                                             int64_t cap = 4000) {
  if (k <= 0 || f <= 0) throw std::invalid_argument("global_klhat: k, f > 0");
  if (!S.coprime(k) || !S.coprime(f))
    throw std::invalid_argument("global_klhat: k, f must be coprime to S");
  Int kf2_z = k * f * f;
  if (kf2_z > cap) throw std::domain_error("global_klhat: cap exceeded");
  int64_t kf2 = ilong(kf2_z);
  int64_t kk = ilong(k), ff = ilong(f);
  Rat xv = xi.value(S), av = alpha.value(S);

  auto [cx, Dx] = detail::prime_to_S_fraction(S, xv / Rat(kf2_z));
  auto [ca, Da] = detail::prime_to_S_fraction(S, av / Rat(kf2_z));
  int64_t DX = ilong(Dx), CX = ilong(cx), DA = ilong(Da), CA = ilong(ca);
  auto rootsX = detail::root_table(DX);
  auto rootsA = detail::root_table(DA);

  // Kronecker (x|k) table for x mod k
  std::vector<int> symk(static_cast<size_t>(kk));
  for (int64_t x = 0; x < kk; ++x) symk[static_cast<size_t>(x)] = kronecker_symbol(x, kk);

  int64_t inv4 = invmod_u64(4, kf2);
  int64_t f2 = ff * ff;
  std::complex<double> sum = 0.0;
  for (int64_t a = 0; a < kf2; ++a) {
    std::complex<double> pa =
        rootsX[static_cast<size_t>(mulmod_u64(mod_reduce(a, DX), CX, DX))];
    int64_t a2 = mulmod_u64(a, a, kf2);
    for (int64_t s = 0; s < kk; ++s) {
      int sym = symk[static_cast<size_t>(s)];
      if (sym == 0) continue;
      int64_t m = mulmod_u64(inv4, mod_reduce(a2 - s * f2, kf2), kf2);
      std::complex<double> pm =
          rootsA[static_cast<size_t>(mulmod_u64(mod_reduce(m, DA), CA, DA))];
      sum += static_cast<double>(sym) * pa * pm;
    }
  }
  double terms = static_cast<double>(kf2) * static_cast<double>(kk);
  return {sum, terms * 1e-14};
}

// ---------------------------------------------------------------------------
// Global closed form, assembled as the CRT product of local closed forms at
// shifted arguments ((kf^2/l^e)^{-1} xi, (kf^2/l^e)^{-1} alpha).

struct GlobalClosed {
  std::complex<double> value;
  std::complex<double> c;  // prod of local c's (the c_{k,f}(alpha) coefficient)
};

inline GlobalClosed global_klhat_closed(const SSet& S, const Int& k, const Int& f,
                                        const FactoredSInteger& xi,
                                        const FactoredSInteger& alpha) {
  if (k <= 0 || f <= 0) throw std::invalid_argument("global_klhat_closed: k, f > 0");
  if (!S.coprime(k) || !S.coprime(f))
    throw std::invalid_argument("global_klhat_closed: k, f coprime to S");
  Int kf2 = k * f * f;
  auto fac = factorize(kf2);
  std::complex<double> val = 1.0, cprod = 1.0;
  for (auto& [lz, e] : fac) {
    long ell = ilong(lz);
    int u = static_cast<int>(valuation(lz, k));
    int v = static_cast<int>(valuation(lz, f));
    int64_t M = 1;
    for (int i = 0; i < e; ++i) M *= ell;
    Int cof = kf2;
    for (int i = 0; i < e; ++i) cof /= ell;  // (kf^2)^{(l)}
    Int tz;
    mpz_invert(tz.get_mpz_t(), Int(cof % M).get_mpz_t(), Int(M).get_mpz_t());
    int64_t t = ilong(tz);

    // local xi data: v_l(xi) and unit part, S-part folded into the unit
    long v_xi_eff;
    int64_t xi0 = 0;
    if (xi.is_zero()) {
      v_xi_eff = e;
    } else {
      long vx = valuation(lz, xi.core);
      if (vx >= e) {
        v_xi_eff = e;
      } else {
        v_xi_eff = vx;
        Int unit = xi.core;
        for (long i = 0; i < vx; ++i) unit /= ell;
        Int u0 = unit % M;
        for (size_t i = 0; i < S.r(); ++i) {
          Int qp = powmod_u64(S.primes[i], std::labs(xi.nu[i]), M);
          if (xi.nu[i] < 0) mpz_invert(qp.get_mpz_t(), qp.get_mpz_t(), Int(M).get_mpz_t());
          u0 = (u0 * qp) % M;
        }
        if (xi.sign < 0) u0 = M - u0;
        xi0 = mulmod_u64(ilong(u0), t, M);
        // multiplying by the unit t keeps the valuation; fold t into xi0
      }
    }

    long v_alpha;
    int64_t alpha0 = 0;
    if (alpha.is_zero()) {
      v_alpha = -1;
    } else {
      v_alpha = valuation(lz, alpha.core);
      Int unit = alpha.core;
      for (long i = 0; i < v_alpha; ++i) unit /= ell;
      Int u0 = unit % M;
      for (size_t i = 0; i < S.r(); ++i) {
        Int qp = powmod_u64(S.primes[i], std::labs(alpha.nu[i]), M);
        if (alpha.nu[i] < 0) mpz_invert(qp.get_mpz_t(), qp.get_mpz_t(), Int(M).get_mpz_t());
        u0 = (u0 * qp) % M;
      }
      if (alpha.sign < 0) u0 = M - u0;
      alpha0 = mulmod_u64(ilong(u0), t, M);
      if (alpha0 == 0) alpha0 = M;  // unit part is nonzero mod M by construction
    }

    auto lc = local_closed_core(ell, u, v, v_alpha, alpha0, v_xi_eff, xi0);
    val *= lc.value();
    cprod *= lc.c;
  }
  return {val, cprod};
}

// |c_{k,f}(alpha)| <= k^{3/2} f sqrt(gcd(kf^2, alpha)), with c = 0 unless
// (k / rad k) | alpha. Returns true iff both the bound and the support
// condition hold on this tuple.
inline bool c_bound_check(const SSet& S, const Int& k, const Int& f,
                          const FactoredSInteger& alpha) {
  if (alpha.is_zero()) throw std::invalid_argument("c_bound_check: alpha != 0");
  auto gc = global_klhat_closed(S, k, f, FactoredSInteger::zero(S), alpha);
  double cabs = std::abs(gc.c);
  Int kf2 = k * f * f;
  // gcd(kf^2, alpha) over primes outside S
  Int g = 1;
  for (auto& [lz, e] : factorize(kf2)) {
    long va = static_cast<long>(valuation(lz, alpha.core));
    long mn = std::min<long>(va, e);
    for (long i = 0; i < mn; ++i) g *= lz;
  }
  double bound = std::pow(k.get_d(), 1.5) * f.get_d() * std::sqrt(g.get_d());
  bool bound_ok = cabs <= bound * (1.0 + 1e-9) + 1e-9;
  Int krad = k / multiplicative_suite(k).radical;
  bool support_ok = (alpha.core % krad == 0) || cabs <= 1e-9;
  return bound_ok && support_ok;
}

}  // namespace klver
