#pragma once
// The analytic kernels F and V, their Mellin transforms, numerical Mellin
// transforms on vertical lines, and small contour-integral utilities.

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "klver/arith.hpp"
#include "klver/bessel.hpp"
#include "klver/gamma_zeta.hpp"
#include "klver/quadrature.hpp"

namespace klver {

struct VerticalLineSpec {
  double sigma = 1.0;
  double T = 40.0;
  double h = 0.02;

  VerticalLineSpec() = default;
  VerticalLineSpec(double s, double t, double step) : sigma(s), T(t), h(step) {
    if (T <= 0 || h <= 0) throw std::invalid_argument("VerticalLineSpec: T, h > 0");
    if (T / h > 1e6) throw std::invalid_argument("VerticalLineSpec: too many nodes");
  }
};

inline double bessel_K0_of_2() {
  static const double k0 = bessel_K(cdouble(0.0, 0.0), 2.0).v.real();
  return k0;
}

// F(x) = 1/(2 K_0(2)) int_x^oo exp(-t - 1/t) dt/t
inline double F_value(double x) {
  if (x <= 0) throw std::domain_error("F_value: x > 0 required");
  double hi = std::max(x + 70.0, 70.0);
  auto f = [](double t) { return std::exp(-t - 1.0 / t) / t; };
  double integral = adaptive_simpson(f, x, hi, 1e-15);
  return integral / (2.0 * bessel_K0_of_2());
}

// Mellin transform of F in closed form: K_s(2) / (s K_0(2)). Simple pole at 0.
inline ComplexApprox mellin_F(cdouble s) {
  if (std::abs(s) < 1e-12) throw std::domain_error("mellin_F: pole at s = 0");
  ComplexApprox K = bessel_K(s, 2.0);
  cdouble val = K.v / (s * bessel_K0_of_2());
  return {val, K.err / (std::abs(s) * bessel_K0_of_2()) + 1e-15 * std::abs(val)};
}

// Numerical Mellin transform of the quadrature F (the independent route).
inline ComplexApprox mellin_F_numeric(cdouble s) {
  if (s.real() <= 0) throw std::domain_error("mellin_F_numeric: Re s > 0 required");
  auto f = [&](double x) -> cdouble {
    return F_value(x) * std::pow(cdouble(x, 0.0), s - 1.0);
  };
  cdouble head = tanh_sinh_ab(f, 0.0, 1.0, 11);
  cdouble tail = adaptive_simpson(f, 1.0, 60.0, 1e-13);
  cdouble val = head + tail;
  return {val, 1e-8 + 1e-10 * std::abs(val)};
}

// Numerical Mellin transform of a sampled smooth compactly supported G.
// G must vanish outside (lo, hi); quadrature is panel Gauss-Legendre with
// enough panels to resolve the vertical oscillation x^{i Im u}.
inline ComplexApprox mellin_numeric(const std::function<double(double)>& G, cdouble u,
                                    double lo, double hi) {
  if (lo <= 0 || hi <= lo) throw std::invalid_argument("mellin_numeric: bad support");
  if (std::abs(G(lo * 0.999)) > 0 || std::abs(G(hi * 1.001)) > 0)
    throw std::domain_error("mellin_numeric: support violation");
  auto f = [&](double x) -> cdouble {
    double g = G(x);
    if (g == 0.0) return {0.0, 0.0};
    return g * std::pow(cdouble(x, 0.0), u - 1.0);
  };
  int panels = static_cast<int>(200 + 8.0 * std::abs(u.imag()) * (hi - lo));
  cdouble val = composite_gauss10(f, lo, hi, panels);
  return {val, 1e-10 + 1e-12 * std::abs(val)};
}

// ---------------------------------------------------------------------------
// V_{iota,eps}(x): inverse-Mellin style contour integral of
//   sqrt(pi) F~(s) prod_i (1 - eps_i q_i^{s-1})/(1 - eps_i q_i^{-s})
//            * Gamma((iota+s)/2)/Gamma((iota+1-s)/2) * (pi x)^{-s}
// over the vertical line (sigma). K_s(2) values along a contour are cached:
// they do not depend on (iota, eps, x).

namespace detail {

inline const std::vector<cdouble>& k_contour_cache(const VerticalLineSpec& c) {
  static std::map<std::tuple<double, double, double>, std::vector<cdouble>> cache;
  auto key = std::make_tuple(c.sigma, c.T, c.h);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  int n = static_cast<int>(std::llround(c.T / c.h));
  std::vector<cdouble> ks(2 * n + 1);
  for (int j = 0; j <= 2 * n; ++j) {
    double t = -c.T + j * c.h;
    if (t < 0) continue;  // fill by conjugate symmetry below
    ks[j] = bessel_K(cdouble(c.sigma, t), 2.0).v;
  }
  for (int j = 0; j < n; ++j) ks[j] = std::conj(ks[2 * n - j]);
  return cache.emplace(key, std::move(ks)).first->second;
}

}  // namespace detail

// One Simpson pass over the contour at the given spec.
inline cdouble v_value_pass(int iota, const std::vector<int>& eps, double x,
                            const VerticalLineSpec& c, const SSet& S) {
  const auto& ks = detail::k_contour_cache(c);
  int n = static_cast<int>(std::llround(c.T / c.h));
  double k0 = bessel_K0_of_2();
  auto integrand = [&](int j) -> cdouble {
    double t = -c.T + j * c.h;
    cdouble s(c.sigma, t);
    cdouble Ft = ks[j] / (s * k0);
    cdouble prod = 1.0;
    for (size_t i = 0; i < S.r(); ++i) {
      if (eps[i] == 0) continue;
      double q = static_cast<double>(S.primes[i]);
      cdouble num = 1.0 - static_cast<double>(eps[i]) * std::pow(cdouble(q, 0.0), s - 1.0);
      cdouble den = 1.0 - static_cast<double>(eps[i]) * std::pow(cdouble(q, 0.0), -s);
      prod *= num / den;
    }
    cdouble grat = gamma_c(0.5 * (iota + s)) * rec_gamma_c(0.5 * (iota + 1.0 - s));
    cdouble px = std::pow(cdouble(M_PI * x, 0.0), -s);
    return Ft * prod * grat * px;
  };
  // composite Simpson over 2n intervals
  cdouble sum = integrand(0) + integrand(2 * n);
  for (int j = 1; j < 2 * n; ++j) sum += integrand(j) * ((j & 1) ? 4.0 : 2.0);
  sum *= c.h / 3.0;
  return std::sqrt(M_PI) / (2.0 * M_PI) * sum;
}

// V with a Richardson consistency check at h/2; error budget from the two passes.
inline ComplexApprox V_value(int iota, const std::vector<int>& eps, double x,
                             const VerticalLineSpec& c, const SSet& S) {
  if (iota != 0 && iota != 1) throw std::invalid_argument("V_value: iota in {0,1}");
  if (eps.size() != S.r()) throw std::invalid_argument("V_value: eps size != r");
  if (x <= 0) throw std::domain_error("V_value: x > 0");
  if (c.sigma <= 0) throw std::domain_error("V_value: contour must lie in Re s > 0");
  cdouble coarse = v_value_pass(iota, eps, x, c, S);
  VerticalLineSpec fine(c.sigma, c.T, 0.5 * c.h);
  cdouble refined = v_value_pass(iota, eps, x, fine, S);
  double err = std::abs(refined - coarse) + 1e-12;
  if (err > 1e-6 * std::max(1.0, std::abs(refined)) + 1e-6)
    throw std::runtime_error("V_value: truncation error estimate exceeds budget");
  return {refined, err};
}

// ---------------------------------------------------------------------------
// (1/2pi i) contour integral over the circle |s| = r (trapezoid, spectral
// accuracy for functions meromorphic near 0). Returns the enclosed residue sum.

inline cdouble circle_residue(const std::function<cdouble(cdouble)>& f, double r, int n) {
  if (r >= 0.5) throw std::invalid_argument("circle_residue: radius must stay < 0.5");
  cdouble sum = 0.0;
  for (int j = 0; j < n; ++j) {
    double th = 2.0 * M_PI * j / n;
    cdouble e(std::cos(th), std::sin(th));
    sum += f(r * e) * e;
  }
  return sum * (r / static_cast<double>(n));
}

// Truncated sum over square k and f (both coprime to S, k = j^2) of
// phi(k) k^{-(1+s)} f^{-(1+2s)}, plus a rigorous tail bound; the identity
// says the full series equals zeta^S(2s).
struct TruncatedSeries {
  double value;
  double tail_bound;
};

inline TruncatedSeries lemma_series_zeta2s(const SSet& S, double s, long cap) {
  double ksum = 0.0;
  long J = static_cast<long>(std::sqrt(static_cast<double>(cap)));
  for (long j = 1; j <= J; ++j) {
    if (!S.coprime(j)) continue;
    Int k = Int(j) * j;
    double phi = multiplicative_suite(k).euler_phi.get_d();
    ksum += phi * std::pow(k.get_d(), -(1.0 + s));
  }
  double fsum = 0.0;
  for (long f = 1; f <= cap; ++f) {
    if (!S.coprime(f)) continue;
    fsum += std::pow(static_cast<double>(f), -(1.0 + 2.0 * s));
  }
  // tails: phi(j^2) <= j^2 gives sum_{j>J} j^{-2s} <= J^{1-2s}/(2s-1);
  // f-tail: sum_{f>cap} f^{-1-2s} <= cap^{-2s}/(2s)
  double ktail = std::pow(static_cast<double>(J), 1.0 - 2.0 * s) / (2.0 * s - 1.0);
  double ftail = std::pow(static_cast<double>(cap), -2.0 * s) / (2.0 * s);
  double full_f = fsum + ftail, full_k = ksum + ktail;
  double bound = ktail * full_f + ftail * full_k;
  return {ksum * fsum, bound};
}

}  // namespace klver
