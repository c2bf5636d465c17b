#pragma once
// Modified Bessel K of complex order, real argument x >= 0.5.
//
// Two routes, picked by |sin(pi s)|:
//   * near a real integer order the defining integral
//     K_s(x) = int_0^oo exp(-x cosh t) cosh(s t) dt is non-oscillatory and
//     adaptive Simpson nails it;
//   * otherwise K_s = pi/2 (I_{-s} - I_s)/sin(pi s) with the I series, which
//     stays stable for large |Im s| (both I's and sin grow like e^{pi|t|/2},
//     e^{pi|t|}; no catastrophic cancellation).

#include <cmath>
#include <complex>
#include <stdexcept>

#include "klver/complex_approx.hpp"
#include "klver/gamma_zeta.hpp"
#include "klver/quadrature.hpp"

namespace klver {

namespace detail {

inline cdouble bessel_I_series(cdouble nu, double x, double* scale_out) {
  // I_nu(x) = sum_k (x/2)^{nu+2k} / (k! Gamma(nu+k+1))
  cdouble sum = 0.0;
  double x2 = 0.5 * x;
  double x2k = 1.0;  // (x/2)^{2k}
  double kfac = 1.0;
  double scale = 0.0;
  for (int k = 0; k < 400; ++k) {
    if (k > 0) {
      kfac *= k;
      x2k *= x2 * x2;
    }
    cdouble term = x2k / kfac * rec_gamma_c(nu + cdouble(k + 1, 0));
    sum += term;
    double at = std::abs(term);
    scale = std::max(scale, at);
    if (k > 4 && at < 1e-22 * std::max(scale, 1e-300)) break;
  }
  if (scale_out) *scale_out = scale;
  return sum * std::pow(cdouble(x2, 0.0), nu);
}

}  // namespace detail

inline ComplexApprox bessel_K(cdouble s, double x) {
  if (x < 0.5) throw std::domain_error("bessel_K: x < 0.5 unsupported");
  cdouble sp = std::sin(M_PI * s);
  if (std::abs(sp) < 0.1) {
    // near-real-integer order: integral route, oscillation |Im s| < 0.033
    double a = std::abs(s.real());
    double T = 1.0;
    while (x * std::cosh(T) - a * T < 60.0) T += 0.25;
    auto f = [&](double t) { return std::exp(-x * std::cosh(t)) * std::cosh(s * t); };
    cdouble val = adaptive_simpson(f, 0.0, T, 1e-15);
    double err = 1e-14 + 1e-14 * std::abs(val);
    return {val, err};
  }
  double sc_m = 0.0, sc_p = 0.0;
  cdouble Im = detail::bessel_I_series(-s, x, &sc_m);
  cdouble Ip = detail::bessel_I_series(s, x, &sc_p);
  cdouble val = 0.5 * M_PI * (Im - Ip) / sp;
  double err = 1e-13 * (std::abs(Im) + std::abs(Ip)) / std::abs(sp) + 1e-16 * std::abs(val);
  if (err > 1e-10 * std::max(1.0, std::abs(val)) && err > 1e-10)
    throw std::runtime_error("bessel_K: error estimate exceeds budget");
  return {val, err};
}

}  // namespace klver
