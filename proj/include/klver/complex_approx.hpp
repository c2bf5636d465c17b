#pragma once
// Complex value with an absolute-error budget. The lingua franca of the
// analytic checks: a == b means |a-b| <= a.err + b.err + tol.

#include <cmath>
#include <complex>

namespace klver {

struct ComplexApprox {
  std::complex<double> v{0.0, 0.0};
  double err = 0.0;

  double re() const { return v.real(); }
  double im() const { return v.imag(); }
  double abs() const { return std::abs(v); }

  ComplexApprox operator+(const ComplexApprox& o) const { return {v + o.v, err + o.err}; }
  ComplexApprox operator-(const ComplexApprox& o) const { return {v - o.v, err + o.err}; }
  ComplexApprox operator*(const ComplexApprox& o) const {
    return {v * o.v, std::abs(v) * o.err + std::abs(o.v) * err + err * o.err};
  }
  ComplexApprox operator*(double c) const { return {v * c, err * std::abs(c)}; }
};

inline bool approx_eq(const ComplexApprox& a, const ComplexApprox& b, double tol) {
  return std::abs(a.v - b.v) <= a.err + b.err + tol;
}

inline double approx_dist(const ComplexApprox& a, const ComplexApprox& b) {
  return std::abs(a.v - b.v);
}

}  // namespace klver
