#pragma once
// Smooth plateau mollifier: indicator of [beta,1] convolved with a scaled
// normalized bump exp(-1/(1-x^2)).

#include <cmath>
#include <stdexcept>
#include <vector>

#include "klver/quadrature.hpp"

namespace klver {

namespace detail {

inline double bump_raw(double x) {
  if (std::abs(x) >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - x * x));
}

struct BumpTables {
  double mass;                 // int_{-1}^{1} bump_raw
  std::vector<double> cdf;     // cumulative of the normalized bump on a grid
  double h;
  int n;

  BumpTables() : n(4000), h(2.0 / 4000) {
    mass = tanh_sinh_ab([](double x) { return bump_raw(x); }, -1.0, 1.0, 12);
    cdf.resize(n + 1);
    cdf[0] = 0.0;
    for (int i = 0; i < n; ++i) {
      double a = -1.0 + i * h, b = a + h;
      cdf[i + 1] = cdf[i] + gauss10_panel([](double x) { return bump_raw(x); }, a, b);
    }
    for (auto& v : cdf) v /= mass;
  }
};

inline const BumpTables& bump_tables() {
  static BumpTables t;
  return t;
}

}  // namespace detail

// normalized bump, integral 1, supported on (-1,1)
inline double bump_phi(double x) {
  return detail::bump_raw(x) / detail::bump_tables().mass;
}

// CDF of bump_phi
inline double bump_cdf(double t) {
  if (t <= -1.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const auto& tb = detail::bump_tables();
  int j = static_cast<int>((t + 1.0) / tb.h);
  if (j >= tb.n) j = tb.n - 1;
  double tj = -1.0 + j * tb.h;
  double inc = gauss10_panel([](double x) { return detail::bump_raw(x); }, tj, t) / tb.mass;
  return tb.cdf[j] + inc;
}

// G_{Y^delta,beta}: 1 on the plateau [beta + Y^{delta-1}, 1 - Y^{delta-1}],
// 0 outside [beta - Y^{delta-1}, 1 + Y^{delta-1}], smooth collars between.
struct Mollifier {
  double delta, beta, Y;
  double scale;  // Y^{1-delta}

  Mollifier(double d, double b, double y) : delta(d), beta(b), Y(y) {
    if (!(d > 0.5 && d < 1.0)) throw std::invalid_argument("Mollifier: delta in (1/2,1)");
    if (!(b >= 0.5 && b < 1.0)) throw std::invalid_argument("Mollifier: beta in [1/2,1)");
    if (!(y > 1.0)) throw std::invalid_argument("Mollifier: Y > 1");
    scale = std::pow(Y, 1.0 - delta);
    if (support_lo() <= 0.25 || support_hi() >= 1.25)
      throw std::invalid_argument("Mollifier: support leaves (1/4, 5/4)");
  }

  double operator()(double x) const {
    return bump_cdf((x - beta) * scale) - bump_cdf((x - 1.0) * scale);
  }

  double support_lo() const { return beta - 1.0 / scale; }
  double support_hi() const { return 1.0 + 1.0 / scale; }
};

inline Mollifier mollifier_build(double delta, double beta, double Y) {
  return Mollifier(delta, beta, Y);
}

}  // namespace klver
