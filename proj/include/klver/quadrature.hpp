#pragma once
// Quadrature utilities: adaptive Simpson, tanh-sinh (endpoint singularities),
// composite Gauss-Legendre panels.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace klver {

namespace detail {

template <typename F, typename T>
T adaptive_simpson_rec(const F& f, double a, double b, T fa, T fm, T fb, T whole,
                       double eps, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  T flm = f(lm), frm = f(rm);
  T left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  T right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  T delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, eps * 0.5, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, eps * 0.5, depth - 1);
}

}  // namespace detail

template <typename F>
auto adaptive_simpson(const F& f, double a, double b, double eps, int max_depth = 40)
    -> decltype(f(a)) {
  using T = decltype(f(a));
  T fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  T whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, eps, max_depth);
}

// tanh-sinh on (-1,1); integrable endpoint singularities are fine
template <typename F>
auto tanh_sinh(const F& f, int levels = 12) -> decltype(f(0.0)) {
  using T = decltype(f(0.0));
  const double tmax = 3.8;
  T sum = T{};
  double h = tmax;  // level 0
  // level 0: nodes at 0, +-tmax handled through refinement below
  sum = f(0.0) * (0.5 * M_PI * h);
  for (int lev = 1; lev <= levels; ++lev) {
    h *= 0.5;
    T part = T{};
    for (double t = h; t <= tmax; t += 2.0 * h) {
      double ch = std::cosh(t), sh = std::sinh(t);
      double x = std::tanh(0.5 * M_PI * sh);
      double w = 0.5 * M_PI * ch / (std::cosh(0.5 * M_PI * sh) * std::cosh(0.5 * M_PI * sh));
      if (1.0 - std::abs(x) < 1e-17) continue;
      part = part + (f(x) + f(-x)) * w;
    }
    sum = sum * 0.5 + part * h;
  }
  return sum;
}

// tanh-sinh transplanted to (a,b)
template <typename F>
auto tanh_sinh_ab(const F& f, double a, double b, int levels = 12) -> decltype(f(a)) {
  double c = 0.5 * (a + b), s = 0.5 * (b - a);
  auto g = [&](double u) { return f(c + s * u); };
  return tanh_sinh(g, levels) * s;
}

// 10-point Gauss-Legendre nodes/weights on (-1,1)
struct GL10 {
  static constexpr double x[5] = {0.1488743389816312, 0.4333953941292472,
                                  0.6794095682990244, 0.8650633666889845,
                                  0.9739065285171717};
  static constexpr double w[5] = {0.2955242247147529, 0.2692667193099963,
                                  0.2190863625159820, 0.1494513491505806,
                                  0.0666713443086881};
};

template <typename F>
auto gauss10_panel(const F& f, double a, double b) -> decltype(f(a)) {
  using T = decltype(f(a));
  double c = 0.5 * (a + b), s = 0.5 * (b - a);
  T sum = T{};
  for (int i = 0; i < 5; ++i) {
    sum = sum + (f(c + s * GL10::x[i]) + f(c - s * GL10::x[i])) * GL10::w[i];
  }
  return sum * s;
}

template <typename F>
auto composite_gauss10(const F& f, double a, double b, int panels) -> decltype(f(a)) {
  using T = decltype(f(a));
  T sum = T{};
  double h = (b - a) / panels;
  for (int i = 0; i < panels; ++i) sum = sum + gauss10_panel(f, a + i * h, a + (i + 1) * h);
  return sum;
}

}  // namespace klver
