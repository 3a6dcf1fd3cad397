#include "gnk/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gnk::geometry {

double horner(std::span<const double> coeffs, double u) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + *it;
  return acc;
}

double exact_sum(std::span<const double> values) {
  std::vector<double> partials;
  for (double x : values) {
    std::size_t used = 0;
    for (double y : partials) {
      if (std::abs(x) < std::abs(y)) std::swap(x, y);
      const double hi = x + y;
      const double lo = y - (hi - x);
      if (lo != 0.0) partials[used++] = lo;
      x = hi;
    }
    partials.resize(used);
    partials.push_back(x);
  }
  if (partials.empty()) return 0.0;

  std::size_t i = partials.size();
  double hi = partials[--i];
  double lo = 0.0;
  while (i > 0) {
    const double x = hi;
    const double y = partials[--i];
    hi = x + y;
    const double yr = hi - x;
    lo = y - yr;
    if (lo != 0.0) break;
  }
  // Round half-even across the remaining partials.
  if (i > 0 && ((lo < 0.0 && partials[i - 1] < 0.0) || (lo > 0.0 && partials[i - 1] > 0.0))) {
    const double y = lo * 2.0;
    const double x = hi + y;
    if (y == x - hi) hi = x;
  }
  return hi;
}

double eval_piece(std::span<const double> coeffs, double u) {
  if (u == 1.0) return exact_sum(coeffs);
  return horner(coeffs, u);
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
  Polynomial out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) return {};
  Polynomial out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Polynomial poly_scale(const Polynomial& a, double factor) {
  Polynomial out = a;
  for (double& c : out) c *= factor;
  return out;
}

Polynomial poly_compose_affine(const Polynomial& p, double offset, double scale) {
  const Polynomial inner{offset, scale};
  Polynomial acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc = poly_mul(acc, inner);
    if (acc.empty()) acc.push_back(0.0);
    acc[0] += *it;
  }
  return acc;
}

Polynomial poly_reflect(const Polynomial& p) {
  Polynomial out = poly_compose_affine(p, 1.0, -1.0);
  if (!out.empty()) out[0] = eval_piece(p, 1.0);
  return out;
}

void pin_right_end(Polynomial& coeffs, double target) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  if (eval_piece(coeffs, 1.0) == target) return;
  std::size_t slot = 0;
  if (coeffs.size() > 1) {
    slot = 1;
    for (std::size_t i = 2; i < coeffs.size(); ++i) {
      if (std::abs(coeffs[i]) < std::abs(coeffs[slot])) slot = i;
    }
  }
  // slot := target - (sum of the others), correctly rounded.
  std::vector<double> terms{target};
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i != slot) terms.push_back(-coeffs[i]);
  }
  coeffs[slot] = exact_sum(terms);
  if (eval_piece(coeffs, 1.0) == target) return;
  // The slot's ulp exceeds the target's: absorb the residual in a new
  // top-degree term, whose ulp is far below it.
  std::vector<double> residual{target};
  for (double c : coeffs) residual.push_back(-c);
  coeffs.push_back(exact_sum(residual));
  for (int guard = 0; guard < 64 && eval_piece(coeffs, 1.0) != target; ++guard) {
    const double now = eval_piece(coeffs, 1.0);
    coeffs.back() = std::nextafter(coeffs.back(), now < target ? INFINITY : -INFINITY);
  }
}

Polynomial chebyshev_fit(const std::function<double(double)>& f, int degree) {
  const int m = degree + 1;
  std::vector<double> values(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const double x = std::cos(std::numbers::pi * (j + 0.5) / m);
    values[static_cast<std::size_t>(j)] = f((x + 1.0) / 2.0);
  }
  // Chebyshev coefficients c_i of sum c_i T_i(x), x = 2u - 1.
  std::vector<double> cheb(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += values[static_cast<std::size_t>(j)] * std::cos(std::numbers::pi * i * (j + 0.5) / m);
    cheb[static_cast<std::size_t>(i)] = (i == 0 ? 1.0 : 2.0) * s / m;
  }
  // T_i(2u - 1) in the monomial basis via the three-term recurrence.
  const Polynomial x{-1.0, 2.0};
  Polynomial t_prev{1.0};
  Polynomial t_cur = x;
  Polynomial out = poly_scale(t_prev, cheb[0]);
  if (m > 1) out = poly_add(out, poly_scale(t_cur, cheb[1]));
  for (int i = 2; i < m; ++i) {
    Polynomial t_next = poly_add(poly_scale(poly_mul(x, t_cur), 2.0), poly_scale(t_prev, -1.0));
    out = poly_add(out, poly_scale(t_next, cheb[static_cast<std::size_t>(i)]));
    t_prev = std::move(t_cur);
    t_cur = std::move(t_next);
  }
  return out;
}

double derivative_bound(std::span<const double> coeffs) {
  double bound = 0.0;
  for (std::size_t i = 1; i < coeffs.size(); ++i) bound += static_cast<double>(i) * std::abs(coeffs[i]);
  return bound;
}

}  // namespace gnk::geometry
