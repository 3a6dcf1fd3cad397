#pragma once

#include <functional>
#include <span>
#include <vector>

namespace gnk::geometry {

/// Coefficients in ascending degree.
using Polynomial = std::vector<double>;

double horner(std::span<const double> coeffs, double u);

/// Correctly rounded sum of the inputs (Shewchuk partials, as in Python's
/// math.fsum).
double exact_sum(std::span<const double> values);

/// Evaluates a piece on u in [0,1]. At u == 1 the value is the correctly
/// rounded coefficient sum, so two pieces with the same exact coefficient sum
/// end at bit-identical values.
double eval_piece(std::span<const double> coeffs, double u);

Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial poly_scale(const Polynomial& a, double factor);
/// p(offset + scale * u).
Polynomial poly_compose_affine(const Polynomial& p, double offset, double scale);
/// p(1 - u); the constant term is taken as eval_piece(p, 1) exactly.
Polynomial poly_reflect(const Polynomial& p);

/// Adjusts one coefficient (the smallest in magnitude among degrees >= 1) so
/// that eval_piece(coeffs, 1) == target bit for bit. Degree-0 pieces get
/// their constant replaced. When no existing coefficient can absorb the
/// residual exactly, a tiny top-degree term is appended.
void pin_right_end(Polynomial& coeffs, double target);

/// Interpolant of f on [0,1] at Chebyshev points of the given degree,
/// returned in the monomial basis in u.
Polynomial chebyshev_fit(const std::function<double(double)>& f, int degree);

/// Upper bound of |p'(u)| on [0,1].
double derivative_bound(std::span<const double> coeffs);

}  // namespace gnk::geometry
