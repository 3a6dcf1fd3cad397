#pragma once

#include <span>
#include <vector>

namespace gnk::geometry {

using Point = std::vector<double>;

/// Determinant of a size x size row-major matrix, destroying it (Gaussian
/// elimination with partial pivoting).
double determinant_in_place(std::span<double> matrix, int size);

/// k points in R^(k-1): the k x k determinant whose i-th row is point i
/// followed by 1. Zero iff the points lie on a common (k-2)-plane.
double dependence_det(std::span<const Point> points);

/// k homogeneous vectors in R^k: their k x k determinant. Zero iff the
/// projective points lie on a common projective (k-2)-plane.
double dependence_det_projective(std::span<const Point> vectors);

/// sqrt(det Gram(v_1..v_m)) / prod |v_i|, in [0, 1]; 0 iff dependent.
double normalized_volume(std::span<const Point> vectors);

}  // namespace gnk::geometry
