#include "gnk/determinant.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "gnk/error.hpp"

namespace gnk::geometry {

double determinant_in_place(std::span<double> m, int size) {
  const auto at = [&](int r, int c) -> double& { return m[static_cast<std::size_t>(r * size + c)]; };
  double det = 1.0;
  for (int col = 0; col < size; ++col) {
    int pivot = col;
    for (int r = col + 1; r < size; ++r) {
      if (std::abs(at(r, col)) > std::abs(at(pivot, col))) pivot = r;
    }
    if (at(pivot, col) == 0.0) return 0.0;
    if (pivot != col) {
      for (int c = 0; c < size; ++c) std::swap(at(pivot, c), at(col, c));
      det = -det;
    }
    const double p = at(col, col);
    det *= p;
    for (int r = col + 1; r < size; ++r) {
      const double factor = at(r, col) / p;
      if (factor == 0.0) continue;
      for (int c = col + 1; c < size; ++c) at(r, c) -= factor * at(col, c);
    }
  }
  return det;
}

double dependence_det(std::span<const Point> points) {
  const int k = static_cast<int>(points.size());
  std::vector<double> m;
  m.reserve(static_cast<std::size_t>(k * k));
  for (const Point& p : points) {
    if (static_cast<int>(p.size()) != k - 1) {
      throw Error(ErrorCode::DimensionMismatch, std::to_string(k) + " points need dimension " +
                                                    std::to_string(k - 1) + ", got " + std::to_string(p.size()));
    }
    m.insert(m.end(), p.begin(), p.end());
    m.push_back(1.0);
  }
  return determinant_in_place(m, k);
}

double dependence_det_projective(std::span<const Point> vectors) {
  const int k = static_cast<int>(vectors.size());
  std::vector<double> m;
  m.reserve(static_cast<std::size_t>(k * k));
  for (const Point& v : vectors) {
    if (static_cast<int>(v.size()) != k) {
      throw Error(ErrorCode::DimensionMismatch, std::to_string(k) + " vectors need dimension " +
                                                    std::to_string(k) + ", got " + std::to_string(v.size()));
    }
    bool zero = true;
    for (double x : v) zero = zero && x == 0.0;
    if (zero) throw Error(ErrorCode::ZeroVector, "homogeneous coordinates may not all vanish");
    m.insert(m.end(), v.begin(), v.end());
  }
  return determinant_in_place(m, k);
}

double normalized_volume(std::span<const Point> vectors) {
  // Modified Gram-Schmidt on unit vectors; the volume is the product of the
  // residual norms. Working on the vectors directly (not the Gram matrix)
  // keeps near-dependence resolvable down to ~1e-15.
  std::vector<Point> basis;
  double volume = 1.0;
  for (const Point& v : vectors) {
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) return 0.0;
    Point r(v.size());
    for (std::size_t c = 0; c < v.size(); ++c) r[c] = v[c] / norm;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Point& q : basis) {
        double dot = 0.0;
        for (std::size_t c = 0; c < r.size(); ++c) dot += r[c] * q[c];
        for (std::size_t c = 0; c < r.size(); ++c) r[c] -= dot * q[c];
      }
    }
    double rn = 0.0;
    for (double x : r) rn += x * x;
    rn = std::sqrt(rn);
    volume *= rn;
    if (rn == 0.0) return 0.0;
    for (double& x : r) x /= rn;
    basis.push_back(std::move(r));
  }
  return volume;
}

}  // namespace gnk::geometry
