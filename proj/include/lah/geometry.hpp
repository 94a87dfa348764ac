#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lah/exact.hpp"

namespace lah {

// Raised when the input hits a measure-zero configuration (exact ties,
// collinear/coplanar tuples); callers resample the trial.
class degenerate_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using PointXd = std::vector<double>;

namespace detail {

// Sign of det[[bx-ax, by-ay],[cx-ax, cy-ay]] with an exact rational fallback
// when the double determinant is below its rounding bound.
inline int orient2d(const PointXd& a, const PointXd& b, const PointXd& c) {
  const double acx = a[0] - c[0], acy = a[1] - c[1];
  const double bcx = b[0] - c[0], bcy = b[1] - c[1];
  const double det = acx * bcy - acy * bcx;
  const double bound = 4e-16 * (std::abs(acx * bcy) + std::abs(acy * bcx));
  if (std::abs(det) > bound) return det > 0 ? 1 : -1;
  const Ratio exact = Ratio(a[0] - c[0]) * Ratio(b[1] - c[1]) -
                      Ratio(a[1] - c[1]) * Ratio(b[0] - c[0]);
  return exact.sign();
}

// Sign of the 3x3 orientation determinant of (b-a, c-a, d-a).
inline int orient3d(const PointXd& a, const PointXd& b, const PointXd& c,
                    const PointXd& d) {
  double m[3][3];
  double scale = 0;
  for (int r = 0; r < 3; ++r) {
    const PointXd& p = r == 0 ? b : (r == 1 ? c : d);
    for (int col = 0; col < 3; ++col) {
      m[r][col] = p[col] - a[col];
      scale = std::max(scale, std::abs(m[r][col]));
    }
  }
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  const double bound = 1e-14 * scale * scale * scale;
  if (std::abs(det) > bound) return det > 0 ? 1 : -1;
  Ratio em[3][3];
  for (int r = 0; r < 3; ++r) {
    const PointXd& p = r == 0 ? b : (r == 1 ? c : d);
    for (int col = 0; col < 3; ++col) em[r][col] = Ratio(p[col]) - Ratio(a[col]);
  }
  const Ratio exact = em[0][0] * (em[1][1] * em[2][2] - em[1][2] * em[2][1]) -
                      em[0][1] * (em[1][0] * em[2][2] - em[1][2] * em[2][0]) +
                      em[0][2] * (em[1][0] * em[2][1] - em[1][1] * em[2][0]);
  return exact.sign();
}

}  // namespace detail

struct HullFaces2d {
  long f0;
  long f1;
  std::vector<size_t> hull_vertices;  // certificate: indices in ccw order
};

// Vertex/edge counts of the planar hull by the monotone chain. Exact ties
// (duplicate points, hull-collinear triples) raise degenerate_error.
inline HullFaces2d hull_faces_2d(const std::vector<PointXd>& points) {
  const size_t m = points.size();
  if (m < 3) throw std::domain_error("hull_faces_2d: need at least 3 points");
  std::vector<size_t> order(m);
  for (size_t i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t i, size_t j) {
    if (points[i][0] != points[j][0]) return points[i][0] < points[j][0];
    return points[i][1] < points[j][1];
  });
  for (size_t i = 1; i < m; ++i)
    if (points[order[i - 1]][0] == points[order[i]][0] &&
        points[order[i - 1]][1] == points[order[i]][1])
      throw degenerate_error("hull_faces_2d: duplicate point");
  auto build = [&](bool upper) {
    std::vector<size_t> chain;
    for (size_t idx = 0; idx < m; ++idx) {
      const size_t i = order[upper ? m - 1 - idx : idx];
      while (chain.size() >= 2) {
        const int side = detail::orient2d(points[chain[chain.size() - 2]],
                                          points[chain.back()], points[i]);
        if (side == 0)
          throw degenerate_error("hull_faces_2d: collinear hull candidates");
        if (side > 0) break;
        chain.pop_back();
      }
      chain.push_back(i);
    }
    return chain;
  };
  const auto lower = build(false);
  const auto upper = build(true);
  HullFaces2d faces;
  faces.hull_vertices.assign(lower.begin(), lower.end() - 1);
  faces.hull_vertices.insert(faces.hull_vertices.end(), upper.begin(), upper.end() - 1);
  faces.f0 = static_cast<long>(faces.hull_vertices.size());
  faces.f1 = faces.f0;
  return faces;
}

struct HullFaces3d {
  long f0;
  long f1;
  long f2;
  std::vector<std::array<size_t, 3>> facets;  // certificate: one triple per facet
};

// Full f-vector of a 3d hull by brute-force facet certification: a triple is
// a facet iff every other point lies strictly on one side of its plane.
// Robust via the exact orientation fallback; any zero orientation (coplanar
// quadruple involving a candidate facet) raises degenerate_error. The
// O(m^4) scan is intended for the small point sets the verification harness
// uses; per-sample Euler and simpliciality identities are asserted.
inline HullFaces3d hull_faces_3d(const std::vector<PointXd>& points) {
  const size_t m = points.size();
  if (m < 4) throw std::domain_error("hull_faces_3d: need at least 4 points");
  if (m > 120) throw resource_error("hull_faces_3d: brute-force scan capped at 120 points");
  std::set<std::array<size_t, 3>> facets;
  std::set<std::pair<size_t, size_t>> edges;
  std::vector<bool> on_hull(m, false);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = i + 1; j < m; ++j) {
      for (size_t k = j + 1; k < m; ++k) {
        int expected = 0;
        bool facet = true;
        for (size_t l = 0; l < m && facet; ++l) {
          if (l == i || l == j || l == k) continue;
          const int side = detail::orient3d(points[i], points[j], points[k], points[l]);
          if (side == 0)
            throw degenerate_error("hull_faces_3d: coplanar quadruple");
          if (expected == 0) expected = side;
          else if (side != expected) facet = false;
        }
        if (!facet) continue;
        facets.insert({i, j, k});
        edges.insert({i, j});
        edges.insert({i, k});
        edges.insert({j, k});
        on_hull[i] = on_hull[j] = on_hull[k] = true;
      }
    }
  }
  HullFaces3d faces{};
  faces.f2 = static_cast<long>(facets.size());
  faces.f1 = static_cast<long>(edges.size());
  faces.f0 = static_cast<long>(std::count(on_hull.begin(), on_hull.end(), true));
  faces.facets.assign(facets.begin(), facets.end());
  if (faces.f0 - faces.f1 + faces.f2 != 2)
    throw degenerate_error("hull_faces_3d: Euler relation violated");
  if (2 * faces.f1 != 3 * faces.f2)
    throw degenerate_error("hull_faces_3d: hull not simplicial");
  return faces;
}

namespace detail {

// Phase-1 simplex (Bland's rule) for: does lambda >= 0 exist with
// sum_j lambda_j [S_j; 1] = [target; 1]? Returns the residual artificial sum.
inline double phase1_feasibility(const std::vector<const PointXd*>& generators,
                                 const PointXd& target, int d) {
  const int rows = d + 1;
  const int n_lambda = static_cast<int>(generators.size());
  const int cols = n_lambda + rows;  // lambdas then artificials
  std::vector<std::vector<double>> a(rows, std::vector<double>(cols + 1, 0.0));
  for (int r = 0; r < rows; ++r) {
    for (int j = 0; j < n_lambda; ++j)
      a[r][j] = r < d ? (*generators[j])[r] : 1.0;
    a[r][cols] = r < d ? target[r] : 1.0;
    if (a[r][cols] < 0)
      for (int c = 0; c <= cols; ++c) a[r][c] = -a[r][c];
    a[r][n_lambda + r] = 1.0;
  }
  std::vector<int> basis(rows);
  for (int r = 0; r < rows; ++r) basis[r] = n_lambda + r;
  // Reduced costs for minimizing the artificial sum.
  std::vector<double> cost(cols + 1, 0.0);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c <= cols; ++c) cost[c] += a[r][c];
  for (int r = 0; r < rows; ++r) cost[n_lambda + r] -= 1.0;
  for (int iter = 0; iter < 200 * (cols + 1); ++iter) {
    int enter = -1;
    for (int c = 0; c < cols; ++c) {
      if (cost[c] > 1e-12) {  // Bland: first improving column
        enter = c;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best = 0;
    for (int r = 0; r < rows; ++r) {
      if (a[r][enter] <= 1e-12) continue;
      const double ratio = a[r][cols] / a[r][enter];
      if (leave < 0 || ratio < best - 1e-15 ||
          (std::abs(ratio - best) <= 1e-15 && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave < 0) break;  // unbounded cannot happen in phase 1
    const double pivot = a[leave][enter];
    for (int c = 0; c <= cols; ++c) a[leave][c] /= pivot;
    for (int r = 0; r < rows; ++r) {
      if (r == leave) continue;
      const double factor = a[r][enter];
      if (factor == 0) continue;
      for (int c = 0; c <= cols; ++c) a[r][c] -= factor * a[leave][c];
    }
    const double cost_factor = cost[enter];
    for (int c = 0; c <= cols; ++c) cost[c] -= cost_factor * a[leave][c];
    basis[leave] = enter;
  }
  double objective = 0;
  for (int r = 0; r < rows; ++r)
    if (basis[r] >= n_lambda) objective += a[r][cols];
  return objective;
}

}  // namespace detail

// Per-point vertex certificates by linear programming: a point is a vertex
// iff it is not a convex combination of the others. Phase-1 residuals inside
// the gray zone around the tolerance raise degenerate_error so the caller
// can resample.
inline std::vector<bool> vertex_flags_lp(const std::vector<PointXd>& points, int d,
                                         double tolerance = 1e-9) {
  if (points.size() < static_cast<size_t>(d) + 1)
    throw std::domain_error("vertex_flags_lp: need at least d+1 points");
  std::vector<bool> flags(points.size(), false);
  double scale = 1.0;
  for (const auto& p : points)
    for (double x : p) scale = std::max(scale, std::abs(x));
  for (size_t i = 0; i < points.size(); ++i) {
    std::vector<const PointXd*> generators;
    generators.reserve(points.size() - 1);
    for (size_t j = 0; j < points.size(); ++j)
      if (j != i) generators.push_back(&points[j]);
    const double residual =
        detail::phase1_feasibility(generators, points[i], d) / scale;
    if (residual > 100 * tolerance) flags[i] = true;
    else if (residual > 0.01 * tolerance)
      throw degenerate_error("vertex_flags_lp: residual in the gray zone");
  }
  return flags;
}

inline long vertex_count_lp(const std::vector<PointXd>& points, int d,
                            double tolerance = 1e-9) {
  const auto flags = vertex_flags_lp(points, d, tolerance);
  return std::count(flags.begin(), flags.end(), true);
}

}  // namespace lah
