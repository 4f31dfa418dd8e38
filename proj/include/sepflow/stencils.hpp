#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "sepflow/types.hpp"

namespace sepflow {

// Finite-difference weights on arbitrary nodes (Fornberg's recursion).
// Returns w such that f^(m)(x0) ~= sum_k w[k] f(xs[k]).  Exact for
// polynomials of degree < xs.size().
inline std::vector<Real> fd_weights(Real x0, std::span<const Real> xs, int m) {
  const int n = static_cast<int>(xs.size());
  if (n < m + 1) throw PreconditionError("fd_weights: too few nodes for derivative order");
  // w[j][k]: weight of node j for the k-th derivative over the nodes seen so far.
  std::vector<std::vector<Real>> w(n, std::vector<Real>(m + 1, 0.0));
  w[0][0] = 1.0;
  Real c1 = 1.0;
  Real c4 = xs[0] - x0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    Real c2 = 1.0;
    const Real c5 = c4;
    c4 = xs[i] - x0;
    for (int j = 0; j < i; ++j) {
      const Real c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          w[i][k] = c1 * (k * w[i - 1][k - 1] - c5 * w[i - 1][k]) / c2;
        w[i][0] = -c1 * c5 * w[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k)
        w[j][k] = (c4 * w[j][k] - k * w[j][k - 1]) / c3;
      w[j][0] = c4 * w[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<Real> out(n);
  for (int j = 0; j < n; ++j) out[j] = w[j][m];
  return out;
}

// Weights for the m-th derivative at node `at` of a uniform grid with
// spacing h, using the `count` nodes starting at index `first`.
inline std::vector<Real> fd_weights_uniform(int at, int first, int count, Real h, int m) {
  std::vector<Real> xs(count);
  for (int i = 0; i < count; ++i) xs[i] = (first + i - at) * h;
  return fd_weights(0.0, xs, m);
}

}  // namespace sepflow
