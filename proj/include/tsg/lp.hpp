#pragma once

#include <optional>
#include <vector>

#include "tsg/errors.hpp"
#include "tsg/rational.hpp"

namespace tsg {

/// Some x ≥ 0 with A x = b, or nullopt. Exact phase-I simplex with Bland's
/// rule, so it terminates on degenerate inputs.
inline std::optional<RationalVector> nonnegative_solution(RationalMatrix const& A, RationalVector const& b) {
  std::size_t const m = A.size();
  if (b.size() != m) throw PreconditionError("nonnegative_solution: shape mismatch");
  std::size_t const n = m ? A[0].size() : 0;
  if (m == 0) return RationalVector(n, Rational(0));

  std::size_t const width = n + m + 1, rhs = n + m;
  RationalMatrix T(m + 1, RationalVector(width, Rational(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (A[i].size() != n) throw PreconditionError("nonnegative_solution: ragged matrix");
    bool flip = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) T[i][j] = flip ? Rational(-A[i][j]) : A[i][j];
    T[i][rhs] = flip ? Rational(-b[i]) : b[i];
    T[i][n + i] = 1;
    basis[i] = n + i;
  }
  // Objective row: reduced costs of the artificial sum.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) T[m][j] -= T[i][j];
    T[m][rhs] -= T[i][rhs];
  }

  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < n + m; ++j)
      if (T[m][j] < 0) {
        enter = j;
        break;
      }
    if (enter == width) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (T[i][enter] <= 0) continue;
      Rational ratio = T[i][rhs] / T[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    detail::ensure(leave != m, "phase-I simplex is unbounded");
    Rational piv = T[leave][enter];
    for (auto& x : T[leave]) x /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || T[i][enter] == 0) continue;
      Rational f = T[i][enter];
      for (std::size_t j = 0; j < width; ++j)
        if (T[leave][j] != 0) T[i][j] -= f * T[leave][j];
    }
    basis[leave] = enter;
  }
  if (T[m][rhs] != 0) return std::nullopt;

  RationalVector x(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = T[i][rhs];
  for (std::size_t i = 0; i < m; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < n; ++j) s += A[i][j] * x[j];
    detail::ensure(s == b[i], "simplex solution does not satisfy A x = b");
  }
  return x;
}

/// Convex weights λ ≥ 0, Σλ = 1 with Σ λ_j points[j] = target, or nullopt.
inline std::optional<RationalVector> convex_weights(RationalMatrix const& points, RationalVector const& target) {
  std::size_t const k = points.size(), d = target.size();
  if (k == 0) return std::nullopt;
  RationalMatrix A(d + 1, RationalVector(k));
  RationalVector b(d + 1);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t j = 0; j < k; ++j) A[r][j] = points[j].at(r);
    b[r] = target[r];
  }
  for (std::size_t j = 0; j < k; ++j) A[d][j] = 1;
  b[d] = 1;
  return nonnegative_solution(A, b);
}

}  // namespace tsg
