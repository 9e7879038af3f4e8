#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "tsg/errors.hpp"
#include "tsg/linalg.hpp"
#include "tsg/lp.hpp"
#include "tsg/rational.hpp"
#include "tsg/semigroup.hpp"

namespace tsg {

/// Square matrix with nonnegative exact entries and unit row sums.
class StochasticMatrix {
 public:
  StochasticMatrix() = default;

  explicit StochasticMatrix(RationalMatrix entries) : a_(std::move(entries)) {
    std::size_t n = a_.size();
    if (n == 0) throw PreconditionError("stochastic matrix must be nonempty");
    for (std::size_t i = 0; i < n; ++i) {
      if (a_[i].size() != n) throw PreconditionError("stochastic matrix is not square");
      Rational sum = 0;
      for (auto& x : a_[i]) {
        x.canonicalize();
        if (x < 0) throw PreconditionError("negative entry in row " + std::to_string(i));
        sum += x;
      }
      if (sum != 1) throw PreconditionError("row " + std::to_string(i) + " sums to " + format_rational(sum));
    }
  }

  static StochasticMatrix identity(std::size_t n) {
    RationalMatrix m(n, RationalVector(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return StochasticMatrix(std::move(m));
  }

  /// The 0/1 matrix of a transformation: row x has its 1 in column x t.
  static StochasticMatrix of(Transformation const& t) {
    RationalMatrix m(t.degree(), RationalVector(t.degree(), Rational(0)));
    for (index_t x = 0; x < t.degree(); ++x) m[x][t[x]] = 1;
    return StochasticMatrix(std::move(m));
  }

  std::size_t size() const noexcept { return a_.size(); }
  RationalMatrix const& entries() const noexcept { return a_; }
  Rational const& operator()(std::size_t i, std::size_t j) const { return a_[i][j]; }

  StochasticMatrix operator*(StochasticMatrix const& b) const {
    if (b.size() != size()) throw PreconditionError("stochastic product: size mismatch");
    return StochasticMatrix(la::mul(RationalField{}, a_, b.a_));
  }

  bool is_idempotent() const { return (*this) * (*this) == *this; }

  friend bool operator==(StochasticMatrix const&, StochasticMatrix const&) = default;

 private:
  RationalMatrix a_;
};

/// A probability distribution on {0, ..., base-1} with explicit finite support.
class Distribution {
 public:
  Distribution() = default;

  Distribution(std::size_t base, std::map<index_t, Rational> weights) : base_(base) {
    Rational sum = 0;
    for (auto& [k, w] : weights) {
      if (k >= base) throw PreconditionError("distribution index " + std::to_string(k) + " out of range");
      w.canonicalize();
      if (w < 0) throw PreconditionError("negative probability weight");
      if (w != 0) w_.emplace(k, w);
      sum += w;
    }
    if (sum != 1) throw PreconditionError("distribution weights sum to " + format_rational(sum));
  }

  static Distribution point(std::size_t base, index_t x) { return Distribution(base, {{x, Rational(1)}}); }

  static Distribution uniform(std::size_t base, std::vector<index_t> const& support) {
    std::map<index_t, Rational> w;
    for (auto x : support) w[x] += Rational(1, static_cast<unsigned long>(support.size()));
    return Distribution(base, std::move(w));
  }

  static Distribution from_vector(RationalVector const& v) {
    std::map<index_t, Rational> w;
    for (index_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) w[i] = v[i];
    return Distribution(v.size(), std::move(w));
  }

  std::size_t base() const noexcept { return base_; }
  std::map<index_t, Rational> const& weights() const noexcept { return w_; }
  Rational weight(index_t x) const {
    auto it = w_.find(x);
    return it == w_.end() ? Rational(0) : it->second;
  }
  std::vector<index_t> support() const {
    std::vector<index_t> s;
    for (auto const& [k, w] : w_) s.push_back(k);
    return s;
  }
  RationalVector to_vector() const {
    RationalVector v(base_, Rational(0));
    for (auto const& [k, w] : w_) v[k] = w;
    return v;
  }

  friend bool operator==(Distribution const&, Distribution const&) = default;

 private:
  std::size_t base_ = 0;
  std::map<index_t, Rational> w_;  // strictly positive weights only
};

/// (μ_xy) = Σ_s μ(s)·(s_xy) for μ over the elements of S.
inline StochasticMatrix matrix_of(FiniteSemigroup const& S, Distribution const& mu) {
  if (mu.base() != S.size()) throw PreconditionError("matrix_of: distribution is not over this semigroup");
  std::size_t n = S.degree();
  RationalMatrix m(n, RationalVector(n, Rational(0)));
  for (auto const& [s, w] : mu.weights())
    for (index_t x = 0; x < n; ++x) m[x][S.at(s)[x]] += w;
  return StochasticMatrix(std::move(m));
}

/// (μ∗ν)(s) = Σ_{s=tu} μ(t)ν(u).
inline Distribution convolve(FiniteSemigroup const& S, Distribution const& mu, Distribution const& nu) {
  if (mu.base() != S.size() || nu.base() != S.size())
    throw PreconditionError("convolve: distributions over different base sets");
  std::map<index_t, Rational> w;
  for (auto const& [t, a] : mu.weights())
    for (auto const& [u, b] : nu.weights()) w[S.product(t, u)] += a * b;
  return Distribution(S.size(), std::move(w));
}

namespace detail {

inline RationalMatrix unique_sorted(RationalMatrix rows) {
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return rows;
}

inline bool is_zero_vector(RationalVector const& v) {
  return std::all_of(v.begin(), v.end(), [](Rational const& x) { return x == 0; });
}

// Positive scalar c with a = c·b, if any (both nonzero, nonnegative).
inline std::optional<Rational> proportionality(RationalVector const& a, RationalVector const& b) {
  std::optional<Rational> c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] == 0) != (b[i] == 0)) return std::nullopt;
    if (a[i] == 0) continue;
    Rational r = a[i] / b[i];
    if (c && *c != r) return std::nullopt;
    c = r;
  }
  return c;
}

inline RationalMatrix columns_of(RationalMatrix const& rows, std::size_t ncols) {
  RationalMatrix c(ncols, RationalVector(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < ncols; ++j) c[j][i] = rows[i][j];
  return c;
}

// Column merge of a k×n matrix given as rows. Returns sorted merged columns
// and, for each original column, its merged position (nullopt for zero
// columns) together with its share β of that merged column.
struct ColumnMerge {
  RationalMatrix columns;
  std::vector<std::optional<std::size_t>> target;
  RationalVector share;
};

inline ColumnMerge merge_columns(RationalMatrix const& rows, std::size_t ncols) {
  auto cols = columns_of(rows, ncols);
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::optional<std::size_t>> cls(ncols);
  for (std::size_t j = 0; j < ncols; ++j) {
    if (is_zero_vector(cols[j])) continue;
    for (std::size_t c = 0; c < classes.size() && !cls[j]; ++c)
      if (proportionality(cols[j], cols[classes[c].front()])) {
        classes[c].push_back(j);
        cls[j] = c;
      }
    if (!cls[j]) {
      cls[j] = classes.size();
      classes.push_back({j});
    }
  }
  RationalMatrix merged;
  for (auto const& c : classes) {
    RationalVector sum(rows.size(), Rational(0));
    for (auto j : c)
      for (std::size_t i = 0; i < rows.size(); ++i) sum[i] += cols[j][i];
    merged.push_back(sum);
  }
  std::vector<std::size_t> order(merged.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return merged[a] < merged[b]; });
  std::vector<std::size_t> rank(merged.size());
  for (std::size_t p = 0; p < order.size(); ++p) rank[order[p]] = p;

  ColumnMerge out;
  for (auto p : order) out.columns.push_back(merged[p]);
  out.target.resize(ncols);
  out.share.assign(ncols, Rational(0));
  for (std::size_t j = 0; j < ncols; ++j) {
    if (!cls[j]) continue;
    out.target[j] = rank[*cls[j]];
    out.share[j] = *proportionality(cols[j], merged[*cls[j]]);
  }
  return out;
}

}  // namespace detail

/// Rows of M that are not convex combinations of the other distinct rows,
/// deduplicated and sorted.
inline RationalMatrix reduced_row_form(StochasticMatrix const& M) {
  auto rows = detail::unique_sorted(M.entries());
  RationalMatrix out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    RationalMatrix others;
    for (std::size_t j = 0; j < rows.size(); ++j)
      if (j != i) others.push_back(rows[j]);
    if (!convex_weights(others, rows[i])) out.push_back(rows[i]);
  }
  return out;
}

/// Nonzero columns of M with proportional ones summed, sorted. Each entry of
/// the result is a column vector of length n.
inline RationalMatrix reduced_column_form(StochasticMatrix const& M) {
  return detail::merge_columns(M.entries(), M.size()).columns;
}

/// Column form of the reduced row form, minimized over orderings of the
/// extreme rows so that equal forms compare equal syntactically.
inline RationalMatrix reduced_echelon_form(StochasticMatrix const& M) {
  auto rows = reduced_row_form(M);
  if (rows.size() > 8) throw BoundExceeded("reduced_echelon_form: more than 8 extreme rows");
  std::vector<std::size_t> perm(rows.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<RationalMatrix> best;
  do {
    RationalMatrix permuted;
    for (auto p : perm) permuted.push_back(rows[p]);
    auto cols = detail::merge_columns(permuted, M.size()).columns;
    if (!best || cols < *best) best = cols;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return *best;
}

/// Extreme rows, merged columns and the combined form together.
struct ConeCanonicalForm {
  RationalMatrix extreme_rows;
  RationalMatrix merged_columns;
  RationalMatrix combined;
  friend bool operator==(ConeCanonicalForm const&, ConeCanonicalForm const&) = default;
};

inline ConeCanonicalForm canonical_form(StochasticMatrix const& M) {
  return {reduced_row_form(M), reduced_column_form(M), reduced_echelon_form(M)};
}

enum class GreenRelation { L, R, J, H };

inline GreenRelation parse_green_relation(std::string const& s) {
  if (s == "L") return GreenRelation::L;
  if (s == "R") return GreenRelation::R;
  if (s == "J") return GreenRelation::J;
  if (s == "H") return GreenRelation::H;
  throw ParseError("unknown Green relation '" + s + "' (expected L, R, J or H)");
}

inline char to_char(GreenRelation r) {
  switch (r) {
    case GreenRelation::L: return 'L';
    case GreenRelation::R: return 'R';
    case GreenRelation::J: return 'J';
    case GreenRelation::H: return 'H';
  }
  return '?';
}

/// Verdict with multiplier witnesses: for L, q·M = N and p·N = M; for R,
/// N = M·q and M = N·p. All witnesses are stochastic and checked exactly.
struct GreenVerdict {
  bool related = false;
  std::optional<StochasticMatrix> left_q, left_p;
  std::optional<StochasticMatrix> right_q, right_p;
};

namespace detail {

// Stochastic q with q·M = N (each row of N a convex combination of rows of M).
inline std::optional<StochasticMatrix> row_multiplier(StochasticMatrix const& M, StochasticMatrix const& N) {
  std::size_t n = M.size();
  RationalMatrix q(n, RationalVector(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    auto w = convex_weights(M.entries(), N.entries()[i]);
    if (!w) return std::nullopt;
    q[i] = *w;
  }
  StochasticMatrix Q(std::move(q));
  ensure(Q * M == N, "row multiplier witness fails");
  return Q;
}

// Q (n×c) with M·Q = merged columns and P (c×n) with merged·P = M.
inline std::pair<RationalMatrix, RationalMatrix> column_maps(StochasticMatrix const& M) {
  std::size_t n = M.size();
  auto cm = merge_columns(M.entries(), n);
  std::size_t c = cm.columns.size();
  RationalMatrix Q(n, RationalVector(c, Rational(0))), P(c, RationalVector(n, Rational(0)));
  for (std::size_t j = 0; j < n; ++j) {
    Q[j][cm.target[j].value_or(0)] = 1;
    if (cm.target[j]) P[*cm.target[j]][j] = cm.share[j];
  }
  return {Q, P};
}

}  // namespace detail

inline GreenVerdict green_test(StochasticMatrix const& M, StochasticMatrix const& N, GreenRelation rel) {
  if (M.size() != N.size()) throw PreconditionError("green_test: size mismatch");
  GreenVerdict v;
  auto want_l = rel == GreenRelation::L || rel == GreenRelation::H;
  auto want_r = rel == GreenRelation::R || rel == GreenRelation::H;
  if (rel == GreenRelation::J) {
    v.related = reduced_echelon_form(M) == reduced_echelon_form(N);
    return v;
  }
  bool ok = true;
  if (want_l) {
    bool l = reduced_row_form(M) == reduced_row_form(N);
    if (l) {
      v.left_q = detail::row_multiplier(M, N);
      v.left_p = detail::row_multiplier(N, M);
      detail::ensure(v.left_q && v.left_p, "L-equivalent matrices without row multipliers");
    }
    ok = ok && l;
  }
  if (want_r) {
    bool r = reduced_column_form(M) == reduced_column_form(N);
    if (r) {
      auto [qm, pm] = detail::column_maps(M);
      auto [qn, pn] = detail::column_maps(N);
      RationalField f;
      StochasticMatrix q(la::mul(f, qm, pn)), p(la::mul(f, qn, pm));
      detail::ensure(M * q == N, "R witness fails: M q != N");
      detail::ensure(N * p == M, "R witness fails: N p != M");
      v.right_q = std::move(q);
      v.right_p = std::move(p);
    }
    ok = ok && r;
  }
  v.related = ok;
  return v;
}

inline std::size_t rank(StochasticMatrix const& M) { return la::rank(RationalField{}, M.entries()); }

/// Block structure of an idempotent stochastic matrix.
struct DoobAnalysis {
  bool is_idempotent = false;
  std::size_t rank = 0;
  /// perm[r] = original state placed at position r: recurrent states grouped
  /// by block, then transient states.
  std::vector<index_t> perm;
  std::vector<std::vector<index_t>> blocks;  // recurrent states per block
  std::vector<index_t> transient;
  RationalMatrix e;  // recurrent×recurrent block-diagonal part (permuted)
  RationalMatrix s;  // transient×recurrent stochastic part
};

inline DoobAnalysis doob_analyze(StochasticMatrix const& E) {
  DoobAnalysis d;
  d.is_idempotent = E.is_idempotent();
  if (!d.is_idempotent) return d;
  std::size_t n = E.size();
  auto const& a = E.entries();
  std::vector<bool> recurrent(n, false);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (a[i][j] != 0) recurrent[j] = true;
  for (index_t i = 0; i < n; ++i) {
    if (!recurrent[i]) {
      d.transient.push_back(i);
      continue;
    }
    auto it = std::find_if(d.blocks.begin(), d.blocks.end(), [&](auto const& b) { return a[b.front()] == a[i]; });
    if (it == d.blocks.end())
      d.blocks.push_back({i});
    else
      it->push_back(i);
  }
  for (auto const& b : d.blocks) d.perm.insert(d.perm.end(), b.begin(), b.end());
  d.perm.insert(d.perm.end(), d.transient.begin(), d.transient.end());
  std::size_t r = n - d.transient.size();

  d.e.assign(r, RationalVector(r, Rational(0)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) d.e[i][j] = a[d.perm[i]][d.perm[j]];
  // s: each transient row's mass on a block goes to the block's first state.
  d.s.assign(d.transient.size(), RationalVector(r, Rational(0)));
  for (std::size_t t = 0; t < d.transient.size(); ++t) {
    std::size_t pos = 0;
    for (auto const& b : d.blocks) {
      Rational mass = 0;
      for (auto x : b) mass += a[d.transient[t]][x];
      d.s[t][pos] = mass;
      pos += b.size();
    }
  }

  // Each block is a rank-one stochastic matrix supported inside the block.
  std::size_t pos = 0;
  for (auto const& b : d.blocks) {
    for (std::size_t i = pos; i < pos + b.size(); ++i)
      for (std::size_t j = 0; j < r; ++j) {
        bool inside = j >= pos && j < pos + b.size();
        detail::ensure(inside || d.e[i][j] == 0, "Doob block leaks outside its block");
      }
    pos += b.size();
  }
  // Reconstruction: p E pᵀ = [[e, 0], [s e, 0]].
  RationalField f;
  auto se = la::mul(f, d.s, d.e);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational want = 0;
      if (j < r) want = i < r ? d.e[i][j] : se[i - r][j];
      detail::ensure(a[d.perm[i]][d.perm[j]] == want, "Doob reconstruction differs from E");
    }
  d.rank = rank(E);
  detail::ensure(d.rank == d.blocks.size(), "Doob block count differs from rank");
  return d;
}

/// rank E == rank F for idempotents, cross-checked against the J test.
inline bool idempotent_j_invariant(StochasticMatrix const& E, StochasticMatrix const& F) {
  if (!E.is_idempotent() || !F.is_idempotent())
    throw PreconditionError("idempotent_j_invariant: input is not idempotent");
  bool same = rank(E) == rank(F);
  detail::ensure(same == green_test(E, F, GreenRelation::J).related,
                 "rank criterion disagrees with the canonical-form J test");
  return same;
}

}  // namespace tsg
