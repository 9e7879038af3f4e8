#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsg/errors.hpp"
#include "tsg/rational.hpp"

namespace tsg {

/// ℚ with exact GMP arithmetic.
struct RationalField {
  using value_type = Rational;
  std::uint32_t characteristic() const noexcept { return 0; }
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long x) const { return x; }
  value_type add(value_type const& a, value_type const& b) const { return a + b; }
  value_type sub(value_type const& a, value_type const& b) const { return a - b; }
  value_type mul(value_type const& a, value_type const& b) const { return a * b; }
  value_type div(value_type const& a, value_type const& b) const { return a / b; }
  value_type neg(value_type const& a) const { return -a; }
  bool is_zero(value_type const& a) const { return a == 0; }
  std::string to_string(value_type const& a) const { return format_rational(a); }
  friend bool operator==(RationalField, RationalField) { return true; }
};

/// GF(p) for a prime p chosen at run time.
struct PrimeField {
  using value_type = std::uint32_t;
  std::uint32_t p = 2;

  PrimeField() = default;
  explicit PrimeField(std::uint32_t prime) : p(prime) {
    if (!is_prime(prime)) throw PreconditionError("field characteristic " + std::to_string(prime) + " is not prime");
  }

  static bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  std::uint32_t characteristic() const noexcept { return p; }
  value_type zero() const { return 0; }
  value_type one() const { return 1 % p; }
  value_type from_int(long x) const {
    long r = x % static_cast<long>(p);
    return static_cast<value_type>(r < 0 ? r + p : r);
  }
  value_type add(value_type a, value_type b) const { return static_cast<value_type>((std::uint64_t{a} + b) % p); }
  value_type sub(value_type a, value_type b) const { return static_cast<value_type>((std::uint64_t{a} + p - b) % p); }
  value_type mul(value_type a, value_type b) const { return static_cast<value_type>((std::uint64_t{a} * b) % p); }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type inv(value_type a) const {
    if (a == 0) throw PreconditionError("division by zero in GF(p)");
    // Fermat: a^(p-2)
    std::uint64_t r = 1, b = a, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return static_cast<value_type>(r);
  }
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }
  bool is_zero(value_type a) const { return a == 0; }
  std::string to_string(value_type a) const { return std::to_string(a); }
  friend bool operator==(PrimeField a, PrimeField b) { return a.p == b.p; }
};

template <class F>
using Vec = std::vector<typename F::value_type>;
template <class F>
using Mat = std::vector<Vec<F>>;

namespace la {

template <class F>
Mat<F> zeros(F const& f, std::size_t r, std::size_t c) {
  return Mat<F>(r, Vec<F>(c, f.zero()));
}

template <class F>
Mat<F> identity(F const& f, std::size_t n) {
  auto m = zeros(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = f.one();
  return m;
}

template <class F>
std::size_t cols(Mat<F> const& a, std::size_t fallback = 0) {
  return a.empty() ? fallback : a[0].size();
}

template <class F>
Mat<F> mul(F const& f, Mat<F> const& a, Mat<F> const& b) {
  std::size_t n = a.size(), k = b.size(), m = cols<F>(b);
  auto c = zeros(f, n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (f.is_zero(a[i][l])) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] = f.add(c[i][j], f.mul(a[i][l], b[l][j]));
    }
  return c;
}

template <class F>
Vec<F> vec_mul(F const& f, Vec<F> const& v, Mat<F> const& a) {
  Vec<F> out(cols<F>(a), f.zero());
  for (std::size_t l = 0; l < v.size(); ++l) {
    if (f.is_zero(v[l])) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = f.add(out[j], f.mul(v[l], a[l][j]));
  }
  return out;
}

template <class F>
Mat<F> add(F const& f, Mat<F> const& a, Mat<F> const& b) {
  Mat<F> c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] = f.add(a[i][j], b[i][j]);
  return c;
}

template <class F>
Mat<F> scale(F const& f, typename F::value_type const& s, Mat<F> const& a) {
  Mat<F> c = a;
  for (auto& row : c)
    for (auto& x : row) x = f.mul(s, x);
  return c;
}

template <class F>
Mat<F> transpose(Mat<F> const& a, std::size_t ncols = 0) {
  std::size_t r = a.size(), c = cols<F>(a, ncols);
  Mat<F> t(c, Vec<F>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) t[j][i] = a[i][j];
  return t;
}

template <class F>
bool is_zero(F const& f, Mat<F> const& a) {
  for (auto const& row : a)
    for (auto const& x : row)
      if (!f.is_zero(x)) return false;
  return true;
}

template <class F>
bool is_zero_vec(F const& f, Vec<F> const& v) {
  for (auto const& x : v)
    if (!f.is_zero(x)) return false;
  return true;
}

}  // namespace la

/// A subspace of K^n held as a reduced row echelon basis: every basis row has
/// a leading 1 at its pivot and zeros at all other pivots.
template <class F>
class EchelonBasis {
 public:
  EchelonBasis(F f, std::size_t n) : f_(std::move(f)), n_(n) {}

  std::size_t ambient() const noexcept { return n_; }
  std::size_t dim() const noexcept { return rows_.size(); }
  Mat<F> const& rows() const noexcept { return rows_; }
  std::vector<std::size_t> const& pivots() const noexcept { return pivots_; }
  F const& field() const noexcept { return f_; }

  /// v minus its projection onto the span along pivot columns.
  Vec<F> reduce(Vec<F> v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      auto c = v[pivots_[i]];
      if (f_.is_zero(c)) continue;
      for (std::size_t j = 0; j < n_; ++j) v[j] = f_.sub(v[j], f_.mul(c, rows_[i][j]));
    }
    return v;
  }

  bool contains(Vec<F> const& v) const { return la::is_zero_vec(f_, reduce(v)); }

  /// Adds v to the span; returns false when v was already inside.
  bool add(Vec<F> v) {
    v = reduce(std::move(v));
    std::size_t p = 0;
    while (p < n_ && f_.is_zero(v[p])) ++p;
    if (p == n_) return false;
    auto inv = f_.div(f_.one(), v[p]);
    for (auto& x : v) x = f_.mul(inv, x);
    for (auto& row : rows_) {
      auto c = row[p];
      if (f_.is_zero(c)) continue;
      for (std::size_t j = 0; j < n_; ++j) row[j] = f_.sub(row[j], f_.mul(c, v[j]));
    }
    // Keep rows sorted by pivot.
    std::size_t at = 0;
    while (at < pivots_.size() && pivots_[at] < p) ++at;
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(at), std::move(v));
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(at), p);
    return true;
  }

  /// Coordinates of v (assumed inside the span) in this basis.
  Vec<F> coordinates(Vec<F> const& v) const {
    Vec<F> c(rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) c[i] = v[pivots_[i]];
    return c;
  }

  /// Non-pivot columns; unit vectors there span a complement.
  std::vector<std::size_t> free_columns() const {
    std::vector<std::size_t> out;
    std::size_t k = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      if (k < pivots_.size() && pivots_[k] == j) {
        ++k;
        continue;
      }
      out.push_back(j);
    }
    return out;
  }

  friend bool operator==(EchelonBasis const& a, EchelonBasis const& b) {
    return a.n_ == b.n_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
  }

 private:
  F f_;
  std::size_t n_;
  Mat<F> rows_;
  std::vector<std::size_t> pivots_;
};

namespace la {

template <class F>
std::size_t rank(F const& f, Mat<F> const& a) {
  EchelonBasis<F> b(f, cols<F>(a));
  for (auto const& row : a) b.add(row);
  return b.dim();
}

/// Basis of {v : v A = 0} (A is r×c, v has length r).
template <class F>
Mat<F> left_kernel(F const& f, Mat<F> const& a, std::size_t ncols = 0) {
  std::size_t r = a.size(), c = cols<F>(a, ncols);
  // Row-reduce [A | I]; rows whose A-part vanishes give the kernel.
  Mat<F> aug(r, Vec<F>(c + r, f.zero()));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) aug[i][j] = a[i][j];
    aug[i][c + i] = f.one();
  }
  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < r; ++col) {
    std::size_t piv = row;
    while (piv < r && f.is_zero(aug[piv][col])) ++piv;
    if (piv == r) continue;
    std::swap(aug[piv], aug[row]);
    auto inv = f.div(f.one(), aug[row][col]);
    for (auto& x : aug[row]) x = f.mul(inv, x);
    for (std::size_t i = 0; i < r; ++i) {
      if (i == row || f.is_zero(aug[i][col])) continue;
      auto m = aug[i][col];
      for (std::size_t j = 0; j < c + r; ++j) aug[i][j] = f.sub(aug[i][j], f.mul(m, aug[row][j]));
    }
    ++row;
  }
  EchelonBasis<F> kb(f, r);
  for (std::size_t i = row; i < r; ++i) kb.add(Vec<F>(aug[i].begin() + static_cast<std::ptrdiff_t>(c), aug[i].end()));
  return kb.rows();
}

/// Some x with x A = b, or nullopt.
template <class F>
std::optional<Vec<F>> solve_left(F const& f, Mat<F> const& a, Vec<F> const& b) {
  std::size_t r = a.size(), c = b.size();
  // Solve Aᵀ xᵀ = bᵀ by elimination on [Aᵀ | b].
  Mat<F> m(c, Vec<F>(r + 1, f.zero()));
  for (std::size_t j = 0; j < c; ++j) {
    for (std::size_t i = 0; i < r; ++i) m[j][i] = a[i][j];
    m[j][r] = b[j];
  }
  std::vector<std::size_t> pivcol;
  std::size_t row = 0;
  for (std::size_t col = 0; col < r && row < c; ++col) {
    std::size_t piv = row;
    while (piv < c && f.is_zero(m[piv][col])) ++piv;
    if (piv == c) continue;
    std::swap(m[piv], m[row]);
    auto inv = f.div(f.one(), m[row][col]);
    for (auto& x : m[row]) x = f.mul(inv, x);
    for (std::size_t i = 0; i < c; ++i) {
      if (i == row || f.is_zero(m[i][col])) continue;
      auto k = m[i][col];
      for (std::size_t j = 0; j <= r; ++j) m[i][j] = f.sub(m[i][j], f.mul(k, m[row][j]));
    }
    pivcol.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < c; ++i)
    if (!f.is_zero(m[i][r])) return std::nullopt;
  Vec<F> x(r, f.zero());
  for (std::size_t i = 0; i < pivcol.size(); ++i) x[pivcol[i]] = m[i][r];
  return x;
}

}  // namespace la

}  // namespace tsg
