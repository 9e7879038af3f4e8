#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tsg/errors.hpp"
#include "tsg/linalg.hpp"

namespace tsg {

using FpVec = Vec<PrimeField>;
using FpMat = Mat<PrimeField>;

/// A right module over GF(p) given by the matrices of a fixed generating
/// sequence; v ↦ v·gens[g].
struct Module {
  PrimeField field;
  std::size_t dim = 0;
  std::vector<FpMat> gens;
};

namespace detail::poly {

// Coefficients low to high, no trailing zeros; the zero polynomial is empty.
using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::size_t degree(Poly const& a) { return a.empty() ? 0 : a.size() - 1; }

inline Poly sub(PrimeField const& f, Poly a, Poly const& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.sub(a[i], b[i]);
  trim(a);
  return a;
}

inline Poly mul(PrimeField const& f, Poly const& a, Poly const& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = f.add(c[i + j], f.mul(a[i], b[j]));
  trim(c);
  return c;
}

inline std::pair<Poly, Poly> divmod(PrimeField const& f, Poly a, Poly const& m) {
  if (m.empty()) throw InvariantViolation("polynomial division by zero");
  Poly q(a.size() >= m.size() ? a.size() - m.size() + 1 : 0, 0);
  auto lead = f.inv(m.back());
  while (!a.empty() && a.size() >= m.size()) {
    std::size_t shift = a.size() - m.size();
    auto c = f.mul(a.back(), lead);
    q[shift] = c;
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, m[i]));
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline Poly mod(PrimeField const& f, Poly const& a, Poly const& m) { return divmod(f, a, m).second; }

inline Poly monic(PrimeField const& f, Poly a) {
  if (a.empty()) return a;
  auto inv = f.inv(a.back());
  for (auto& c : a) c = f.mul(c, inv);
  return a;
}

inline Poly gcd(PrimeField const& f, Poly a, Poly b) {
  while (!b.empty()) {
    auto r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, a);
}

inline Poly powmod(PrimeField const& f, Poly base, std::uint64_t e, Poly const& m) {
  Poly r{f.one()};
  r = mod(f, r, m);
  base = mod(f, base, m);
  while (e) {
    if (e & 1) r = mod(f, mul(f, r, base), m);
    base = mod(f, mul(f, base, base), m);
    e >>= 1;
  }
  return r;
}

// g is squarefree, monic, and a product of irreducibles of degree d.
inline void split_equal_degree(PrimeField const& f, Poly const& g, std::size_t d, std::mt19937_64& rng,
                               std::vector<Poly>& out) {
  if (degree(g) == d) {
    out.push_back(g);
    return;
  }
  std::uniform_int_distribution<std::uint32_t> coef(0, f.p - 1);
  for (;;) {
    Poly a(degree(g));
    for (auto& c : a) c = coef(rng);
    trim(a);
    if (degree(a) == 0) continue;
    Poly b;
    if (f.p == 2) {
      // Trace a + a² + ⋯ + a^(2^(d−1)).
      Poly t = mod(f, a, g), x = t;
      for (std::size_t i = 1; i < d; ++i) {
        x = mod(f, mul(f, x, x), g);
        t = sub(f, t, sub(f, Poly{}, x));
      }
      b = t;
    } else {
      // a^((p^d − 1)/2) = (a · a^p ⋯ a^(p^(d−1)))^((p − 1)/2).
      Poly prod{f.one()}, x = mod(f, a, g);
      for (std::size_t i = 0; i < d; ++i) {
        prod = mod(f, mul(f, prod, x), g);
        x = powmod(f, x, f.p, g);
      }
      b = sub(f, powmod(f, prod, (f.p - 1) / 2, g), Poly{f.one()});
    }
    auto h = gcd(f, g, b);
    if (degree(h) == 0 || degree(h) == degree(g)) continue;
    split_equal_degree(f, h, d, rng, out);
    split_equal_degree(f, divmod(f, g, h).first, d, rng, out);
    return;
  }
}

/// The distinct monic irreducible factors of a, by degree then coefficients.
inline std::vector<Poly> distinct_irreducible_factors(PrimeField const& f, Poly a, std::mt19937_64& rng) {
  std::vector<Poly> out;
  a = monic(f, a);
  Poly const x{0, f.one()};
  Poly xp = x;  // x^(p^d) mod a
  for (std::size_t d = 1; degree(a) >= 1; ++d) {
    if (2 * d > degree(a)) {
      // No factor of degree below d is left, so a is irreducible.
      out.push_back(a);
      break;
    }
    xp = powmod(f, xp, f.p, a);
    auto g = gcd(f, a, sub(f, xp, x));
    if (degree(g) > 0) {
      split_equal_degree(f, g, d, rng, out);
      while (degree(gcd(f, a, g)) > 0) a = divmod(f, a, gcd(f, a, g)).first;
      a = monic(f, a);
      if (degree(a) >= 1) xp = mod(f, xp, a);
    }
  }
  std::sort(out.begin(), out.end(), [](Poly const& u, Poly const& v) {
    if (u.size() != v.size()) return u.size() < v.size();
    return std::lexicographical_compare(u.rbegin(), u.rend(), v.rbegin(), v.rend());
  });
  return out;
}

}  // namespace detail::poly

namespace detail {

inline FpMat poly_at(PrimeField const& f, poly::Poly const& q, FpMat const& a) {
  std::size_t n = a.size();
  FpMat r = la::zeros(f, n, n);
  for (std::size_t k = q.size(); k-- > 0;) {
    r = la::mul(f, r, a);
    for (std::size_t i = 0; i < n; ++i) r[i][i] = f.add(r[i][i], q[k]);
  }
  return r;
}

// Minimal polynomial of v under a.
inline poly::Poly krylov_polynomial(PrimeField const& f, FpVec const& v, FpMat const& a) {
  EchelonBasis<PrimeField> span(f, v.size());
  FpMat krylov;
  FpVec w = v;
  while (span.add(w)) {
    krylov.push_back(w);
    w = la::vec_mul(f, w, a);
  }
  auto c = la::solve_left(f, krylov, w);
  ensure(c.has_value(), "Krylov vector outside its own span");
  poly::Poly q(krylov.size() + 1, 0);
  for (std::size_t j = 0; j < krylov.size(); ++j) q[j] = f.neg((*c)[j]);
  q.back() = f.one();
  return q;
}

inline FpVec random_vector(PrimeField const& f, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> coef(0, f.p - 1);
  FpVec v(n);
  do
    for (auto& x : v) x = coef(rng);
  while (la::is_zero_vec(f, v));
  return v;
}

}  // namespace detail

/// Smallest subspace containing v and closed under every generator.
inline EchelonBasis<PrimeField> spin(PrimeField const& f, std::vector<FpMat> const& gens, std::size_t n,
                                     std::vector<FpVec> const& seeds) {
  EchelonBasis<PrimeField> b(f, n);
  std::vector<FpVec> queue;
  for (auto const& v : seeds)
    if (b.add(v)) queue.push_back(v);
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (auto const& g : gens) {
      auto w = la::vec_mul(f, queue[i], g);
      if (b.add(w)) queue.push_back(std::move(w));
    }
  return b;
}

inline EchelonBasis<PrimeField> spin(Module const& M, FpVec const& v) { return spin(M.field, M.gens, M.dim, {v}); }

/// Matrix of `a` on an invariant subspace, in the echelon basis of `sub`.
inline FpMat restrict_matrix(PrimeField const& f, FpMat const& a, EchelonBasis<PrimeField> const& sub) {
  FpMat out;
  for (auto const& row : sub.rows()) {
    auto w = la::vec_mul(f, row, a);
    detail::ensure(sub.contains(w), "subspace is not invariant");
    out.push_back(sub.coordinates(w));
  }
  return out;
}

/// Matrix of `a` on K^n / sub, in the basis of unit vectors at free columns.
inline FpMat quotient_matrix(PrimeField const& f, FpMat const& a, EchelonBasis<PrimeField> const& sub) {
  auto free = sub.free_columns();
  FpMat out;
  for (auto j : free) {
    auto w = sub.reduce(a[j]);
    FpVec row;
    for (auto c : free) row.push_back(w[c]);
    out.push_back(std::move(row));
  }
  return out;
}

inline Module submodule(Module const& M, EchelonBasis<PrimeField> const& sub) {
  Module out{M.field, sub.dim(), {}};
  for (auto const& g : M.gens) out.gens.push_back(restrict_matrix(M.field, g, sub));
  return out;
}

inline Module quotient(Module const& M, EchelonBasis<PrimeField> const& sub) {
  Module out{M.field, M.dim - sub.dim(), {}};
  for (auto const& g : M.gens) out.gens.push_back(quotient_matrix(M.field, g, sub));
  return out;
}

namespace detail {

inline FpMat random_algebra_element(Module const& M, std::mt19937_64& rng) {
  auto const& f = M.field;
  std::uniform_int_distribution<std::uint32_t> coef(1, f.p - 1);
  std::uniform_int_distribution<std::size_t> pick(0, M.gens.size() - 1), len(1, 3);
  FpMat a = la::scale(f, coef(rng), la::identity(f, M.dim));
  std::size_t terms = 1 + M.gens.size();
  for (std::size_t t = 0; t < terms; ++t) {
    FpMat w = M.gens[pick(rng)];
    for (std::size_t l = len(rng); l > 1; --l) w = la::mul(f, w, M.gens[pick(rng)]);
    a = la::add(f, a, la::scale(f, coef(rng), w));
  }
  return a;
}

inline FpMat transpose(FpMat const& a) { return la::transpose<PrimeField>(a); }

// Annihilator in K^n of a subspace of the dual: {v : v·w = 0 for all w}.
inline EchelonBasis<PrimeField> annihilator(PrimeField const& f, EchelonBasis<PrimeField> const& dual, std::size_t n) {
  FpMat cols(n, FpVec(dual.dim(), f.zero()));
  for (std::size_t j = 0; j < dual.dim(); ++j)
    for (std::size_t i = 0; i < n; ++i) cols[i][j] = dual.rows()[j][i];
  EchelonBasis<PrimeField> out(f, n);
  for (auto& v : la::left_kernel(f, cols, dual.dim())) out.add(v);
  return out;
}

// Every nonzero vector up to scalars, for the exhaustive fallback.
inline std::optional<EchelonBasis<PrimeField>> exhaustive_submodule(Module const& M) {
  auto const& f = M.field;
  std::size_t n = M.dim;
  for (std::size_t lead = 0; lead < n; ++lead) {
    FpVec v(n, 0);
    v[lead] = f.one();
    std::size_t tail = n - lead - 1;
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < tail; ++i) count *= f.p;
    for (std::uint64_t c = 0; c < count; ++c) {
      std::uint64_t x = c;
      for (std::size_t i = lead + 1; i < n; ++i, x /= f.p) v[i] = static_cast<std::uint32_t>(x % f.p);
      auto b = spin(M, v);
      if (b.dim() < n) return b;
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline constexpr std::size_t exhaustive_dimension = 6;

/// A proper nonzero submodule, or nullopt when M is irreducible.
///
/// Random algebra elements a are tried; for an irreducible factor q of the
/// minimal polynomial of a random vector under a, a vector of ker q(a) is
/// spun. When ker q(a) has dimension deg q, failure to find a submodule by
/// spinning ker q(a) in M and ker q(a)ᵀ in the dual proves irreducibility.
/// After `attempts` inconclusive rounds, dimensions up to 6 are settled by
/// spinning every vector.
inline std::optional<EchelonBasis<PrimeField>> proper_submodule(Module const& M, std::mt19937_64& rng,
                                                                std::size_t attempts = 200) {
  auto const& f = M.field;
  std::size_t n = M.dim;
  if (n == 0) throw PreconditionError("the zero module has no submodule lattice to search");
  if (n == 1) return std::nullopt;
  if (M.gens.empty()) {
    EchelonBasis<PrimeField> b(f, n);
    b.add(detail::random_vector(f, n, rng));
    return b;
  }
  std::vector<FpMat> dual_gens;
  for (auto const& g : M.gens) dual_gens.push_back(detail::transpose(g));
  for (std::size_t round = 0; round < attempts; ++round) {
    auto a = detail::random_algebra_element(M, rng);
    auto mu = detail::krylov_polynomial(f, detail::random_vector(f, n, rng), a);
    // Large factors are costly to evaluate; prefer small ones early on.
    std::size_t max_degree = round < attempts / 2 ? 8 : n;
    for (auto const& q : detail::poly::distinct_irreducible_factors(f, mu, rng)) {
      if (detail::poly::degree(q) > max_degree) break;
      auto qa = detail::poly_at(f, q, a);
      auto ker = la::left_kernel(f, qa, n);
      if (ker.empty()) continue;
      auto b = spin(M, ker.front());
      if (b.dim() < n) return b;
      if (ker.size() != detail::poly::degree(q)) continue;
      auto dker = la::left_kernel(f, detail::transpose(qa), n);
      auto d = spin(f, dual_gens, n, {dker.front()});
      if (d.dim() < n) return detail::annihilator(f, d, n);
      return std::nullopt;
    }
  }
  if (n <= exhaustive_dimension) return detail::exhaustive_submodule(M);
  throw InvariantViolation("submodule search did not settle a module of dimension " + std::to_string(n));
}

inline bool is_irreducible(Module const& M, std::mt19937_64& rng) {
  return M.dim > 0 && !proper_submodule(M, rng).has_value();
}

/// Composition factors, bottom of the series first.
inline std::vector<Module> composition_factors(Module const& M, std::mt19937_64& rng) {
  if (M.dim == 0) return {};
  auto sub = proper_submodule(M, rng);
  if (!sub) return {M};
  auto lo = composition_factors(submodule(M, *sub), rng);
  auto hi = composition_factors(quotient(M, *sub), rng);
  lo.insert(lo.end(), hi.begin(), hi.end());
  return lo;
}

/// Basis of Hom(M, N): matrices X with gens_M[g]·X = X·gens_N[g].
inline std::vector<FpMat> homomorphisms(Module const& M, Module const& N) {
  if (M.gens.size() != N.gens.size()) throw PreconditionError("modules over different generating sequences");
  auto const& f = M.field;
  std::size_t m = M.dim, n = N.dim, unknowns = m * n;
  // One column per linear constraint, one row per unknown X[k][l] = row k*n+l.
  FpMat system(unknowns);
  for (std::size_t g = 0; g < M.gens.size(); ++g) {
    auto const& A = M.gens[g];
    auto const& B = N.gens[g];
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        for (auto& row : system) row.push_back(f.zero());
        std::size_t c = system.empty() ? 0 : system[0].size() - 1;
        for (std::size_t k = 0; k < m; ++k) system[k * n + j][c] = f.add(system[k * n + j][c], A[i][k]);
        for (std::size_t l = 0; l < n; ++l) system[i * n + l][c] = f.sub(system[i * n + l][c], B[l][j]);
      }
  }
  std::vector<FpMat> out;
  std::size_t constraints = system.empty() ? 0 : system[0].size();
  for (auto const& x : la::left_kernel(f, system, constraints)) {
    FpMat X(m, FpVec(n));
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t l = 0; l < n; ++l) X[k][l] = x[k * n + l];
    out.push_back(std::move(X));
  }
  return out;
}

/// An invertible intertwiner M → N when one is found among the Hom basis and
/// a fixed pseudo-random sample of its combinations. For simple modules the
/// answer is exact.
inline std::optional<FpMat> find_isomorphism(Module const& M, Module const& N) {
  if (M.dim != N.dim) return std::nullopt;
  auto hom = homomorphisms(M, N);
  if (hom.empty()) return std::nullopt;
  auto const& f = M.field;
  for (auto const& X : hom)
    if (la::rank(f, X) == M.dim) return X;
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<std::uint32_t> coef(0, f.p - 1);
  for (int trial = 0; trial < 64; ++trial) {
    FpMat X = la::zeros(f, M.dim, M.dim);
    for (auto const& h : hom) X = la::add(f, X, la::scale(f, coef(rng), h));
    if (la::rank(f, X) == M.dim) return X;
  }
  return std::nullopt;
}

inline bool isomorphic(Module const& M, Module const& N) { return find_isomorphism(M, N).has_value(); }

inline bool is_zero_module(Module const& M) {
  for (auto const& g : M.gens)
    if (!la::is_zero(M.field, g)) return false;
  return true;
}

/// Isomorphism classes of simple modules with multiplicities, in order of
/// first appearance.
struct ModuleClass {
  Module module;
  std::size_t multiplicity = 0;
};

inline std::vector<ModuleClass> classify_simple(std::vector<Module> const& factors) {
  std::vector<ModuleClass> out;
  for (auto const& M : factors) {
    auto it = std::find_if(out.begin(), out.end(), [&](ModuleClass const& c) { return isomorphic(c.module, M); });
    if (it == out.end())
      out.push_back({M, 1});
    else
      ++it->multiplicity;
  }
  return out;
}

}  // namespace tsg
