#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tsg/green.hpp"
#include "tsg/group.hpp"
#include "tsg/holonomy.hpp"
#include "tsg/module.hpp"
#include "tsg/schutzenberger.hpp"
#include "tsg/zeiger.hpp"

namespace tsg {

/// Matrices of every element of a semigroup or group, indexed like its
/// elements; a representation is a right module, so action[st] = action[s]·action[t].
struct MatrixRepresentation {
  PrimeField field;
  std::size_t dim = 0;
  std::vector<FpMat> action;
};

/// Annihilator and apex of a module. `matches` counts the regular J-classes
/// whose idempotent satisfies the apex equation.
struct ApexData {
  std::vector<index_t> annihilator;
  std::optional<index_t> apex_idempotent;
  std::optional<index_t> j_class;
  std::size_t matches = 0;
  bool valid = false;
};

inline constexpr std::size_t default_regular_module_bound = 512;

inline Module as_module(FiniteSemigroup const& S, MatrixRepresentation const& M) {
  Module out{M.field, M.dim, {}};
  for (std::size_t g = 0; g < S.number_of_generators(); ++g) out.gens.push_back(M.action[S.generator_element(g)]);
  return out;
}

inline Module as_module(Group const& G, MatrixRepresentation const& M) {
  Module out{M.field, M.dim, {}};
  for (auto g : G.small_generating_set()) out.gens.push_back(M.action[g]);
  return out;
}

/// Extends generator matrices to every element along the right Cayley graph.
inline MatrixRepresentation expand(FiniteSemigroup const& S, Module const& M) {
  MatrixRepresentation out{M.field, M.dim, std::vector<FpMat>(S.size())};
  std::vector<bool> done(S.size(), false);
  std::vector<index_t> queue;
  for (std::size_t g = 0; g < S.number_of_generators(); ++g) {
    index_t x = S.generator_element(g);
    if (done[x]) continue;
    done[x] = true;
    out.action[x] = M.gens[g];
    queue.push_back(x);
  }
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (std::size_t g = 0; g < S.number_of_generators(); ++g) {
      index_t y = S.right(queue[i], g);
      if (done[y]) continue;
      done[y] = true;
      out.action[y] = la::mul(M.field, out.action[queue[i]], M.gens[g]);
      queue.push_back(y);
    }
  return out;
}

inline MatrixRepresentation expand(Group const& G, Module const& M) {
  auto gens = G.small_generating_set();
  MatrixRepresentation out{M.field, M.dim, std::vector<FpMat>(G.order())};
  std::vector<bool> done(G.order(), false);
  std::vector<index_t> queue{G.identity()};
  done[G.identity()] = true;
  out.action[G.identity()] = la::identity(M.field, M.dim);
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (std::size_t g = 0; g < gens.size(); ++g) {
      index_t y = G.mul(queue[i], gens[g]);
      if (done[y]) continue;
      done[y] = true;
      out.action[y] = la::mul(M.field, out.action[queue[i]], M.gens[g]);
      queue.push_back(y);
    }
  return out;
}

/// action[t]·action[g] = action[tg] for every element t and generator g.
inline bool is_multiplicative(FiniteSemigroup const& S, MatrixRepresentation const& M) {
  for (index_t t = 0; t < S.size(); ++t)
    for (std::size_t g = 0; g < S.number_of_generators(); ++g)
      if (la::mul(M.field, M.action[t], M.action[S.generator_element(g)]) != M.action[S.right(t, g)]) return false;
  return true;
}

inline bool is_multiplicative(Group const& G, MatrixRepresentation const& M) {
  if (M.action[G.identity()] != la::identity(M.field, M.dim)) return false;
  for (index_t a = 0; a < G.order(); ++a)
    for (index_t b = 0; b < G.order(); ++b)
      if (la::mul(M.field, M.action[a], M.action[b]) != M.action[G.mul(a, b)]) return false;
  return true;
}

inline MatrixRepresentation quotient_representation(MatrixRepresentation const& M, EchelonBasis<PrimeField> const& sub) {
  MatrixRepresentation out{M.field, M.dim - sub.dim(), {}};
  for (auto const& a : M.action) out.action.push_back(quotient_matrix(M.field, a, sub));
  return out;
}

inline MatrixRepresentation sub_representation(MatrixRepresentation const& M, EchelonBasis<PrimeField> const& sub) {
  MatrixRepresentation out{M.field, sub.dim(), {}};
  for (auto const& a : M.action) out.action.push_back(restrict_matrix(M.field, a, sub));
  return out;
}

inline std::vector<PrimeField::value_type> character(MatrixRepresentation const& M) {
  std::vector<PrimeField::value_type> out;
  for (auto const& a : M.action) {
    PrimeField::value_type t = 0;
    for (std::size_t i = 0; i < M.dim; ++i) t = M.field.add(t, a[i][i]);
    out.push_back(t);
  }
  return out;
}

inline Module regular_module(Group const& G, PrimeField const& f) {
  Module out{f, G.order(), {}};
  for (auto g : G.small_generating_set()) {
    FpMat a = la::zeros(f, G.order(), G.order());
    for (index_t x = 0; x < G.order(); ++x) a[x][G.mul(x, g)] = f.one();
    out.gens.push_back(std::move(a));
  }
  return out;
}

inline Module regular_module(FiniteSemigroup const& S, PrimeField const& f) {
  Module out{f, S.size(), {}};
  for (std::size_t g = 0; g < S.number_of_generators(); ++g) {
    FpMat a = la::zeros(f, S.size(), S.size());
    for (index_t x = 0; x < S.size(); ++x) a[x][S.right(x, g)] = f.one();
    out.gens.push_back(std::move(a));
  }
  return out;
}

/// Simple KG-modules from the composition factors of the regular module,
/// ordered by dimension and then character. In the semisimple case each
/// simple M occurs dim M / dim End(M) times, which is checked.
inline std::vector<MatrixRepresentation> group_irreducibles(Group const& G, PrimeField const& f, std::mt19937_64& rng,
                                                            std::size_t bound = default_regular_module_bound) {
  if (G.order() % f.p == 0)
    throw CharacteristicError("characteristic " + std::to_string(f.p) + " divides the group order " +
                              std::to_string(G.order()));
  if (G.order() > bound) throw BoundExceeded("group of order " + std::to_string(G.order()) + " exceeds the bound");
  auto classes = classify_simple(composition_factors(regular_module(G, f), rng));
  std::vector<MatrixRepresentation> out;
  for (auto const& c : classes) {
    auto end = homomorphisms(c.module, c.module).size();
    detail::ensure(end * c.multiplicity == c.module.dim, "multiplicity of a simple module in KG is not dim/dim End");
    auto rep = expand(G, c.module);
    detail::ensure(is_multiplicative(G, rep), "group representation is not multiplicative");
    out.push_back(std::move(rep));
  }
  std::sort(out.begin(), out.end(), [](MatrixRepresentation const& a, MatrixRepresentation const& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return character(a) < character(b);
  });
  return out;
}

inline std::vector<MatrixRepresentation> group_irreducibles(Group const& G, PrimeField const& f, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return group_irreducibles(G, f, rng);
}

/// Least idempotent of each regular J-class, ascending.
inline std::vector<index_t> idempotent_representatives(GreenStructure const& G) {
  std::vector<index_t> out;
  std::vector<bool> seen(G.j.size(), false);
  for (auto e : G.idempotents) {
    index_t j = G.j.class_of[e];
    if (seen[j]) continue;
    seen[j] = true;
    out.push_back(e);
  }
  return out;
}

/// N ⊗ KR_e with basis n_b ⊗ s_i, i over the H-class representatives of R_e:
/// s_i t = h s_j gives block (i, j) = N(h), and s_i t ∉ R_e gives zero.
inline MatrixRepresentation induce(MatrixRepresentation const& N, FiniteSemigroup const& S,
                                   SchutzRepresentation const& R) {
  if (!S.is_idempotent(R.base)) throw PreconditionError("induction needs an idempotent");
  auto const& f = N.field;
  std::size_t d = N.dim, n = R.dimension();
  MatrixRepresentation out{f, d * n, {}};
  for (index_t t = 0; t < S.size(); ++t) {
    FpMat a = la::zeros(f, d * n, d * n);
    for (std::size_t i = 0; i < n; ++i) {
      auto const& entry = R.matrices[t][i];
      if (!entry) continue;
      auto const& nh = N.action[entry->second];
      for (std::size_t b = 0; b < d; ++b)
        for (std::size_t c = 0; c < d; ++c) a[i * d + b][entry->first * d + c] = nh[b][c];
    }
    out.action.push_back(std::move(a));
  }
  return out;
}

inline MatrixRepresentation induce(MatrixRepresentation const& N, FiniteSemigroup const& S, GreenStructure const& G,
                                   index_t e) {
  if (!S.is_idempotent(e)) throw PreconditionError("induction needs an idempotent");
  return induce(N, S, schutz_representation(S, G, e));
}

/// {m : m·s·e = 0 for all s ∈ S}.
inline EchelonBasis<PrimeField> maximal_submodule(MatrixRepresentation const& M, FiniteSemigroup const& S, index_t e) {
  auto const& f = M.field;
  std::vector<bool> used(S.size(), false);
  FpMat wide(M.dim);
  for (index_t s = 0; s < S.size(); ++s) {
    index_t se = S.product(s, e);
    if (used[se]) continue;
    used[se] = true;
    for (std::size_t r = 0; r < M.dim; ++r) wide[r].insert(wide[r].end(), M.action[se][r].begin(), M.action[se][r].end());
  }
  EchelonBasis<PrimeField> out(f, M.dim);
  std::size_t cols = wide.empty() ? 0 : wide[0].size();
  for (auto& v : la::left_kernel(f, wide, cols)) out.add(v);
  return out;
}

/// Ann_S(M) and the regular J-classes J_e with Ann_S(M) = {s : J_e ⊄ J(s)}.
inline ApexData apex_of(MatrixRepresentation const& M, FiniteSemigroup const& S, GreenStructure const& G) {
  ApexData out;
  std::vector<bool> ann(S.size(), false);
  for (index_t s = 0; s < S.size(); ++s)
    if (la::is_zero(M.field, M.action[s])) {
      ann[s] = true;
      out.annihilator.push_back(s);
    }
  for (auto e : idempotent_representatives(G)) {
    bool ok = true;
    for (index_t s = 0; s < S.size() && ok; ++s) ok = ann[s] == !G.j_leq(e, s);
    if (!ok) continue;
    if (!out.apex_idempotent) {
      out.apex_idempotent = e;
      out.j_class = G.j.class_of[e];
    }
    ++out.matches;
  }
  out.valid = out.matches == 1;
  return out;
}

/// Me with the action of H_e, as a module over the Schützenberger group of e.
inline MatrixRepresentation restrict_to_group(MatrixRepresentation const& M, FiniteSemigroup const& S,
                                              SchutzRepresentation const& R) {
  auto const& f = M.field;
  EchelonBasis<PrimeField> me(f, M.dim);
  for (auto const& row : M.action[R.base]) me.add(row);
  MatrixRepresentation out{f, me.dim(), {}};
  for (auto u : R.translators) out.action.push_back(restrict_matrix(f, M.action[detail::left_mul(S, u, R.base)], me));
  return out;
}

/// Simple modules with apex J_e for one idempotent representative e.
struct ApexFamily {
  index_t idempotent = 0;
  index_t j_class = 0;
  SchutzRepresentation schutz;
  std::vector<MatrixRepresentation> group_modules;  // simple modules of H_e
  std::vector<MatrixRepresentation> simples;        // Ind(N) / rad, in the same order
};

struct Irreducibles {
  PrimeField field;
  std::vector<ApexFamily> families;

  std::size_t count() const {
    std::size_t c = 0;
    for (auto const& fam : families) c += fam.simples.size();
    return c;
  }
};

inline void check_characteristic(FiniteSemigroup const& S, GreenStructure const& G, PrimeField const& f) {
  for (auto e : idempotent_representatives(G)) {
    auto h = G.h.class_containing(e).size();
    if (h % f.p == 0)
      throw CharacteristicError("characteristic " + std::to_string(f.p) + " divides |H_e| = " + std::to_string(h) +
                                " at idempotent " + std::to_string(e));
  }
  (void)S;
}

/// Smallest prime at least `from` dividing no |H_e|.
inline std::uint32_t coprime_characteristic(GreenStructure const& G, std::uint32_t from = 3) {
  for (std::uint32_t p = std::max<std::uint32_t>(from, 2);; ++p) {
    if (!PrimeField::is_prime(p)) continue;
    bool ok = true;
    for (auto e : idempotent_representatives(G)) ok = ok && G.h.class_containing(e).size() % p != 0;
    if (ok) return p;
  }
}

/// For each e ∈ E(S) and simple N over H_e, the quotient of Ind(N) by
/// {m : mKSe = 0}. Each quotient is checked to be simple with apex J_e and
/// Me ≅ N, and all quotients are checked pairwise non-isomorphic.
inline Irreducibles enumerate_irreducibles(FiniteSemigroup const& S, GreenStructure const& G, PrimeField const& f,
                                           std::mt19937_64& rng) {
  check_characteristic(S, G, f);
  Irreducibles out{f, {}};
  std::vector<Module> all;
  for (auto e : idempotent_representatives(G)) {
    ApexFamily fam;
    fam.idempotent = e;
    fam.j_class = G.j.class_of[e];
    fam.schutz = schutz_representation(S, G, e);
    fam.group_modules = group_irreducibles(fam.schutz.group, f, rng);
    for (auto const& N : fam.group_modules) {
      auto ind = induce(N, S, fam.schutz);
      detail::ensure(ind.dim == N.dim * fam.schutz.dimension(), "induced dimension law fails");
      auto M = quotient_representation(ind, maximal_submodule(ind, S, e));
      detail::ensure(is_multiplicative(S, M), "simple module is not multiplicative");
      auto mod = as_module(S, M);
      detail::ensure(is_irreducible(mod, rng), "Ind(N) modulo its radical is not simple");
      auto apex = apex_of(M, S, G);
      detail::ensure(apex.valid && apex.apex_idempotent == e, "simple module does not have apex J_e");
      auto res = restrict_to_group(M, S, fam.schutz);
      detail::ensure(is_multiplicative(fam.schutz.group, res), "restriction to H_e is not a module");
      detail::ensure(isomorphic(as_module(fam.schutz.group, res), as_module(fam.schutz.group, N)),
                     "Me is not isomorphic to N");
      for (auto const& other : all) detail::ensure(!isomorphic(other, mod), "two enumerated simples are isomorphic");
      all.push_back(mod);
      fam.simples.push_back(std::move(M));
    }
    out.families.push_back(std::move(fam));
  }
  return out;
}

inline Irreducibles enumerate_irreducibles(FiniteSemigroup const& S, PrimeField const& f, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return enumerate_irreducibles(S, green_structure(S), f, rng);
}

/// Composition factors of the right regular module KS, grouped by
/// isomorphism class.
inline std::vector<ModuleClass> regular_module_factors(FiniteSemigroup const& S, PrimeField const& f,
                                                       std::mt19937_64& rng,
                                                       std::size_t bound = default_regular_module_bound) {
  if (S.size() > bound) throw BoundExceeded("semigroup of size " + std::to_string(S.size()) + " exceeds the bound");
  return classify_simple(composition_factors(regular_module(S, f), rng));
}

/// Every enumerated simple matches exactly one nonzero factor class and no
/// nonzero class is left over.
inline bool same_simple_classes(FiniteSemigroup const& S, Irreducibles const& irr,
                                std::vector<ModuleClass> const& factors) {
  std::vector<Module> nonzero;
  for (auto const& c : factors)
    if (!is_zero_module(c.module)) nonzero.push_back(c.module);
  if (nonzero.size() != irr.count()) return false;
  for (auto const& fam : irr.families)
    for (auto const& M : fam.simples) {
      auto mod = as_module(S, M);
      auto hits = std::count_if(nonzero.begin(), nonzero.end(), [&](Module const& N) { return isomorphic(mod, N); });
      if (hits != 1) return false;
    }
  return true;
}

/// M_i = M ⊗ K(H_i × Ȳ_i) for one depth i and simple KH_i-module M, with
/// N_i = {m : mKUe = 0} and the simple quotient.
struct PrincipalIndecomposable {
  int depth = 0;
  index_t idempotent = 0;
  std::size_t tail_points = 0;  // |Y_i|
  std::size_t group_order = 0;  // |H_i|
  MatrixRepresentation group_module;
  MatrixRepresentation module;
  FpMat radical;
  MatrixRepresentation simple;
  bool unique_maximal = false;
  bool exhaustive = false;  // unique_maximal was checked on every vector
};

namespace detail {

// Every vector outside N spins to all of M.
inline std::pair<bool, bool> radical_is_unique_maximal(Module const& M, EchelonBasis<PrimeField> const& N,
                                                       std::mt19937_64& rng) {
  auto const& f = M.field;
  std::uint64_t total = 1;
  bool exhaustive = true;
  for (std::size_t i = 0; i < M.dim && exhaustive; ++i) {
    total *= f.p;
    exhaustive = total <= (1u << 14);
  }
  auto check = [&](FpVec const& v) { return N.contains(v) || spin(M, v).dim() == M.dim; };
  if (exhaustive) {
    FpVec v(M.dim, 0);
    for (std::uint64_t c = 0; c < total; ++c) {
      std::uint64_t x = c;
      for (auto& e : v) {
        e = static_cast<std::uint32_t>(x % f.p);
        x /= f.p;
      }
      if (!check(v)) return {false, true};
    }
    return {true, true};
  }
  for (int trial = 0; trial < 64; ++trial)
    if (!check(random_vector(f, M.dim, rng))) return {false, false};
  return {true, false};
}

}  // namespace detail

/// For 0 ≤ i ≤ m and every simple KH_i-module M, builds M_i on the basis
/// m ⊗ (1, z̄), z ∈ Y_i: (1, z̄)u = (h', z̄') contributes M(h') at block
/// (z, z'), and (1, z̄)u outside H_i × Ȳ_i contributes zero. Checks that
/// H_i × Ȳ_i ⊆ U is the R-class of e, that (h, z̄) = (h, ȳ_i)(1, z̄) in U,
/// that M_i is isomorphic to the induced module built through the
/// Schützenberger representation, and that M_i / N_i is simple with apex J_e.
inline std::vector<PrincipalIndecomposable> holonomy_principal_indecomposables(HolonomyDecomposition const& hd,
                                                                               ReducedHolonomy const& rh,
                                                                               PrimeField const& f,
                                                                               std::mt19937_64& rng) {
  auto const& U = rh.monoid;
  auto const& sh = hd.shape;
  auto G = green_structure(U);
  for (int i = 0; i <= rh.m; ++i) {
    auto order = wreath_group_order(hd, static_cast<std::size_t>(i));
    if (order % f.p == 0) throw CharacteristicError("characteristic " + std::to_string(f.p) + " divides |H_" +
                                                    std::to_string(i) + "| = " + order.get_str());
  }
  std::vector<PrincipalIndecomposable> out;
  for (int i = 0; i <= rh.m; ++i) {
    auto k = static_cast<std::size_t>(i);
    auto e = rh.e_of_depth[k];
    detail::ensure(e.has_value(), "E(U, y) lacks an idempotent of depth " + std::to_string(i));
    std::size_t tails = k == 0 ? sh.points() : sh.tail_count(k - 1);
    std::size_t P = sh.points() / tails;
    auto perms = wreath_group_elements(hd, k);
    auto Hk = group_from_permutations(perms);
    std::map<Transformation, index_t> perm_index;
    for (index_t a = 0; a < perms.size(); ++a) perm_index[perms[a]] = a;

    auto element = [&](Transformation const& h, std::size_t z) {
      std::vector<index_t> im(sh.points());
      for (std::size_t y = 0; y < sh.points(); ++y) im[y] = static_cast<index_t>(h[static_cast<index_t>(y % P)] + P * z);
      return Transformation(std::move(im));
    };
    auto ybar = rh.y / P;
    auto one = Transformation::identity(P);
    detail::ensure(U.index_of(element(one, ybar)) == *e, "(1, ȳ_i) is not the idempotent of depth i");

    std::vector<index_t> r_class;
    for (auto const& h : perms)
      for (std::size_t z = 0; z < tails; ++z) {
        auto hz = element(h, z);
        detail::ensure(U.contains(hz), "H_i × Ȳ_i is not inside U");
        detail::ensure(U.product(U.index_of(element(h, ybar)), U.index_of(element(one, z))) == U.index_of(hz),
                       "(h, z̄) differs from (h, ȳ_i)(1, z̄)");
        r_class.push_back(U.index_of(hz));
      }
    std::sort(r_class.begin(), r_class.end());
    detail::ensure(r_class == G.r.class_containing(*e), "R_e differs from H_i × Ȳ_i");

    auto schutz = schutz_representation(U, G, *e);
    for (auto const& M : group_irreducibles(Hk, f, rng)) {
      PrincipalIndecomposable pi;
      pi.depth = i;
      pi.idempotent = *e;
      pi.tail_points = tails;
      pi.group_order = perms.size();
      pi.group_module = M;
      std::size_t d = M.dim;
      pi.module = MatrixRepresentation{f, d * tails, {}};
      for (index_t u = 0; u < U.size(); ++u) {
        FpMat a = la::zeros(f, d * tails, d * tails);
        for (std::size_t z = 0; z < tails; ++z) {
          auto x = element(one, z) * U.at(u);
          std::vector<index_t> prefix(P);
          std::size_t z2 = x[0] / P;
          bool in_class = true;
          for (std::size_t q = 0; q < P && in_class; ++q) {
            prefix[q] = static_cast<index_t>(x[static_cast<index_t>(q)] % P);
            in_class = x[static_cast<index_t>(q)] / P == z2;
          }
          if (!in_class) continue;
          auto it = perm_index.find(Transformation(std::move(prefix)));
          if (it == perm_index.end()) continue;
          auto const& mh = M.action[it->second];
          for (std::size_t b = 0; b < d; ++b)
            for (std::size_t c = 0; c < d; ++c) a[z * d + b][z2 * d + c] = mh[b][c];
        }
        pi.module.action.push_back(std::move(a));
      }
      detail::ensure(is_multiplicative(U, pi.module), "M_i is not a KU-module");

      // The same module through induction from H_e ≅ H_i.
      MatrixRepresentation transported{f, d, {}};
      for (auto tr : schutz.translators) {
        auto const& x = U.at(detail::left_mul(U, tr, *e));
        std::vector<index_t> prefix(P);
        for (std::size_t q = 0; q < P; ++q) prefix[q] = static_cast<index_t>(x[static_cast<index_t>(q)] % P);
        transported.action.push_back(M.action[perm_index.at(Transformation(std::move(prefix)))]);
      }
      detail::ensure(is_multiplicative(schutz.group, transported), "H_e ≅ H_i transport is not a homomorphism");
      auto ind = induce(transported, U, schutz);
      auto mod = as_module(U, pi.module);
      detail::ensure(isomorphic(mod, as_module(U, ind)), "M_i is not isomorphic to Ind(M)");

      auto rad = maximal_submodule(pi.module, U, *e);
      pi.radical = rad.rows();
      pi.simple = quotient_representation(pi.module, rad);
      detail::ensure(is_irreducible(as_module(U, pi.simple), rng), "M_i / N_i is not simple");
      auto apex = apex_of(pi.simple, U, G);
      detail::ensure(apex.valid && apex.apex_idempotent == *e, "M_i / N_i does not have apex J_e");
      std::tie(pi.unique_maximal, pi.exhaustive) = detail::radical_is_unique_maximal(mod, rad, rng);
      out.push_back(std::move(pi));
    }
  }
  for (std::size_t a = 0; a < out.size(); ++a)
    for (std::size_t b = a + 1; b < out.size(); ++b)
      detail::ensure(!isomorphic(as_module(U, out[a].simple), as_module(U, out[b].simple)),
                     "two quotients M_i / N_i are isomorphic");
  return out;
}

inline std::vector<PrincipalIndecomposable> holonomy_principal_indecomposables(HolonomyDecomposition const& hd,
                                                                               ReducedHolonomy const& rh,
                                                                               PrimeField const& f,
                                                                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return holonomy_principal_indecomposables(hd, rh, f, rng);
}

/// {M_i / N_i} and the enumerated simples of U agree up to isomorphism.
inline bool quotients_match(FiniteSemigroup const& U, std::vector<PrincipalIndecomposable> const& pis,
                            Irreducibles const& irr) {
  if (pis.size() != irr.count()) return false;
  for (auto const& pi : pis) {
    auto mod = as_module(U, pi.simple);
    std::size_t hits = 0;
    for (auto const& fam : irr.families)
      for (auto const& M : fam.simples) hits += isomorphic(mod, as_module(U, M));
    if (hits != 1) return false;
  }
  return true;
}

}  // namespace tsg
