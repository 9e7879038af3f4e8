#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "tsg/errors.hpp"
#include "tsg/green.hpp"
#include "tsg/group.hpp"
#include "tsg/semigroup.hpp"

namespace tsg {

/// Right Schützenberger representation of S on the H-classes of R_s.
///
/// Group elements are the distinct left translations λ_u restricted to H_s.
/// `group.mul(a, b)` is composition a∘b (apply b first), so the entries of
/// ρ(t)ρ(v) multiply as ordinary monomial matrices.
struct SchutzRepresentation {
  index_t base = 0;
  std::vector<index_t> r_class;          // R_s, ascending
  std::vector<index_t> h_class;          // H_s, ascending
  std::vector<index_t> h_class_reps;     // s_1..s_n, least element of each H-class in R_s
  /// One multiplier u per group element; nullopt is the identity of S¹.
  std::vector<std::optional<index_t>> translators;
  std::vector<Transformation> translations;  // λ_u on positions of h_class
  Group group;
  /// matrices[t][i] = (j, h) when s_i t = h s_j, else nullopt.
  std::vector<std::vector<std::optional<std::pair<index_t, index_t>>>> matrices;

  std::size_t dimension() const noexcept { return h_class_reps.size(); }
};

namespace detail {

inline index_t left_mul(FiniteSemigroup const& S, std::optional<index_t> u, index_t x) {
  return u ? S.product(*u, x) : x;
}
inline index_t right_mul(FiniteSemigroup const& S, index_t x, std::optional<index_t> v) {
  return v ? S.product(x, *v) : x;
}

// Group of translations given as permutations, with mul(a, b) = a∘b.
inline Group composition_group(std::vector<Transformation> const& perms) {
  std::map<Transformation, index_t> pos;
  for (index_t i = 0; i < perms.size(); ++i) pos[perms[i]] = i;
  std::vector<std::vector<index_t>> tab(perms.size(), std::vector<index_t>(perms.size()));
  for (index_t a = 0; a < perms.size(); ++a)
    for (index_t b = 0; b < perms.size(); ++b) {
      auto it = pos.find(perms[b] * perms[a]);
      ensure(it != pos.end(), "translation set is not closed");
      tab[a][b] = it->second;
    }
  return Group(std::move(tab));
}

}  // namespace detail

/// Λ(H_s): distinct maps h ↦ uh on H_s for u ∈ S¹ with uH_s ⊆ H_s.
/// Returns translators and translations in first-found order (identity first).
inline std::pair<std::vector<std::optional<index_t>>, std::vector<Transformation>> left_schutzenberger_group(
    FiniteSemigroup const& S, GreenStructure const& G, index_t s) {
  auto const& H = G.h.class_containing(s);
  std::vector<std::optional<index_t>> us{std::nullopt};
  for (index_t u = 0; u < S.size(); ++u) us.push_back(u);
  std::vector<std::optional<index_t>> trans;
  std::vector<Transformation> maps;
  for (auto u : us) {
    std::vector<index_t> im;
    bool ok = true;
    for (auto h : H) {
      index_t x = detail::left_mul(S, u, h);
      if (!G.h.same(x, s)) {
        ok = false;
        break;
      }
      im.push_back(detail::position(H, x));
    }
    if (!ok) continue;
    Transformation t(std::move(im));
    if (std::find(maps.begin(), maps.end(), t) == maps.end()) {
      maps.push_back(t);
      trans.push_back(u);
    }
  }
  return {trans, maps};
}

/// Γ(H_s): distinct maps h ↦ hv on H_s for v ∈ S¹ with H_s v ⊆ H_s.
inline std::pair<std::vector<std::optional<index_t>>, std::vector<Transformation>> right_schutzenberger_group(
    FiniteSemigroup const& S, GreenStructure const& G, index_t s) {
  auto const& H = G.h.class_containing(s);
  std::vector<std::optional<index_t>> vs{std::nullopt};
  for (index_t v = 0; v < S.size(); ++v) vs.push_back(v);
  std::vector<std::optional<index_t>> trans;
  std::vector<Transformation> maps;
  for (auto v : vs) {
    std::vector<index_t> im;
    bool ok = true;
    for (auto h : H) {
      index_t x = detail::right_mul(S, h, v);
      if (!G.h.same(x, s)) {
        ok = false;
        break;
      }
      im.push_back(detail::position(H, x));
    }
    if (!ok) continue;
    Transformation t(std::move(im));
    if (std::find(maps.begin(), maps.end(), t) == maps.end()) {
      maps.push_back(t);
      trans.push_back(v);
    }
  }
  return {trans, maps};
}

/// Builds ρ and checks: row-monomial shape, multiplicativity on all pairs
/// (t, generator), free action of Λ(H_s) on R_s, and that λ_u ↦ ρ_v with
/// us = sv is an anti-isomorphism Λ(H_s) → Γ(H_s).
inline SchutzRepresentation schutz_representation(FiniteSemigroup const& S, GreenStructure const& G, index_t s) {
  SchutzRepresentation R;
  R.base = s;
  R.r_class = G.r.class_containing(s);
  R.h_class = G.h.class_containing(s);
  {
    std::vector<index_t> seen;
    for (auto x : R.r_class)
      if (std::find(seen.begin(), seen.end(), G.h.class_of[x]) == seen.end()) {
        seen.push_back(G.h.class_of[x]);
        R.h_class_reps.push_back(x);
      }
  }
  std::tie(R.translators, R.translations) = left_schutzenberger_group(S, G, s);
  R.group = detail::composition_group(R.translations);

  std::size_t n = R.h_class_reps.size();
  R.matrices.assign(S.size(), std::vector<std::optional<std::pair<index_t, index_t>>>(n));
  for (index_t t = 0; t < S.size(); ++t)
    for (index_t i = 0; i < n; ++i) {
      index_t x = S.product(R.h_class_reps[i], t);
      if (!G.r.same(x, s)) continue;
      for (index_t j = 0; j < n && !R.matrices[t][i]; ++j) {
        if (!G.h.same(x, R.h_class_reps[j])) continue;
        for (index_t h = 0; h < R.translators.size(); ++h)
          if (detail::left_mul(S, R.translators[h], R.h_class_reps[j]) == x) {
            R.matrices[t][i] = std::pair{j, h};
            break;
          }
      }
      detail::ensure(R.matrices[t][i].has_value(), "no Schützenberger group element carries s_j to s_i t");
    }

  // Multiplicativity ρ(t)ρ(g) = ρ(tg) for every element t and generator g.
  for (index_t t = 0; t < S.size(); ++t)
    for (std::size_t g = 0; g < S.number_of_generators(); ++g) {
      index_t ge = S.generator_element(g), tg = S.right(t, g);
      for (index_t i = 0; i < n; ++i) {
        std::optional<std::pair<index_t, index_t>> prod;
        if (auto a = R.matrices[t][i])
          if (auto b = R.matrices[ge][a->first]) prod = std::pair{b->first, R.group.mul(a->second, b->second)};
        detail::ensure(prod == R.matrices[tg][i], "Schützenberger representation is not multiplicative");
      }
    }

  // Free action: every Λ-orbit on R_s has |Λ| points.
  for (auto x : R.r_class) {
    std::vector<index_t> orbit;
    for (auto u : R.translators) orbit.push_back(detail::left_mul(S, u, x));
    std::sort(orbit.begin(), orbit.end());
    orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
    detail::ensure(orbit.size() == R.translators.size(), "Λ(H_s) does not act freely on R_s");
  }

  // Λ(H_s) ≅ Γ(H_s)^op through us = sv.
  auto [vtrans, vmaps] = right_schutzenberger_group(S, G, s);
  detail::ensure(vmaps.size() == R.translations.size(), "|Λ(H_s)| != |Γ(H_s)|");
  std::vector<index_t> phi(R.translators.size());
  for (index_t a = 0; a < R.translators.size(); ++a) {
    index_t us = detail::left_mul(S, R.translators[a], s);
    bool found = false;
    for (index_t b = 0; b < vtrans.size() && !found; ++b)
      if (detail::right_mul(S, s, vtrans[b]) == us) {
        phi[a] = b;
        found = true;
      }
    detail::ensure(found, "no right translation matches a left translation at s");
  }
  for (index_t a = 0; a < phi.size(); ++a)
    for (index_t b = 0; b < phi.size(); ++b) {
      // Translations in right-action convention: λ_a * λ_b = λ_{ba}, ρ_a * ρ_b = ρ_{ab}.
      auto it = std::find(R.translations.begin(), R.translations.end(), R.translations[a] * R.translations[b]);
      index_t ab = static_cast<index_t>(it - R.translations.begin());
      detail::ensure(vmaps[phi[ab]] == vmaps[phi[b]] * vmaps[phi[a]], "Λ(H_s) is not anti-isomorphic to Γ(H_s)");
    }
  return R;
}

}  // namespace tsg
