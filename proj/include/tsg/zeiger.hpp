#pragma once

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "tsg/errors.hpp"
#include "tsg/green.hpp"
#include "tsg/group.hpp"
#include "tsg/holonomy.hpp"

namespace tsg {

/// Zeiger property on component values: whenever t_k takes a group value at
/// a tail z, every lower component t_i (i < k) is group-valued at every tail
/// extending z.
inline bool satisfies_zeiger(HolonomyDecomposition const& hd, std::vector<std::vector<index_t>> const& comps) {
  auto const& sh = hd.shape;
  for (std::size_t k = 0; k < hd.n(); ++k)
    for (std::size_t z = 0; z < sh.tail_count(k); ++z) {
      if (!hd.levels[k].is_group_element(comps[k][z])) continue;
      std::size_t first = z * (sh.points() / sh.tail_count(k));
      std::size_t last = first + sh.points() / sh.tail_count(k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t y = first; y < last; y += sh.points() / sh.tail_count(i))
          if (!hd.levels[i].is_group_element(comps[i][sh.tail(y, i)])) return false;
    }
  return true;
}

inline bool satisfies_zeiger(HolonomyDecomposition const& hd, Transformation const& t) {
  auto comps = hd.components_of(t);
  return comps && satisfies_zeiger(hd, *comps);
}

/// δ(u) = k when components 1..k meet their groups and components above k
/// are the same constant everywhere; −1 otherwise.
inline int depth(HolonomyDecomposition const& hd, std::vector<std::vector<index_t>> const& comps) {
  std::size_t n = hd.n();
  std::size_t k = n;
  while (k > 0) {
    auto const& c = comps[k - 1];
    bool single = std::all_of(c.begin(), c.end(), [&](index_t e) { return e == c.front(); });
    if (!single || hd.levels[k - 1].is_group_element(c.front())) break;
    --k;
  }
  for (std::size_t i = 0; i < k; ++i) {
    auto const& c = comps[i];
    if (std::none_of(c.begin(), c.end(), [&](index_t e) { return hd.levels[i].is_group_element(e); })) return -1;
  }
  return static_cast<int>(k);
}

struct ReducedHolonomy {
  FiniteSemigroup monoid;  // U acting on Y
  std::vector<std::vector<std::vector<index_t>>> components;  // by monoid index
  std::vector<int> depth;
  int m = -1;
  int n = 0;
  std::size_t y = 0;  // the distinguished point of Y
  std::vector<std::optional<index_t>> e_of_depth;  // E(U, y) by depth 0..n
  Covering covering;
};

/// U = {t ∈ T : t has the Zeiger property}, enumerated level by level from
/// the top so that forced group values are never left.
inline std::vector<Transformation> zeiger_elements(HolonomyDecomposition const& hd, std::size_t bound) {
  auto const& sh = hd.shape;
  std::size_t n = hd.n();
  struct Slot {
    std::size_t level, tail;
  };
  std::vector<Slot> slots;
  for (std::size_t k = n; k-- > 0;)
    for (std::size_t z = 0; z < sh.tail_count(k); ++z) slots.push_back({k, z});
  std::vector<std::vector<index_t>> comps(n);
  for (std::size_t k = 0; k < n; ++k) comps[k].assign(sh.tail_count(k), 0);

  auto forced = [&](Slot const& s) {
    std::size_t y = s.tail * (sh.points() / sh.tail_count(s.level));
    for (std::size_t k = s.level + 1; k < n; ++k)
      if (hd.levels[k].is_group_element(comps[k][sh.tail(y, k)])) return true;
    return false;
  };

  std::vector<Transformation> out;
  std::function<void(std::size_t)> rec = [&](std::size_t idx) {
    if (idx == slots.size()) {
      if (out.size() >= bound) throw BoundExceeded("reduced holonomy monoid exceeds " + std::to_string(bound));
      out.push_back(hd.cascade(comps));
      return;
    }
    auto s = slots[idx];
    auto const& L = hd.levels[s.level];
    std::size_t limit = forced(s) ? L.group_order : L.size();
    for (index_t e = 0; e < limit; ++e) {
      comps[s.level][s.tail] = e;
      rec(idx + 1);
    }
  };
  rec(0);
  return out;
}

inline ReducedHolonomy zeiger_reduce(HolonomyDecomposition const& hd, FiniteSemigroup const& S,
                                     std::size_t bound = 20'000) {
  ReducedHolonomy rh;
  rh.n = static_cast<int>(hd.n());
  auto elems = zeiger_elements(hd, bound);
  // semigroup_from_elements rejects element sets that are not closed.
  rh.monoid = semigroup_from_elements(hd.shape.points(), elems, bound);
  auto id = Transformation::identity(hd.shape.points());
  detail::ensure(rh.monoid.contains(id), "reduced holonomy monoid lacks the identity");
  for (index_t u = 0; u < rh.monoid.size(); ++u) {
    auto c = hd.components_of(rh.monoid.at(u));
    detail::ensure(c && satisfies_zeiger(hd, *c), "enumerated element fails the Zeiger property");
    rh.depth.push_back(depth(hd, *c));
    rh.m = std::max(rh.m, rh.depth.back());
    rh.components.push_back(std::move(*c));
  }

  // E(U, y) for y = 0: idempotents whose components are 1 or ȳ_i.
  rh.e_of_depth.assign(hd.n() + 1, std::nullopt);
  for (index_t u = 0; u < rh.monoid.size(); ++u) {
    if (!rh.monoid.is_idempotent(u)) continue;
    bool shape_ok = true;
    for (std::size_t i = 0; i < hd.n() && shape_ok; ++i) {
      index_t one = 0, ybar = hd.levels[i].constant(hd.shape.coordinate(rh.y, i));
      for (auto e : rh.components[u][i]) shape_ok = shape_ok && (e == rh.components[u][i].front());
      shape_ok = shape_ok && (rh.components[u][i].front() == one || rh.components[u][i].front() == ybar);
    }
    if (!shape_ok || rh.depth[u] < 0) continue;
    auto& slot = rh.e_of_depth[static_cast<std::size_t>(rh.depth[u])];
    detail::ensure(!slot.has_value(), "E(U, y) has two idempotents of one depth");
    slot = u;
  }

  rh.covering = hd.covering;
  auto chk = verify_covering(rh.covering, S, [&](Transformation const& t) { return rh.monoid.contains(t); });
  detail::ensure(chk.ok, "(Y, U) does not cover (X, S): " + chk.reason);
  return rh;
}

/// |H_k| = ∏_{i ≤ k} |G_i|^{|X_{i+1} × ⋯ × X_k|}.
inline mpz_class wreath_group_order(HolonomyDecomposition const& hd, std::size_t k) {
  mpz_class c = 1;
  std::size_t above = 1;
  for (std::size_t i = k; i-- > 0;) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), hd.levels[i].group_order, above);
    c *= p;
    above *= hd.levels[i].states();
  }
  return c;
}

/// Elements of H_k as permutations of X_1 × ⋯ × X_k (x_1 fastest).
inline std::vector<Transformation> wreath_group_elements(HolonomyDecomposition const& hd, std::size_t k,
                                                         std::size_t bound = default_group_bound) {
  if (wreath_group_order(hd, k) > bound) throw BoundExceeded("H_" + std::to_string(k) + " exceeds the group bound");
  std::vector<std::size_t> radix;
  for (std::size_t i = 0; i < k; ++i) radix.push_back(hd.levels[i].states());
  CascadeShape sh(radix);
  std::vector<std::vector<Transformation>> identity_table(k);
  std::vector<Transformation> gens{Transformation::identity(sh.points())};
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t z = 0; z < sh.tail_count(i); ++z)
      for (auto const& g : hd.levels[i].group_elements()) {
        std::vector<index_t> im(sh.points());
        for (std::size_t y = 0; y < sh.points(); ++y)
          im[y] = static_cast<index_t>(
              sh.tail(y, i) == z ? sh.with_coordinate(y, i, g[static_cast<index_t>(sh.coordinate(y, i))]) : y);
        gens.emplace_back(std::move(im));
      }
  return generate_closure(sh.points(), gens, bound + 1).elements();
}

/// H_k acting on X_1 × ⋯ × X_k, indexed as in wreath_group_elements.
inline Group wreath_group(HolonomyDecomposition const& hd, std::size_t k, std::size_t bound = default_group_bound) {
  return group_from_permutations(wreath_group_elements(hd, k, bound));
}

struct DepthClassCheck {
  int k = 0;
  index_t idempotent = 0;
  std::size_t r_class_size = 0;
  mpz_class expected_r_class_size;
  bool h_isomorphic = false;
};

struct DepthReport {
  GreenStructure green;
  std::vector<bool> regular;  // exhaustive uvu = u search
  bool regularity_matches = true;
  bool l_criterion = true;
  bool j_criterion = true;
  std::size_t regular_j_classes = 0;
  std::size_t positive_depth_j_classes = 0;
  bool idempotents_per_depth = true;
  std::vector<DepthClassCheck> classes;

  bool ok(int m) const {
    bool per = idempotents_per_depth;
    for (auto const& c : classes) per = per && c.h_isomorphic && c.r_class_size == c.expected_r_class_size;
    return regularity_matches && l_criterion && j_criterion && per &&
           positive_depth_j_classes == static_cast<std::size_t>(std::max(m, 0)) &&
           regular_j_classes == static_cast<std::size_t>(m + 1);
  }
};

namespace detail {

/// Partition equality of `labels` against `classes` on the selected elements.
template <class Label>
bool same_partition(std::vector<index_t> const& elems, std::vector<Label> const& labels,
                    std::vector<index_t> const& classes) {
  std::map<Label, index_t> by_label;
  std::map<index_t, Label> by_class;
  for (auto u : elems) {
    auto [a, fresh_a] = by_label.emplace(labels[u], classes[u]);
    auto [b, fresh_b] = by_class.emplace(classes[u], labels[u]);
    if (a->second != classes[u] || b->second != labels[u]) return false;
  }
  return true;
}

}  // namespace detail

inline DepthReport depth_and_classes(HolonomyDecomposition const& hd, ReducedHolonomy const& rh) {
  auto const& U = rh.monoid;
  DepthReport rep;
  rep.green = green_structure(U);
  std::size_t N = U.size(), P = hd.shape.points();
  rep.regular.assign(N, false);
  for (index_t u = 0; u < N; ++u) {
    auto const& tu = U.at(u);
    for (index_t v = 0; v < N && !rep.regular[u]; ++v) {
      auto const& tv = U.at(v);
      bool eq = true;
      for (index_t x = 0; x < P && eq; ++x) eq = tu[tv[tu[x]]] == tu[x];
      rep.regular[u] = eq;
    }
    if (rep.regular[u] != (rh.depth[u] >= 0)) rep.regularity_matches = false;
  }

  std::vector<index_t> reg;
  for (index_t u = 0; u < N; ++u)
    if (rep.regular[u]) reg.push_back(u);
  std::vector<std::vector<std::vector<index_t>>> l_label(N);
  for (index_t u = 0; u < N; ++u) {
    std::size_t k = static_cast<std::size_t>(std::max(rh.depth[u], 0));
    l_label[u].push_back({static_cast<index_t>(rh.depth[u] + 1)});
    for (std::size_t i = k; i < hd.n(); ++i) l_label[u].push_back(rh.components[u][i]);
  }
  rep.l_criterion = detail::same_partition(reg, l_label, rep.green.l.class_of);
  rep.j_criterion = detail::same_partition(reg, rh.depth, rep.green.j.class_of);

  std::vector<bool> counted(rep.green.j.classes.size(), false);
  for (auto u : reg) {
    auto c = rep.green.j.class_of[u];
    if (counted[c]) continue;
    counted[c] = true;
    ++rep.regular_j_classes;
    if (rh.depth[u] > 0) ++rep.positive_depth_j_classes;
  }

  for (int k = 0; k <= rh.m; ++k)
    if (!rh.e_of_depth[static_cast<std::size_t>(k)]) rep.idempotents_per_depth = false;
  for (int k = 1; k <= rh.m; ++k) {
    auto e = rh.e_of_depth[static_cast<std::size_t>(k)];
    if (!e) continue;
    DepthClassCheck c;
    c.k = k;
    c.idempotent = *e;
    c.r_class_size = rep.green.r.classes[rep.green.r.class_of[*e]].size();
    c.expected_r_class_size = wreath_group_order(hd, static_cast<std::size_t>(k)) *
                              static_cast<unsigned long>(hd.shape.tail_count(static_cast<std::size_t>(k) - 1));
    auto He = group_from_elements(U, maximal_subgroup_elements(U, rep.green, *e));
    auto Hk = wreath_group(hd, static_cast<std::size_t>(k));
    c.h_isomorphic = groups_isomorphic(He, Hk);
    rep.classes.push_back(std::move(c));
  }
  return rep;
}

/// Simple groups from composition series of every holonomy group, and
/// ⌈log₂ |X_k|⌉ flip-flops per level, since n̄¹ divides a direct product of
/// that many copies of 2̄¹.
struct PrimeDecomposition {
  std::vector<SimpleFactor> groups;  // sorted
  std::size_t flip_flops = 0;
};

inline PrimeDecomposition prime_factors(HolonomyDecomposition const& hd) {
  PrimeDecomposition out;
  for (auto const& L : hd.levels) {
    for (auto const& c : L.components) {
      auto f = composition_series(c.group);
      out.groups.insert(out.groups.end(), f.begin(), f.end());
    }
    out.flip_flops += static_cast<std::size_t>(std::bit_width(L.states() - 1));
  }
  std::sort(out.groups.begin(), out.groups.end());
  return out;
}

}  // namespace tsg
