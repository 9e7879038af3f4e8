#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "tsg/errors.hpp"
#include "tsg/group.hpp"
#include "tsg/semigroup.hpp"
#include "tsg/wreath.hpp"

namespace tsg {

/// A subset of X as a bit mask; holonomy is limited to |X| ≤ 64.
using StateSet = std::uint64_t;

namespace detail {

inline StateSet image(StateSet a, Transformation const& s) {
  StateSet out = 0;
  for (StateSet m = a; m; m &= m - 1) out |= StateSet{1} << s[static_cast<index_t>(std::countr_zero(m))];
  return out;
}

inline bool subset_of(StateSet a, StateSet b) { return (a & ~b) == 0; }

}  // namespace detail

inline std::string format_state_set(StateSet a) {
  std::string s = "{";
  for (StateSet m = a; m; m &= m - 1) {
    if (s.size() > 1) s += ",";
    s += std::to_string(std::countr_zero(m));
  }
  return s + "}";
}

/// XS = {Xs : s ∈ S¹ ∪ X̄} ∪ {∅} with a ≤ b iff a ⊆ bs for some s ∈ S¹,
/// and the maximal-chain height η.
struct XSPoset {
  std::size_t degree = 0;
  std::vector<StateSet> sets;  // by decreasing size, then increasing mask
  std::vector<std::vector<bool>> leq;
  std::vector<index_t> class_of;  // ∼-classes numbered by first member
  std::vector<int> height;

  std::size_t size() const noexcept { return sets.size(); }
  std::optional<index_t> find(StateSet a) const {
    auto it = std::find(sets.begin(), sets.end(), a);
    if (it == sets.end()) return std::nullopt;
    return static_cast<index_t>(it - sets.begin());
  }
  index_t index_of(StateSet a) const {
    auto i = find(a);
    detail::ensure(i.has_value(), "set " + format_state_set(a) + " is not in XS");
    return *i;
  }
  bool less(index_t a, index_t b) const { return leq[a][b] && !leq[b][a]; }
  bool similar(index_t a, index_t b) const { return leq[a][b] && leq[b][a]; }
  index_t whole() const noexcept { return 0; }
  /// η(X, S).
  int n() const { return height[whole()]; }
};

/// Checks the five height-function axioms. Distinct singletons may be
/// strictly ordered under S¹, so axiom 4 is only required when the larger
/// side has at least two points.
inline void verify_height_axioms(XSPoset const& xs) {
  for (index_t a = 0; a < xs.size(); ++a) {
    int pc = std::popcount(xs.sets[a]);
    if (pc == 0) detail::ensure(xs.height[a] == -1, "height of the empty set must be -1");
    if (pc == 1) detail::ensure(xs.height[a] == 0, "singletons must have height 0");
    for (index_t b = 0; b < xs.size(); ++b) {
      if (xs.similar(a, b)) detail::ensure(xs.height[a] == xs.height[b], "similar sets with different heights");
      if (xs.less(a, b) && std::popcount(xs.sets[b]) > 1)
        detail::ensure(xs.height[a] < xs.height[b], "height is not strictly monotone");
    }
  }
  for (int i = 0; i <= xs.n(); ++i)
    detail::ensure(std::count(xs.height.begin(), xs.height.end(), i) > 0,
                   "height " + std::to_string(i) + " is not attained");
}

inline XSPoset xs_and_height(FiniteSemigroup const& S) {
  if (S.degree() > 64) throw PreconditionError("holonomy supports at most 64 states");
  XSPoset xs;
  xs.degree = S.degree();
  StateSet all = S.degree() == 64 ? ~StateSet{0} : (StateSet{1} << S.degree()) - 1;
  std::vector<StateSet> found{all, 0};
  for (auto const& s : S.elements()) found.push_back(detail::image(all, s));
  for (std::size_t x = 0; x < S.degree(); ++x) found.push_back(StateSet{1} << x);
  std::sort(found.begin(), found.end(), [](StateSet a, StateSet b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa > pb : a < b;
  });
  found.erase(std::unique(found.begin(), found.end()), found.end());
  xs.sets = std::move(found);

  std::size_t N = xs.sets.size();
  xs.leq.assign(N, std::vector<bool>(N, false));
  for (index_t b = 0; b < N; ++b) {
    std::vector<StateSet> orbit{xs.sets[b]};
    for (std::size_t q = 0; q < orbit.size(); ++q)
      for (auto const& g : S.generators()) {
        StateSet c = detail::image(orbit[q], g);
        if (std::find(orbit.begin(), orbit.end(), c) == orbit.end()) orbit.push_back(c);
      }
    for (index_t a = 0; a < N; ++a)
      for (auto c : orbit)
        if (detail::subset_of(xs.sets[a], c)) {
          xs.leq[a][b] = true;
          break;
        }
  }
  xs.class_of.assign(N, 0);
  index_t classes = 0;
  for (index_t a = 0; a < N; ++a) {
    index_t c = classes;
    for (index_t b = 0; b < a; ++b)
      if (xs.similar(a, b)) {
        c = xs.class_of[b];
        break;
      }
    if (c == classes) ++classes;
    xs.class_of[a] = c;
  }

  xs.height.assign(N, -2);
  std::function<int(index_t)> eta = [&](index_t a) -> int {
    if (xs.height[a] != -2) return xs.height[a];
    int pc = std::popcount(xs.sets[a]);
    int h = pc == 0 ? -1 : 0;
    if (pc > 1)
      for (index_t b = 0; b < N; ++b)
        if (xs.sets[b] != 0 && xs.less(b, a)) h = std::max(h, eta(b) + 1);
    return xs.height[a] = h;
  };
  for (index_t a = 0; a < N; ++a) eta(a);
  verify_height_axioms(xs);
  return xs;
}

/// Bricks of a (the maximal proper subsets of a in XS) and G_a, the
/// permutations of the bricks induced by {s ∈ S : as = a}.
struct HolonomyComponent {
  index_t rep = 0;
  std::vector<index_t> bricks;
  std::vector<Transformation> permutations;  // sorted; the identity is first
  Group group;

  std::optional<index_t> permutation_index(Transformation const& p) const {
    auto it = std::lower_bound(permutations.begin(), permutations.end(), p);
    if (it == permutations.end() || *it != p) return std::nullopt;
    return static_cast<index_t>(it - permutations.begin());
  }
};

namespace detail {

inline std::vector<index_t> bricks_of(XSPoset const& xs, index_t a) {
  StateSet A = xs.sets[a];
  std::vector<index_t> proper;
  for (index_t b = 0; b < xs.size(); ++b)
    if (xs.sets[b] != 0 && xs.sets[b] != A && subset_of(xs.sets[b], A)) proper.push_back(b);
  std::vector<index_t> out;
  for (auto b : proper) {
    bool maximal = true;
    for (auto c : proper)
      if (c != b && subset_of(xs.sets[b], xs.sets[c])) maximal = false;
    if (maximal) out.push_back(b);
  }
  return out;
}

/// Permutation of bricks induced by s, which must satisfy as = a.
inline Transformation brick_permutation(XSPoset const& xs, std::vector<index_t> const& bricks, Transformation const& s) {
  std::vector<index_t> im(bricks.size());
  for (std::size_t j = 0; j < bricks.size(); ++j) {
    StateSet t = image(xs.sets[bricks[j]], s);
    auto it = std::find_if(bricks.begin(), bricks.end(), [&](index_t b) { return xs.sets[b] == t; });
    ensure(it != bricks.end(), "a stabilizing element does not permute the bricks");
    im[j] = static_cast<index_t>(it - bricks.begin());
  }
  return Transformation(std::move(im));
}

inline HolonomyComponent holonomy_component(FiniteSemigroup const& S, XSPoset const& xs, index_t a) {
  HolonomyComponent c;
  c.rep = a;
  c.bricks = bricks_of(xs, a);
  ensure(c.bricks.size() >= 2, "a set with two or more points has fewer than two bricks");
  std::vector<Transformation> perms{Transformation::identity(c.bricks.size())};
  for (auto const& s : S.elements())
    if (image(xs.sets[a], s) == xs.sets[a]) perms.push_back(brick_permutation(xs, c.bricks, s));
  std::sort(perms.begin(), perms.end());
  perms.erase(std::unique(perms.begin(), perms.end()), perms.end());
  c.permutations = std::move(perms);
  c.group = group_from_permutations(c.permutations);
  return c;
}

}  // namespace detail

/// The k-th holonomy: paving X_k = ∏ X_{a_i}, group G_k = ∏ G_{a_i}, and
/// Hol_k = G_k ∪ X̄_k listed as group elements followed by constants.
struct HolonomyLevel {
  int height = 0;
  std::vector<HolonomyComponent> components;
  CascadeShape paving;
  std::vector<Transformation> elements;
  std::size_t group_order = 1;

  std::size_t states() const noexcept { return paving.points(); }
  std::size_t size() const noexcept { return elements.size(); }
  bool is_group_element(index_t e) const noexcept { return e < group_order; }
  index_t constant(std::size_t state) const { return static_cast<index_t>(group_order + state); }
  std::optional<index_t> find(Transformation const& t) const {
    auto it = index_.find(t);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  /// Index of the product element with component permutation indices `c`.
  index_t group_element(std::vector<index_t> const& c) const {
    index_t e = 0, scale = 1;
    for (std::size_t i = 0; i < components.size(); ++i) {
      e += c[i] * scale;
      scale *= static_cast<index_t>(components[i].permutations.size());
    }
    return e;
  }
  std::vector<Transformation> group_elements() const {
    return {elements.begin(), elements.begin() + static_cast<std::ptrdiff_t>(group_order)};
  }

  void build() {
    std::vector<std::size_t> radix;
    for (auto const& c : components) radix.push_back(c.bricks.size());
    paving = CascadeShape(radix);
    group_order = 1;
    for (auto const& c : components) group_order *= c.permutations.size();
    elements.clear();
    std::vector<std::size_t> pick(components.size(), 0);
    for (std::size_t e = 0; e < group_order; ++e) {
      std::size_t r = e;
      for (std::size_t i = 0; i < components.size(); ++i) {
        pick[i] = r % components[i].permutations.size();
        r /= components[i].permutations.size();
      }
      std::vector<index_t> im(states());
      for (std::size_t x = 0; x < states(); ++x) {
        auto c = paving.decode(x);
        for (std::size_t i = 0; i < components.size(); ++i) c[i] = components[i].permutations[pick[i]][static_cast<index_t>(c[i])];
        im[x] = static_cast<index_t>(paving.encode(c));
      }
      elements.emplace_back(std::move(im));
    }
    for (std::size_t x = 0; x < states(); ++x)
      elements.push_back(Transformation(std::vector<index_t>(states(), static_cast<index_t>(x))));
    index_.clear();
    for (index_t e = 0; e < elements.size(); ++e) index_.emplace(elements[e], e);
    ensure_faithful();
  }

 private:
  void ensure_faithful() const {
    detail::ensure(index_.size() == elements.size(), "holonomy level elements are not distinct");
  }
  std::unordered_map<Transformation, index_t, TransformationHash> index_;
};

inline std::vector<HolonomyLevel> holonomy_levels(FiniteSemigroup const& S, XSPoset const& xs) {
  std::vector<HolonomyLevel> levels(static_cast<std::size_t>(std::max(xs.n(), 0)));
  std::vector<bool> seen_class(xs.size(), false);
  for (index_t a = 0; a < xs.size(); ++a) {
    int h = xs.height[a];
    if (h < 1 || seen_class[xs.class_of[a]]) continue;
    seen_class[xs.class_of[a]] = true;
    levels[h - 1].components.push_back(detail::holonomy_component(S, xs, a));
  }
  for (int k = 1; k <= xs.n(); ++k) {
    auto& L = levels[k - 1];
    L.height = k;
    detail::ensure(!L.components.empty(), "no representative of height " + std::to_string(k));
    L.build();
  }
  // (X_b, G_b) ≅ (X_a, G_a) for b ∼ a, transported along u with au = b.
  for (auto const& L : levels)
    for (auto const& comp : L.components)
      for (index_t b = 0; b < xs.size(); ++b) {
        if (b == comp.rep || !xs.similar(b, comp.rep)) continue;
        auto other = detail::holonomy_component(S, xs, b);
        detail::ensure(other.bricks.size() == comp.bricks.size() &&
                           other.permutations.size() == comp.permutations.size(),
                       "similar sets with different brick actions");
        std::optional<Transformation> u;
        StateSet A = xs.sets[comp.rep], B = xs.sets[b];
        for (auto const& s : S.elements())
          if (detail::image(A, s) == B) {
            u = s;
            break;
          }
        detail::ensure(u.has_value(), "no element maps a representative onto a similar set");
        std::vector<index_t> m(comp.bricks.size());
        for (std::size_t j = 0; j < comp.bricks.size(); ++j) {
          StateSet t = detail::image(xs.sets[comp.bricks[j]], *u);
          auto it = std::find_if(other.bricks.begin(), other.bricks.end(), [&](index_t c) { return xs.sets[c] == t; });
          detail::ensure(it != other.bricks.end(), "similarity does not carry bricks to bricks");
          m[j] = static_cast<index_t>(it - other.bricks.begin());
        }
        for (auto const& p : comp.permutations) {
          std::vector<index_t> q(m.size());
          for (std::size_t j = 0; j < m.size(); ++j) q[m[j]] = m[p[static_cast<index_t>(j)]];
          detail::ensure(other.permutation_index(Transformation(std::move(q))).has_value(),
                         "similar sets have non-isomorphic holonomy groups");
        }
      }
  return levels;
}

/// u_y, v_y with a_i u_y = yφ, yφ v_y = a_i and u_y v_y the identity on a_i.
/// Indices refer to the S¹ list, where 0 is the adjoined identity.
struct Selection {
  std::size_t component = 0;
  index_t u = 0;
  index_t v = 0;
};

/// Construction of ψ: X_k × Y → X from φ: Y → X of rank k.
struct HolonomyStage {
  int k = 0;
  CascadeShape domain;  // X_k × ⋯ × X_n
  std::vector<index_t> psi;  // XS index per point
  std::vector<std::optional<Selection>> selections;  // per point of the previous domain
  std::vector<Transformation> witnesses;  // per generator of S, acting on `domain`
  int rank = 0;
};

struct HolonomyDecomposition {
  XSPoset xs;
  std::vector<Transformation> s1;
  std::vector<HolonomyLevel> levels;  // levels[k-1] is Hol_k
  std::vector<HolonomyStage> stages;  // k = n, n-1, …, 1
  CascadeShape shape;  // Y = X_1 × ⋯ × X_n
  Covering covering;

  std::size_t n() const noexcept { return levels.size(); }
  /// |T| for the holonomy monoid T = Hol_1 ≀ ⋯ ≀ Hol_n.
  mpz_class holonomy_monoid_order() const {
    mpz_class c = 1;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      mpz_class p;
      mpz_ui_pow_ui(p.get_mpz_t(), levels[i].size(), shape.tail_count(i));
      c *= p;
    }
    return c;
  }
  /// Hol_i index of each component value t_i(z), or nullopt when t is not a
  /// cascade over the holonomy levels.
  std::optional<std::vector<std::vector<index_t>>> components_of(Transformation const& t) const {
    if (t.degree() != shape.points()) return std::nullopt;
    std::vector<std::vector<index_t>> out(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i)
      for (std::size_t z = 0; z < shape.tail_count(i); ++z) {
        auto c = cascade_component(shape, t, i, z);
        if (!c) return std::nullopt;
        auto e = levels[i].find(*c);
        if (!e) return std::nullopt;
        out[i].push_back(*e);
      }
    return out;
  }
  bool in_holonomy_monoid(Transformation const& t) const { return components_of(t).has_value(); }
  Transformation cascade(std::vector<std::vector<index_t>> const& comps) const {
    std::vector<std::vector<Transformation const*>> ptr(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i)
      for (auto e : comps.at(i)) ptr[i].push_back(&levels[i].elements.at(e));
    return cascade_action(shape, ptr);
  }
  Word s1_word(index_t u, FiniteSemigroup const& S) const { return u == 0 ? Word{} : S.word(u - 1); }
};

namespace detail {

inline Selection select(XSPoset const& xs, std::vector<Transformation> const& s1, std::size_t component, index_t a,
                        index_t target) {
  StateSet A = xs.sets[a], B = xs.sets[target];
  for (index_t u = 0; u < s1.size(); ++u) {
    if (image(A, s1[u]) != B) continue;
    for (index_t v = 0; v < s1.size(); ++v) {
      if (image(B, s1[v]) != A) continue;
      bool fixes = true;
      for (StateSet m = A; m && fixes; m &= m - 1) {
        auto x = static_cast<index_t>(std::countr_zero(m));
        fixes = s1[v][s1[u][x]] == x;
      }
      if (fixes) return {component, u, v};
    }
    ensure(false, "no inverse selection for a similar set");
  }
  ensure(false, "no selection maps a representative onto " + format_state_set(B));
  return {};
}

}  // namespace detail

/// Relational covering check ψs ⊆ tψ at one stage, pointwise over the full
/// domain; returns the first failing (point, generator).
inline std::optional<std::pair<index_t, std::size_t>> verify_stage(HolonomyStage const& st, XSPoset const& xs,
                                                                   FiniteSemigroup const& S) {
  for (index_t p = 0; p < st.psi.size(); ++p)
    for (std::size_t g = 0; g < S.number_of_generators(); ++g) {
      StateSet lhs = detail::image(xs.sets[st.psi[p]], S.generator(g));
      StateSet rhs = xs.sets[st.psi[st.witnesses[g][p]]];
      if (!detail::subset_of(lhs, rhs)) return std::pair{p, g};
    }
  return std::nullopt;
}

inline HolonomyDecomposition holonomy_decompose(FiniteSemigroup const& S) {
  HolonomyDecomposition hd;
  hd.xs = xs_and_height(S);
  auto const& xs = hd.xs;
  hd.s1.push_back(Transformation::identity(S.degree()));
  hd.s1.insert(hd.s1.end(), S.elements().begin(), S.elements().end());
  hd.levels = holonomy_levels(S, xs);
  int n = xs.n();

  // The unique relation 1 → X of rank n.
  CascadeShape prev_shape;
  std::vector<index_t> phi{xs.whole()};
  std::vector<Transformation> prev_w(S.number_of_generators(), Transformation::identity(1));

  for (int k = n; k >= 1; --k) {
    auto const& L = hd.levels[k - 1];
    HolonomyStage st;
    st.k = k;
    std::vector<std::size_t> radix{L.states()};
    radix.insert(radix.end(), prev_shape.radices().begin(), prev_shape.radices().end());
    st.domain = CascadeShape(radix);

    std::map<index_t, Selection> cache;
    st.selections.resize(prev_shape.points());
    for (index_t y = 0; y < prev_shape.points(); ++y) {
      if (xs.height[phi[y]] != k) continue;
      auto it = cache.find(phi[y]);
      if (it == cache.end()) {
        std::size_t i = 0;
        while (i < L.components.size() && !xs.similar(L.components[i].rep, phi[y])) ++i;
        detail::ensure(i < L.components.size(), "no representative for a set of height " + std::to_string(k));
        it = cache.emplace(phi[y], detail::select(xs, hd.s1, i, L.components[i].rep, phi[y])).first;
      }
      st.selections[y] = it->second;
    }

    std::size_t X = L.states();
    st.psi.resize(st.domain.points());
    for (index_t y = 0; y < prev_shape.points(); ++y)
      for (std::size_t b = 0; b < X; ++b) {
        index_t out = phi[y];
        if (auto const& sel = st.selections[y]) {
          auto const& comp = L.components[sel->component];
          index_t brick = comp.bricks[L.paving.coordinate(b, sel->component)];
          out = xs.index_of(detail::image(xs.sets[brick], hd.s1[sel->u]));
        }
        st.psi[b + X * y] = out;
      }

    for (std::size_t g = 0; g < S.number_of_generators(); ++g) {
      auto const& s = S.generator(g);
      auto const& t = prev_w[g];
      std::vector<index_t> f(prev_shape.points());
      for (index_t y = 0; y < prev_shape.points(); ++y) {
        index_t yt = t[y];
        StateSet A = xs.sets[phi[y]], As = detail::image(A, s), B = xs.sets[phi[yt]];
        int hA = xs.height[phi[y]], hB = xs.height[phi[yt]];
        auto const& sy = st.selections[y];
        auto const& syt = st.selections[yt];
        if (As == B && hA == k && hB == k) {
          // u_y s v_{yt} permutes the bricks of a_i.
          detail::ensure(sy->component == syt->component, "similar images in different classes");
          auto const& comp = L.components[sy->component];
          Transformation h = hd.s1[sy->u] * s * hd.s1[syt->v];
          auto p = comp.permutation_index(detail::brick_permutation(xs, comp.bricks, h));
          detail::ensure(p.has_value(), "u s v is not in the holonomy group");
          std::vector<index_t> c(L.components.size(), 0);
          c[sy->component] = *p;
          f[y] = L.group_element(c);
        } else if (As == B && xs.height[xs.index_of(As)] == hA) {
          f[y] = L.group_element(std::vector<index_t>(L.components.size(), 0));
        } else if (As != B && hB == k) {
          auto const& comp = L.components[syt->component];
          StateSet C = detail::image(As, hd.s1[syt->v]);
          std::size_t j = 0;
          while (j < comp.bricks.size() && !detail::subset_of(C, xs.sets[comp.bricks[j]])) ++j;
          detail::ensure(j < comp.bricks.size(), "image is not contained in a brick");
          std::vector<std::size_t> state(L.components.size(), 0);
          state[syt->component] = j;
          f[y] = L.constant(L.paving.encode(state));
        } else {
          f[y] = L.constant(0);
        }
      }
      std::vector<index_t> w(st.domain.points());
      for (index_t y = 0; y < prev_shape.points(); ++y)
        for (std::size_t b = 0; b < X; ++b)
          w[b + X * y] = static_cast<index_t>(L.elements[f[y]][static_cast<index_t>(b)] + X * t[y]);
      st.witnesses.emplace_back(std::move(w));
    }

    int top = 0;
    for (auto p : st.psi) top = std::max(top, xs.height[p]);
    st.rank = top;
    detail::ensure(st.rank == k - 1, "stage " + std::to_string(k) + " has rank " + std::to_string(st.rank));
    if (auto bad = verify_stage(st, xs, S))
      detail::ensure(false, "holonomy square fails at stage " + std::to_string(k) + ", point " +
                                std::to_string(bad->first) + ", generator " + std::to_string(bad->second));

    prev_shape = st.domain;
    phi = st.psi;
    prev_w = st.witnesses;
    hd.stages.push_back(std::move(st));
  }

  hd.shape = prev_shape;
  hd.covering.phi.resize(prev_shape.points());
  for (index_t y = 0; y < prev_shape.points(); ++y) {
    StateSet a = xs.sets[phi[y]];
    detail::ensure(std::popcount(a) == 1, "final relation is not a map");
    hd.covering.phi[y] = static_cast<index_t>(std::countr_zero(a));
  }
  hd.covering.witnesses = prev_w;
  auto chk = verify_covering(hd.covering, S, [&](Transformation const& t) { return hd.in_holonomy_monoid(t); });
  detail::ensure(chk.ok, "holonomy covering fails: " + chk.reason);
  return hd;
}

}  // namespace tsg
