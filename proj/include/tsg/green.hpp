#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "tsg/errors.hpp"
#include "tsg/semigroup.hpp"

namespace tsg {

/// A partition of element indices. Classes are sorted internally and listed
/// in order of their least element.
struct Partition {
  std::vector<std::vector<index_t>> classes;
  std::vector<index_t> class_of;

  std::size_t size() const noexcept { return classes.size(); }
  std::vector<index_t> const& class_containing(index_t s) const { return classes[class_of[s]]; }
  bool same(index_t a, index_t b) const { return class_of[a] == class_of[b]; }

  static Partition from_labels(std::vector<index_t> const& label) {
    Partition p;
    p.class_of.assign(label.size(), 0);
    std::vector<std::optional<index_t>> remap;
    for (index_t i = 0; i < label.size(); ++i) {
      if (label[i] >= remap.size()) remap.resize(label[i] + 1);
      if (!remap[label[i]]) {
        remap[label[i]] = static_cast<index_t>(p.classes.size());
        p.classes.emplace_back();
      }
      p.class_of[i] = *remap[label[i]];
      p.classes[*remap[label[i]]].push_back(i);
    }
    return p;
  }

  friend bool operator==(Partition const& a, Partition const& b) { return a.classes == b.classes; }
};

namespace detail {

// Strongly connected components of a graph on 0..n-1 (iterative Tarjan).
// Returns a component label per vertex.
template <class Successors>
std::vector<index_t> strongly_connected(std::size_t n, Successors&& succ) {
  constexpr index_t unvisited = ~index_t{0};
  std::vector<index_t> order(n, unvisited), low(n, 0), comp(n, unvisited), stack;
  std::vector<bool> on_stack(n, false);
  index_t counter = 0, ncomp = 0;
  struct Frame {
    index_t v;
    std::vector<index_t> next;
    std::size_t pos;
  };
  for (index_t root = 0; root < n; ++root) {
    if (order[root] != unvisited) continue;
    std::vector<Frame> frames;
    auto open = [&](index_t v) {
      order[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack[v] = true;
      frames.push_back({v, succ(v), 0});
    };
    open(root);
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.pos < f.next.size()) {
        index_t w = f.next[f.pos++];
        if (order[w] == unvisited) {
          open(w);
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], order[w]);
        }
        continue;
      }
      index_t v = f.v;
      if (low[v] == order[v]) {
        index_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = ncomp;
        } while (w != v);
        ++ncomp;
      }
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
    }
  }
  return comp;
}

struct UnionFind {
  std::vector<index_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  index_t find(index_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(index_t a, index_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace detail

/// Green's relations of a finite semigroup.
struct GreenStructure {
  Partition l, r, j, h, d;
  /// below[a][b] is true when J-class b lies under J-class a, i.e. J(b) ⊆ J(a).
  std::vector<std::vector<bool>> below;
  std::vector<bool> regular;          // per J-class
  std::vector<index_t> idempotents;   // ascending element indices

  bool j_leq(index_t s, index_t t) const { return below[j.class_of[t]][j.class_of[s]]; }
  bool is_regular_element(index_t s) const { return regular[j.class_of[s]]; }

  /// J-class index of the minimal ideal.
  index_t minimal_j_class() const {
    for (index_t a = 0; a < j.size(); ++a) {
      bool minimal = true;
      for (index_t b = 0; b < j.size() && minimal; ++b)
        if (b != a && below[a][b]) minimal = false;
      if (minimal) return a;
    }
    throw InvariantViolation("no minimal J-class");
  }

  std::size_t number_of_regular_j_classes() const {
    return static_cast<std::size_t>(std::count(regular.begin(), regular.end(), true));
  }
};

/// Green's relations from reachability in the right and left Cayley graphs;
/// principal ideals are taken in S¹ so every element lies in its own ideal.
inline GreenStructure green_structure(FiniteSemigroup const& S) {
  std::size_t const n = S.size(), k = S.number_of_generators();
  auto right_succ = [&](index_t v) {
    std::vector<index_t> out(k);
    for (std::size_t g = 0; g < k; ++g) out[g] = S.right(v, g);
    return out;
  };
  auto left_succ = [&](index_t v) {
    std::vector<index_t> out(k);
    for (std::size_t g = 0; g < k; ++g) out[g] = S.left(v, g);
    return out;
  };
  auto both_succ = [&](index_t v) {
    auto out = right_succ(v);
    auto l = left_succ(v);
    out.insert(out.end(), l.begin(), l.end());
    return out;
  };

  GreenStructure G;
  G.r = Partition::from_labels(detail::strongly_connected(n, right_succ));
  G.l = Partition::from_labels(detail::strongly_connected(n, left_succ));
  G.j = Partition::from_labels(detail::strongly_connected(n, both_succ));

  std::vector<index_t> hl(n);
  {
    std::vector<std::pair<index_t, index_t>> key(n);
    for (index_t s = 0; s < n; ++s) key[s] = {G.l.class_of[s], G.r.class_of[s]};
    std::vector<std::pair<index_t, index_t>> seen;
    for (index_t s = 0; s < n; ++s) {
      auto it = std::find(seen.begin(), seen.end(), key[s]);
      if (it == seen.end()) {
        hl[s] = static_cast<index_t>(seen.size());
        seen.push_back(key[s]);
      } else {
        hl[s] = static_cast<index_t>(it - seen.begin());
      }
    }
  }
  G.h = Partition::from_labels(hl);

  detail::UnionFind uf(n);
  for (auto const& c : G.l.classes)
    for (auto s : c) uf.unite(c.front(), s);
  for (auto const& c : G.r.classes)
    for (auto s : c) uf.unite(c.front(), s);
  std::vector<index_t> dl(n);
  for (index_t s = 0; s < n; ++s) dl[s] = uf.find(s);
  G.d = Partition::from_labels(dl);
  detail::ensure(G.d == G.j, "D != J in a finite semigroup");

  // J-order: reachability between J-classes in the two-sided Cayley graph.
  std::size_t const nj = G.j.size();
  std::vector<std::vector<index_t>> dag(nj);
  for (index_t s = 0; s < n; ++s)
    for (auto t : both_succ(s))
      if (G.j.class_of[t] != G.j.class_of[s]) dag[G.j.class_of[s]].push_back(G.j.class_of[t]);
  G.below.assign(nj, std::vector<bool>(nj, false));
  for (index_t a = 0; a < nj; ++a) {
    std::vector<index_t> stack{a};
    G.below[a][a] = true;
    while (!stack.empty()) {
      index_t c = stack.back();
      stack.pop_back();
      for (auto d : dag[c])
        if (!G.below[a][d]) {
          G.below[a][d] = true;
          stack.push_back(d);
        }
    }
  }

  G.regular.assign(nj, false);
  for (index_t s = 0; s < n; ++s)
    if (S.is_idempotent(s)) {
      G.idempotents.push_back(s);
      G.regular[G.j.class_of[s]] = true;
    }
  return G;
}

/// Result of a regularity test; `inverse` satisfies s·t·s = s and t·s·t = t.
struct RegularityWitness {
  bool regular = false;
  std::optional<index_t> inverse;
};

inline RegularityWitness is_regular(FiniteSemigroup const& S, index_t s) {
  Transformation const& x = S.at(s);
  for (index_t t = 0; t < S.size(); ++t) {
    Transformation xt = x * S.at(t);
    if (xt * x == x) {
      index_t inv = S.index_of(S.at(t) * xt);
      detail::ensure(S.at(s) * S.at(inv) * S.at(s) == x, "inverse witness fails sts = s");
      detail::ensure(S.at(inv) * S.at(s) * S.at(inv) == S.at(inv), "inverse witness fails tst = t");
      return {true, inv};
    }
  }
  return {false, std::nullopt};
}

/// Elements of the H-class of idempotent `e`, ascending.
inline std::vector<index_t> maximal_subgroup_elements(FiniteSemigroup const& S, GreenStructure const& G,
                                                      index_t e) {
  if (!S.is_idempotent(e)) throw PreconditionError("maximal_subgroup: element is not idempotent");
  auto const& hs = G.h.class_containing(e);
  // H_e = eSe ∩ J_e
  std::vector<index_t> ese;
  for (index_t s = 0; s < S.size(); ++s) {
    index_t x = S.product(S.product(e, s), e);
    if (G.j.same(x, e)) ese.push_back(x);
  }
  std::sort(ese.begin(), ese.end());
  ese.erase(std::unique(ese.begin(), ese.end()), ese.end());
  detail::ensure(ese == hs, "eSe ∩ J_e differs from H_e");
  return hs;
}

enum class PrincipalFactorKind { null, zero_simple, simple_minimal_ideal };

/// J_s with a zero adjoined; products leaving J_s become zero.
struct PrincipalFactor {
  std::vector<index_t> j_class;
  bool has_zero = false;  // some in-class product actually leaves the class
  PrincipalFactorKind kind = PrincipalFactorKind::null;
  /// product(i, j) for positions i, j in `j_class`; nullopt stands for zero.
  std::vector<std::vector<std::optional<index_t>>> table;

  std::optional<index_t> product(index_t x, index_t y) const {
    auto px = std::lower_bound(j_class.begin(), j_class.end(), x) - j_class.begin();
    auto py = std::lower_bound(j_class.begin(), j_class.end(), y) - j_class.begin();
    return table.at(px).at(py);
  }
};

inline PrincipalFactor principal_factor(FiniteSemigroup const& S, GreenStructure const& G, index_t s) {
  PrincipalFactor P;
  P.j_class = G.j.class_containing(s);
  index_t jc = G.j.class_of[s];
  std::size_t m = P.j_class.size();
  P.table.assign(m, std::vector<std::optional<index_t>>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      index_t x = S.product(P.j_class[a], P.j_class[b]);
      if (G.j.class_of[x] == jc)
        P.table[a][b] = x;
      else
        P.has_zero = true;
    }
  if (!G.regular[jc]) {
    P.kind = PrincipalFactorKind::null;
    for (auto const& row : P.table)
      for (auto const& v : row) detail::ensure(!v, "nonregular principal factor is not null");
  } else if (G.minimal_j_class() == jc && m == S.size()) {
    P.kind = PrincipalFactorKind::simple_minimal_ideal;
  } else {
    P.kind = PrincipalFactorKind::zero_simple;
  }
  return P;
}

}  // namespace tsg
