#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsg/errors.hpp"
#include "tsg/semigroup.hpp"

namespace tsg {

/// A finite group given by its multiplication table.
class Group {
 public:
  Group() : table_{{0}}, identity_(0), inverse_{0} {}

  explicit Group(std::vector<std::vector<index_t>> table) : table_(std::move(table)) {
    std::size_t n = table_.size();
    if (n == 0) throw PreconditionError("group must be nonempty");
    for (auto const& row : table_) {
      if (row.size() != n) throw PreconditionError("group table is not square");
      for (auto x : row)
        if (x >= n) throw PreconditionError("group table entry out of range");
    }
    std::optional<index_t> id;
    for (index_t e = 0; e < n && !id; ++e) {
      bool ok = true;
      for (index_t x = 0; x < n && ok; ++x) ok = table_[e][x] == x && table_[x][e] == x;
      if (ok) id = e;
    }
    if (!id) throw PreconditionError("group table has no identity");
    identity_ = *id;
    inverse_.assign(n, 0);
    for (index_t x = 0; x < n; ++x) {
      bool found = false;
      for (index_t y = 0; y < n && !found; ++y)
        if (table_[x][y] == identity_) {
          if (table_[y][x] != identity_) throw PreconditionError("group table: one-sided inverse");
          inverse_[x] = y;
          found = true;
        }
      if (!found) throw PreconditionError("group table: element without inverse");
    }
    for (index_t a = 0; a < n; ++a)
      for (index_t b = 0; b < n; ++b)
        for (index_t c = 0; c < n; ++c)
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
            throw PreconditionError("group table is not associative");
  }

  std::size_t order() const noexcept { return table_.size(); }
  index_t identity() const noexcept { return identity_; }
  index_t mul(index_t a, index_t b) const { return table_[a][b]; }
  index_t inverse(index_t a) const { return inverse_[a]; }
  std::vector<std::vector<index_t>> const& table() const noexcept { return table_; }

  std::size_t element_order(index_t a) const {
    std::size_t k = 1;
    for (index_t x = a; x != identity_; x = mul(x, a)) ++k;
    return k;
  }

  bool is_abelian() const {
    for (index_t a = 0; a < order(); ++a)
      for (index_t b = 0; b < order(); ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  /// Subgroup generated by `gens`, as a sorted element list.
  std::vector<index_t> generated(std::vector<index_t> const& gens) const {
    std::vector<bool> in(order(), false);
    std::vector<index_t> out{identity_};
    in[identity_] = true;
    for (std::size_t i = 0; i < out.size(); ++i)
      for (auto g : gens) {
        index_t x = mul(out[i], g);
        if (!in[x]) {
          in[x] = true;
          out.push_back(x);
        }
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// A generating set chosen greedily in element order.
  std::vector<index_t> small_generating_set() const {
    std::vector<index_t> gens;
    std::vector<index_t> span{identity_};
    for (index_t x = 0; x < order() && span.size() < order(); ++x) {
      if (std::binary_search(span.begin(), span.end(), x)) continue;
      gens.push_back(x);
      span = generated(gens);
    }
    return gens;
  }

 private:
  std::vector<std::vector<index_t>> table_;
  index_t identity_;
  std::vector<index_t> inverse_;
};

/// Group on a subset of a semigroup closed under its product, indexed by
/// position in `elems`.
inline Group group_from_elements(FiniteSemigroup const& S, std::vector<index_t> const& elems) {
  std::map<index_t, index_t> pos;
  for (index_t i = 0; i < elems.size(); ++i) pos[elems[i]] = i;
  std::vector<std::vector<index_t>> tab(elems.size(), std::vector<index_t>(elems.size()));
  for (index_t a = 0; a < elems.size(); ++a)
    for (index_t b = 0; b < elems.size(); ++b) {
      auto it = pos.find(S.product(elems[a], elems[b]));
      if (it == pos.end()) throw PreconditionError("element subset is not closed under multiplication");
      tab[a][b] = it->second;
    }
  return Group(std::move(tab));
}

/// Group table of a set of permutations closed under composition.
inline Group group_from_permutations(std::vector<Transformation> const& perms) {
  std::map<Transformation, index_t> pos;
  for (index_t i = 0; i < perms.size(); ++i) pos[perms[i]] = i;
  std::vector<std::vector<index_t>> tab(perms.size(), std::vector<index_t>(perms.size()));
  for (index_t a = 0; a < perms.size(); ++a)
    for (index_t b = 0; b < perms.size(); ++b) {
      auto it = pos.find(perms[a] * perms[b]);
      if (it == pos.end()) throw PreconditionError("permutation set is not closed");
      tab[a][b] = it->second;
    }
  return Group(std::move(tab));
}

/// One composition factor G_i / G_{i+1}. Simple abelian factors are cyclic
/// of prime order.
struct SimpleFactor {
  std::size_t order = 1;
  bool abelian = true;
  bool cyclic = true;

  std::string name() const {
    if (cyclic) return "C" + std::to_string(order);
    return "simple(" + std::to_string(order) + ")";
  }
  friend auto operator<=>(SimpleFactor const&, SimpleFactor const&) = default;
};

inline constexpr std::size_t default_group_bound = 2000;

namespace detail {

using Subset = std::vector<index_t>;  // sorted element indices

inline bool is_subset(Subset const& a, Subset const& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Normal closure of x inside the subgroup H.
inline Subset normal_closure(Group const& G, Subset const& H, index_t x) {
  std::vector<index_t> conj;
  for (auto h : H) conj.push_back(G.mul(G.mul(G.inverse(h), x), h));
  std::sort(conj.begin(), conj.end());
  conj.erase(std::unique(conj.begin(), conj.end()), conj.end());
  return G.generated(conj);
}

// All normal subgroups of H (a subgroup of G), from joins of normal closures.
inline std::vector<Subset> normal_subgroups(Group const& G, Subset const& H) {
  std::vector<Subset> found;
  auto add = [&](Subset s) {
    if (std::find(found.begin(), found.end(), s) == found.end()) {
      found.push_back(std::move(s));
      return true;
    }
    return false;
  };
  for (auto x : H) add(normal_closure(G, H, x));
  for (std::size_t i = 0; i < found.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) {
      Subset u;
      std::set_union(found[i].begin(), found[i].end(), found[j].begin(), found[j].end(),
                     std::back_inserter(u));
      add(G.generated(u));
    }
  return found;
}

}  // namespace detail

/// Composition factors of G, top to bottom, from a chain of maximal normal
/// subgroups found by exhaustive normal-closure enumeration.
inline std::vector<SimpleFactor> composition_series(Group const& G,
                                                    std::size_t bound = default_group_bound) {
  if (G.order() > bound)
    throw BoundExceeded("composition_series: group order " + std::to_string(G.order()) +
                        " exceeds bound " + std::to_string(bound));
  std::vector<SimpleFactor> out;
  detail::Subset H(G.order());
  for (index_t i = 0; i < G.order(); ++i) H[i] = i;
  while (H.size() > 1) {
    auto normals = detail::normal_subgroups(G, H);
    std::optional<detail::Subset> best;
    for (auto const& N : normals) {
      if (N.size() == H.size()) continue;
      bool maximal = true;
      for (auto const& M : normals)
        if (M.size() != H.size() && M.size() > N.size() && detail::is_subset(N, M)) maximal = false;
      if (maximal && (!best || N.size() > best->size() || (N.size() == best->size() && N < *best)))
        best = N;
    }
    detail::ensure(best.has_value(), "nontrivial group without proper normal subgroup");
    SimpleFactor f;
    f.order = H.size() / best->size();
    f.abelian = true;
    for (auto a : H)
      for (auto b : H) {
        index_t comm = G.mul(G.mul(G.inverse(a), G.inverse(b)), G.mul(a, b));
        if (!std::binary_search(best->begin(), best->end(), comm)) f.abelian = false;
      }
    f.cyclic = f.abelian;
    out.push_back(f);
    H = *best;
  }
  return out;
}

/// An isomorphism a -> b as an image table, or nullopt. Generators of `a`
/// are mapped to every order-compatible tuple in `b`; candidate maps are
/// extended along a Cayley graph and checked.
inline std::optional<std::vector<index_t>> find_isomorphism(Group const& a, Group const& b) {
  if (a.order() != b.order()) return std::nullopt;
  std::size_t n = a.order();
  std::vector<std::size_t> oa(n), ob(n);
  for (index_t x = 0; x < n; ++x) {
    oa[x] = a.element_order(x);
    ob[x] = b.element_order(x);
  }
  {
    auto sa = oa, sb = ob;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  auto gens = a.small_generating_set();
  if (gens.empty()) return std::vector<index_t>{b.identity()};

  // Express every element of a as (parent, generator) in a BFS tree.
  constexpr index_t none = ~index_t{0};
  std::vector<index_t> parent(n, none), via(n, none), bfs{a.identity()};
  parent[a.identity()] = a.identity();
  for (std::size_t i = 0; i < bfs.size(); ++i)
    for (index_t g = 0; g < gens.size(); ++g) {
      index_t y = a.mul(bfs[i], gens[g]);
      if (parent[y] == none) {
        parent[y] = bfs[i];
        via[y] = g;
        bfs.push_back(y);
      }
    }

  std::vector<index_t> images(gens.size());
  std::optional<std::vector<index_t>> result;
  auto attempt = [&]() -> bool {
    std::vector<index_t> phi(n, none);
    phi[a.identity()] = b.identity();
    for (std::size_t i = 1; i < bfs.size(); ++i)
      phi[bfs[i]] = b.mul(phi[parent[bfs[i]]], images[via[bfs[i]]]);
    std::vector<bool> hit(n, false);
    for (auto y : phi) {
      if (hit[y]) return false;
      hit[y] = true;
    }
    for (index_t x = 0; x < n; ++x)
      for (index_t g = 0; g < gens.size(); ++g)
        if (phi[a.mul(x, gens[g])] != b.mul(phi[x], images[g])) return false;
    result = std::move(phi);
    return true;
  };
  std::function<bool(std::size_t)> search = [&](std::size_t k) -> bool {
    if (k == gens.size()) return attempt();
    for (index_t y = 0; y < n; ++y) {
      if (ob[y] != oa[gens[k]]) continue;
      images[k] = y;
      if (search(k + 1)) return true;
    }
    return false;
  };
  search(0);
  return result;
}

inline bool groups_isomorphic(Group const& a, Group const& b) { return find_isomorphism(a, b).has_value(); }

}  // namespace tsg
