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

/// A point of a Rees matrix semigroup with zero: (gamma, g, lambda) or zero.
struct ReesTriple {
  index_t gamma = 0;   // position in gamma_reps (an R-class of J_e)
  index_t group = 0;   // position in group_elements
  index_t lambda = 0;  // position in lambda_reps (an L-class of J_e)
  friend bool operator==(ReesTriple const&, ReesTriple const&) = default;
};

/// J_e⁰ written as 𝔐⁰(G, Γ, Λ, u) with G = H_e.
///
/// Λ indexes the H-classes of R_e (one per L-class of J_e) and Γ the
/// H-classes of L_e (one per R-class). Each x in J_e factors uniquely as
/// x = q_γ g r_λ with q_γ ∈ Γ, g ∈ G, r_λ ∈ Λ.
struct ReesCoordinatization {
  index_t idempotent = 0;
  std::vector<index_t> group_elements;   // H_e, ascending; group index i ↦ element
  Group group;
  std::vector<index_t> lambda_reps;      // r_λ ∈ R_e, one per L-class
  std::vector<index_t> gamma_reps;       // q_γ ∈ L_e, one per R-class
  std::vector<index_t> lambda_left_inv;  // r'_λ with r_λ r'_λ = e
  std::vector<index_t> gamma_right_inv;  // q'_γ with q'_γ q_γ = e
  /// sandwich[λ][γ] = r_λ q_γ as a group index when it lies in H_e.
  std::vector<std::vector<std::optional<index_t>>> sandwich;
  std::vector<index_t> j_class;

  std::size_t lambda_size() const noexcept { return lambda_reps.size(); }
  std::size_t gamma_size() const noexcept { return gamma_reps.size(); }

  std::optional<ReesTriple> rees_product(std::optional<ReesTriple> a, std::optional<ReesTriple> b) const {
    if (!a || !b) return std::nullopt;
    auto u = sandwich[a->lambda][b->gamma];
    if (!u) return std::nullopt;
    return ReesTriple{a->gamma, group.mul(group.mul(a->group, *u), b->group), b->lambda};
  }
};

namespace detail {
inline index_t position(std::vector<index_t> const& sorted, index_t x) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
  ensure(it != sorted.end() && *it == x, "element not found in class");
  return static_cast<index_t>(it - sorted.begin());
}
}  // namespace detail

class ReesMap {
 public:
  ReesMap(FiniteSemigroup const& S, GreenStructure const& G, ReesCoordinatization C)
      : S_(&S), G_(&G), C_(std::move(C)) {}

  ReesCoordinatization const& data() const noexcept { return C_; }

  ReesTriple encode(index_t x) const {
    auto const& c = C_;
    if (!G_->j.same(x, c.idempotent)) throw PreconditionError("encode: element outside J_e");
    index_t gamma = gamma_of_r_class_.at(G_->r.class_of[x]);
    index_t lambda = lambda_of_l_class_.at(G_->l.class_of[x]);
    index_t g = S_->product(S_->product(c.gamma_right_inv[gamma], x), c.lambda_left_inv[lambda]);
    return {gamma, detail::position(c.group_elements, g), lambda};
  }

  index_t decode(ReesTriple t) const {
    auto const& c = C_;
    return S_->product(S_->product(c.gamma_reps.at(t.gamma), c.group_elements.at(t.group)),
                       c.lambda_reps.at(t.lambda));
  }

  void index_classes() {
    for (index_t i = 0; i < C_.gamma_reps.size(); ++i) gamma_of_r_class_[G_->r.class_of[C_.gamma_reps[i]]] = i;
    for (index_t i = 0; i < C_.lambda_reps.size(); ++i)
      lambda_of_l_class_[G_->l.class_of[C_.lambda_reps[i]]] = i;
  }

 private:
  FiniteSemigroup const* S_;
  GreenStructure const* G_;
  ReesCoordinatization C_;
  std::map<index_t, index_t> gamma_of_r_class_, lambda_of_l_class_;
};

/// Coordinatizes the regular principal factor J_e⁰. Representatives are the
/// least element index in each class (e for H_e); the round trip and the Rees product
/// are checked against the semigroup on every pair before returning.
inline ReesMap rees_coordinatize(FiniteSemigroup const& S, GreenStructure const& G, index_t e) {
  if (!S.is_idempotent(e)) throw PreconditionError("rees_coordinatize: element is not idempotent");
  index_t jc = G.j.class_of[e];
  if (!G.regular[jc]) throw PreconditionError("rees_coordinatize: J-class is not regular");

  ReesCoordinatization C;
  C.idempotent = e;
  C.j_class = G.j.classes[jc];
  C.group_elements = maximal_subgroup_elements(S, G, e);
  C.group = group_from_elements(S, C.group_elements);

  // Least element of each H-class of R_e and of L_e, except that H_e itself
  // is represented by e.
  std::vector<index_t> seen_l, seen_r;
  for (auto x : G.r.class_containing(e))
    if (std::find(seen_l.begin(), seen_l.end(), G.l.class_of[x]) == seen_l.end()) {
      seen_l.push_back(G.l.class_of[x]);
      C.lambda_reps.push_back(G.h.same(x, e) ? e : x);
    }
  for (auto x : G.l.class_containing(e))
    if (std::find(seen_r.begin(), seen_r.end(), G.r.class_of[x]) == seen_r.end()) {
      seen_r.push_back(G.r.class_of[x]);
      C.gamma_reps.push_back(G.h.same(x, e) ? e : x);
    }

  for (auto r : C.lambda_reps) {
    std::optional<index_t> inv;
    for (index_t y = 0; y < S.size() && !inv; ++y)
      if (S.product(r, y) == e) inv = y;
    detail::ensure(inv.has_value(), "no right multiplier returns r_λ to e");
    C.lambda_left_inv.push_back(*inv);
  }
  for (auto q : C.gamma_reps) {
    std::optional<index_t> inv;
    for (index_t y = 0; y < S.size() && !inv; ++y)
      if (S.product(y, q) == e) inv = y;
    detail::ensure(inv.has_value(), "no left multiplier returns q_γ to e");
    C.gamma_right_inv.push_back(*inv);
  }

  C.sandwich.assign(C.lambda_reps.size(), std::vector<std::optional<index_t>>(C.gamma_reps.size()));
  for (index_t l = 0; l < C.lambda_reps.size(); ++l)
    for (index_t g = 0; g < C.gamma_reps.size(); ++g) {
      index_t p = S.product(C.lambda_reps[l], C.gamma_reps[g]);
      if (G.h.same(p, e)) C.sandwich[l][g] = detail::position(C.group_elements, p);
    }

  ReesMap M(S, G, std::move(C));
  M.index_classes();
  auto const& c = M.data();
  for (auto const& row : c.sandwich)
    detail::ensure(std::any_of(row.begin(), row.end(), [](auto const& v) { return v.has_value(); }),
                   "sandwich matrix has a zero row");
  for (index_t g = 0; g < c.gamma_size(); ++g) {
    bool any = false;
    for (index_t l = 0; l < c.lambda_size(); ++l) any = any || c.sandwich[l][g].has_value();
    detail::ensure(any, "sandwich matrix has a zero column");
  }
  detail::ensure(c.j_class.size() == c.gamma_size() * c.group_elements.size() * c.lambda_size(),
                 "|J_e| != |Γ||G||Λ|");
  for (auto x : c.j_class) detail::ensure(M.decode(M.encode(x)) == x, "Rees decode(encode(x)) != x");
  return M;
}

/// Checks that the Rees product reproduces the principal factor on every pair.
/// Returns the number of pairs checked.
inline std::size_t verify_rees_products(FiniteSemigroup const& S, GreenStructure const& G, ReesMap const& M) {
  auto const& c = M.data();
  std::size_t checked = 0;
  for (auto x : c.j_class)
    for (auto y : c.j_class) {
      index_t xy = S.product(x, y);
      auto r = c.rees_product(M.encode(x), M.encode(y));
      bool in_class = G.j.same(xy, c.idempotent);
      detail::ensure(r.has_value() == in_class, "Rees product zero pattern differs");
      if (r) detail::ensure(M.decode(*r) == xy, "Rees product differs from principal factor");
      ++checked;
    }
  return checked;
}

}  // namespace tsg
