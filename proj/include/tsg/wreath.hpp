#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "tsg/errors.hpp"
#include "tsg/semigroup.hpp"
#include "tsg/stochastic.hpp"

namespace tsg {

/// Mixed-radix coordinates on X_1 × ⋯ × X_n with x_1 varying fastest.
/// Coordinate i of a cascade depends on the tail (x_{i+1}, …, x_n), which
/// is itself encoded in the same way.
class CascadeShape {
 public:
  CascadeShape() : prefix_{1} {}
  explicit CascadeShape(std::vector<std::size_t> radix) : radix_(std::move(radix)), prefix_{1} {
    for (auto r : radix_) {
      if (r == 0) throw PreconditionError("cascade coordinate with empty state set");
      prefix_.push_back(prefix_.back() * r);
    }
  }

  std::size_t levels() const noexcept { return radix_.size(); }
  std::size_t radix(std::size_t i) const { return radix_.at(i); }
  std::vector<std::size_t> const& radices() const noexcept { return radix_; }
  std::size_t points() const noexcept { return prefix_.back(); }
  std::size_t coordinate(std::size_t y, std::size_t i) const { return y / prefix_[i] % radix_[i]; }
  /// Index of (x_{i+1}, …, x_n) among the tails above level i.
  std::size_t tail(std::size_t y, std::size_t i) const { return y / prefix_[i + 1]; }
  std::size_t tail_count(std::size_t i) const { return points() / prefix_[i + 1]; }
  std::size_t with_coordinate(std::size_t y, std::size_t i, std::size_t x) const {
    return y - coordinate(y, i) * prefix_[i] + x * prefix_[i];
  }
  std::vector<std::size_t> decode(std::size_t y) const {
    std::vector<std::size_t> c(levels());
    for (std::size_t i = 0; i < levels(); ++i) c[i] = coordinate(y, i);
    return c;
  }
  std::size_t encode(std::vector<std::size_t> const& c) const {
    std::size_t y = 0;
    for (std::size_t i = levels(); i-- > 0;) y = y * radix_[i] + c.at(i);
    return y;
  }

 private:
  std::vector<std::size_t> radix_;
  std::vector<std::size_t> prefix_;
};

/// components[i][z] is the transformation of X_{i+1} applied at tail z.
inline Transformation cascade_action(CascadeShape const& shape,
                                     std::vector<std::vector<Transformation const*>> const& components) {
  std::vector<index_t> im(shape.points());
  for (std::size_t y = 0; y < shape.points(); ++y) {
    std::size_t out = 0;
    for (std::size_t i = shape.levels(); i-- > 0;) {
      auto const& t = *components[i][shape.tail(y, i)];
      out = out * shape.radix(i) + t[static_cast<index_t>(shape.coordinate(y, i))];
    }
    im[y] = static_cast<index_t>(out);
  }
  return Transformation(std::move(im));
}

/// Transformation of X_{i+1} that `t` applies at tail z, or nullopt when
/// the i-th image coordinate depends on lower coordinates.
inline std::optional<Transformation> cascade_component(CascadeShape const& shape, Transformation const& t,
                                                       std::size_t i, std::size_t z) {
  std::size_t base = z * (shape.points() / shape.tail_count(i));
  std::vector<index_t> im(shape.radix(i));
  for (std::size_t x = 0; x < shape.radix(i); ++x) {
    std::size_t y = shape.with_coordinate(base, i, x);
    im[x] = static_cast<index_t>(shape.coordinate(t[static_cast<index_t>(y)], i));
  }
  // The value must not depend on the lower coordinates.
  std::size_t lower = shape.points() / (shape.tail_count(i) * shape.radix(i));
  for (std::size_t l = 1; l < lower; ++l)
    for (std::size_t x = 0; x < shape.radix(i); ++x) {
      std::size_t y = shape.with_coordinate(base + l, i, x);
      if (shape.coordinate(t[static_cast<index_t>(y)], i) != im[x]) return std::nullopt;
    }
  return Transformation(std::move(im));
}

/// Wreath product (X_1,S_1) ≀ ⋯ ≀ (X_n,S_n) on X_1 × ⋯ × X_n, with
/// (x, y)(f, t) = (x(yf), yt) iterated, so S_1 is the most dependent.
inline FiniteSemigroup wreath(std::vector<FiniteSemigroup> const& components, std::size_t bound = 100'000) {
  if (components.empty()) throw PreconditionError("wreath: at least one component is required");
  std::vector<std::size_t> radix;
  for (auto const& c : components) radix.push_back(c.degree());
  CascadeShape shape(radix);
  mpz_class count = 1;
  for (std::size_t i = 0; i < components.size(); ++i) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), components[i].size(), shape.tail_count(i));
    count *= p;
  }
  if (count > bound) throw BoundExceeded("wreath product has " + count.get_str() + " elements");

  // Odometer over (f_1, …, f_n), each f_i a table of component indices.
  std::vector<std::vector<index_t>> choice(components.size());
  for (std::size_t i = 0; i < components.size(); ++i) choice[i].assign(shape.tail_count(i), 0);
  std::vector<std::vector<Transformation const*>> ptr(components.size());
  std::vector<Transformation> elements;
  for (;;) {
    for (std::size_t i = 0; i < components.size(); ++i) {
      ptr[i].resize(choice[i].size());
      for (std::size_t z = 0; z < choice[i].size(); ++z) ptr[i][z] = &components[i].at(choice[i][z]);
    }
    elements.push_back(cascade_action(shape, ptr));
    std::size_t i = 0, z = 0;
    for (;;) {
      if (i == components.size()) break;
      if (++choice[i][z] < components[i].size()) break;
      choice[i][z] = 0;
      if (++z == choice[i].size()) z = 0, ++i;
    }
    if (i == components.size()) break;
  }
  auto S = semigroup_from_elements(shape.points(), elements, bound);
  detail::ensure(S.size() == elements.size(), "wreath product action is not faithful");
  return S;
}

/// (Y,T) covers (X,S) through the partial map φ: Y → X. witnesses[g] is the
/// element t with φs = tφ for generator g of S.
struct Covering {
  std::vector<std::optional<index_t>> phi;
  std::vector<Transformation> witnesses;

  std::size_t domain() const noexcept { return phi.size(); }
};

struct CoveringCheck {
  bool ok = true;
  std::string reason;
  std::optional<index_t> point;
  std::optional<std::size_t> generator;

  explicit operator bool() const noexcept { return ok; }
};

/// Checks surjectivity and φs = tφ on dom φ for every generator. The first
/// counterexample in (point, generator) order is reported.
inline CoveringCheck verify_covering(Covering const& cov, FiniteSemigroup const& S,
                                     std::function<bool(Transformation const&)> const& in_T = {}) {
  auto fail = [](std::string why, std::optional<index_t> y = {}, std::optional<std::size_t> g = {}) {
    return CoveringCheck{false, std::move(why), y, g};
  };
  if (cov.witnesses.size() != S.number_of_generators())
    return fail("expected " + std::to_string(S.number_of_generators()) + " witnesses, got " +
                std::to_string(cov.witnesses.size()));
  std::vector<bool> hit(S.degree(), false);
  for (index_t y = 0; y < cov.domain(); ++y)
    if (cov.phi[y]) {
      if (*cov.phi[y] >= S.degree()) return fail("phi maps outside X", y);
      hit[*cov.phi[y]] = true;
    }
  for (index_t x = 0; x < S.degree(); ++x)
    if (!hit[x]) return fail("phi is not surjective: state " + std::to_string(x) + " is missed");
  for (std::size_t g = 0; g < cov.witnesses.size(); ++g) {
    if (cov.witnesses[g].degree() != cov.domain()) return fail("witness has wrong degree", {}, g);
    if (in_T && !in_T(cov.witnesses[g])) return fail("witness is not an element of T", {}, g);
  }
  for (index_t y = 0; y < cov.domain(); ++y) {
    if (!cov.phi[y]) continue;
    for (std::size_t g = 0; g < cov.witnesses.size(); ++g) {
      index_t yt = cov.witnesses[g][y];
      index_t want = S.generator(g)[*cov.phi[y]];
      if (!cov.phi[yt]) return fail("yt leaves dom phi", y, g);
      if (*cov.phi[yt] != want)
        return fail("square fails: (y phi)s = " + std::to_string(want) + " but (yt)phi = " +
                        std::to_string(*cov.phi[yt]),
                    y, g);
    }
  }
  return {};
}

/// The witness of element s of S: the product of generator witnesses along
/// its word.
inline Transformation covering_witness(Covering const& cov, FiniteSemigroup const& S, index_t s) {
  auto const& w = S.word(s);
  Transformation t = cov.witnesses.at(w.at(0));
  for (std::size_t k = 1; k < w.size(); ++k) t = t * cov.witnesses.at(w[k]);
  return t;
}

/// Composite of (X,S) ≺ (Y,T) by `first` and (Y,T) ≺ (Z,V) by `second`.
inline Covering compose_coverings(Covering const& first, FiniteSemigroup const& T, Covering const& second) {
  Covering out;
  out.phi.resize(second.domain());
  for (index_t z = 0; z < second.domain(); ++z)
    if (auto y = second.phi[z]; y && *y < first.domain()) out.phi[z] = first.phi[*y];
  for (auto const& t : first.witnesses) out.witnesses.push_back(covering_witness(second, T, T.index_of(t)));
  return out;
}

/// A finitely supported distribution over elements of T, which need not be
/// enumerated.
struct LiftedDistribution {
  std::vector<Transformation> support;
  std::vector<Rational> weights;
};

/// ℙφ on distributions over Y; nullopt when some y with π(y) > 0 lies
/// outside dom φ.
inline std::optional<Distribution> extend_partial_map(Covering const& cov, std::size_t x_count, Distribution const& pi) {
  if (pi.base() != cov.domain()) throw PreconditionError("distribution is not over the covering domain");
  std::map<index_t, Rational> w;
  for (auto const& [y, p] : pi.weights()) {
    if (!cov.phi[y]) return std::nullopt;
    w[*cov.phi[y]] += p;
  }
  return Distribution(x_count, std::move(w));
}

inline Distribution act_lifted(Distribution const& pi, LiftedDistribution const& nu) {
  std::map<index_t, Rational> w;
  for (auto const& [y, p] : pi.weights())
    for (std::size_t k = 0; k < nu.support.size(); ++k) w[nu.support[k][y]] += p * nu.weights[k];
  return Distribution(pi.base(), std::move(w));
}

namespace detail {

inline std::vector<Distribution> lift_test_set(Covering const& cov) {
  std::vector<index_t> dom;
  for (index_t y = 0; y < cov.domain(); ++y)
    if (cov.phi[y]) dom.push_back(y);
  std::vector<Distribution> out;
  for (auto y : dom) out.push_back(Distribution::point(cov.domain(), y));
  out.push_back(Distribution::uniform(cov.domain(), dom));
  return out;
}

}  // namespace detail

/// Checks (πℙφ)μ = (πν)ℙφ for every π in `tests`, plus point masses and the
/// uniform distribution on dom φ.
inline bool verify_lift(Covering const& cov, FiniteSemigroup const& S, Distribution const& mu,
                        LiftedDistribution const& nu, std::vector<Distribution> tests = {}) {
  auto base = detail::lift_test_set(cov);
  tests.insert(tests.end(), base.begin(), base.end());
  for (auto const& pi : tests) {
    auto left = extend_partial_map(cov, S.degree(), pi);
    if (!left) continue;
    auto right = extend_partial_map(cov, S.degree(), act_lifted(pi, nu));
    if (!right || act(S, *left, mu) != *right) return false;
  }
  return true;
}

/// ν(t) = Σ_{φs=tφ} μ(s), with t the word-product witness of each s in the
/// support of μ. The distribution square is verified exactly.
inline LiftedDistribution lift_covering(Covering const& cov, FiniteSemigroup const& S, Distribution const& mu,
                                        std::vector<Distribution> const& tests = {}) {
  if (mu.base() != S.size()) throw PreconditionError("lift_covering: distribution is not over S");
  if (auto chk = verify_covering(cov, S); !chk)
    throw PreconditionError("lift_covering: unverifiable covering: " + chk.reason);
  std::vector<Transformation> order;
  std::map<std::size_t, Rational> mass;
  for (auto const& [s, w] : mu.weights()) {
    auto t = covering_witness(cov, S, s);
    auto it = std::find(order.begin(), order.end(), t);
    std::size_t k = static_cast<std::size_t>(it - order.begin());
    if (it == order.end()) order.push_back(std::move(t));
    mass[k] += w;
  }
  LiftedDistribution nu;
  nu.support = std::move(order);
  for (std::size_t k = 0; k < nu.support.size(); ++k) nu.weights.push_back(mass[k]);
  detail::ensure(verify_lift(cov, S, mu, nu, tests), "lifted distribution does not commute with the covering");
  return nu;
}

/// Converse direction: given φ and, for each generator s, a distribution ν_s
/// making the square commute for the point mass at s, every t in the
/// support of ν_s satisfies φs = tφ; the first one becomes the witness.
inline Covering covering_from_lifts(std::vector<std::optional<index_t>> const& phi, FiniteSemigroup const& S,
                                    std::vector<LiftedDistribution> const& per_generator) {
  if (per_generator.size() != S.number_of_generators())
    throw PreconditionError("covering_from_lifts: one distribution per generator is required");
  Covering cov;
  cov.phi = phi;
  for (std::size_t g = 0; g < per_generator.size(); ++g) {
    auto const& nu = per_generator[g];
    if (nu.support.empty()) throw PreconditionError("covering_from_lifts: empty distribution");
    auto mu = Distribution::point(S.size(), S.generator_element(g));
    if (!verify_lift(cov, S, mu, nu))
      throw PreconditionError("covering_from_lifts: square fails for generator " + std::to_string(g));
    cov.witnesses.push_back(nu.support.front());
  }
  if (auto chk = verify_covering(cov, S); !chk)
    throw InvariantViolation("covering_from_lifts produced an invalid covering: " + chk.reason);
  return cov;
}

}  // namespace tsg
