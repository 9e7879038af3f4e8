#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tsg/errors.hpp"
#include "tsg/transformation.hpp"

namespace tsg {

using Word = std::vector<index_t>;

/// A finite semigroup of transformations of {0, ..., degree-1}, closed under
/// composition, together with its generators, right and left Cayley graphs
/// and a shortest (shortlex-least) generator word for every element.
///
/// Elements are stored in shortlex order of those words, which is the order
/// a breadth-first closure produces when generators are tried in order.
/// Values are immutable after construction.
class FiniteSemigroup {
 public:
  FiniteSemigroup() = default;

  std::size_t degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return elements_.size(); }
  std::vector<Transformation> const& elements() const noexcept { return elements_; }
  Transformation const& at(index_t i) const { return elements_.at(i); }

  std::optional<index_t> find(Transformation const& t) const {
    auto it = index_.find(t);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(Transformation const& t) const { return index_.count(t) != 0; }

  index_t index_of(Transformation const& t) const {
    auto i = find(t);
    if (!i) throw PreconditionError("transformation " + t.to_string() + " not in semigroup");
    return *i;
  }

  std::size_t number_of_generators() const noexcept { return generators_.size(); }
  Transformation const& generator(std::size_t g) const { return generators_.at(g); }
  std::vector<Transformation> const& generators() const noexcept { return generators_; }
  /// Element index of generator `g`. Repeated generators share an element.
  index_t generator_element(std::size_t g) const { return generator_element_.at(g); }

  /// Index of `at(i) * generator(g)`.
  index_t right(index_t i, std::size_t g) const { return right_[i * generators_.size() + g]; }
  /// Index of `generator(g) * at(i)`.
  index_t left(index_t i, std::size_t g) const { return left_[i * generators_.size() + g]; }

  Word const& word(index_t i) const { return words_.at(i); }

  index_t product(index_t i, index_t j) const { return index_of(elements_[i] * elements_[j]); }

  Transformation evaluate(Word const& w) const {
    if (w.empty()) return Transformation::identity(degree_);
    Transformation t = generators_.at(w[0]);
    for (std::size_t k = 1; k < w.size(); ++k) t = t * generators_.at(w[k]);
    return t;
  }

  bool is_idempotent(index_t i) const { return product(i, i) == i; }

  std::optional<index_t> identity() const { return identity_; }
  bool is_monoid() const noexcept { return identity_.has_value(); }

  /// Full multiplication table, for small semigroups only.
  std::vector<std::vector<index_t>> multiplication_table(std::size_t bound = 4096) const {
    if (size() > bound) throw BoundExceeded("multiplication table requested for semigroup of size " +
                                            std::to_string(size()));
    std::vector<std::vector<index_t>> tab(size(), std::vector<index_t>(size()));
    for (index_t i = 0; i < size(); ++i)
      for (index_t j = 0; j < size(); ++j) tab[i][j] = product(i, j);
    return tab;
  }

  friend FiniteSemigroup generate_closure(std::size_t degree,
                                          std::vector<Transformation> const& generators,
                                          std::size_t bound);

 private:
  std::size_t degree_ = 0;
  std::vector<Transformation> elements_;
  std::unordered_map<Transformation, index_t, TransformationHash> index_;
  std::vector<Transformation> generators_;
  std::vector<index_t> generator_element_;
  std::vector<index_t> right_;
  std::vector<index_t> left_;
  std::vector<Word> words_;
  std::optional<index_t> identity_;
};

inline constexpr std::size_t default_closure_bound = 1'000'000;

/// Smallest composition-closed set containing `generators`.
inline FiniteSemigroup generate_closure(std::size_t degree,
                                        std::vector<Transformation> const& generators,
                                        std::size_t bound = default_closure_bound) {
  if (degree == 0) throw PreconditionError("degree must be positive");
  if (generators.empty()) throw PreconditionError("at least one generator is required");
  for (auto const& g : generators)
    if (g.degree() != degree) throw PreconditionError("generator " + g.to_string() + " has wrong degree");

  FiniteSemigroup S;
  S.degree_ = degree;
  S.generators_ = generators;
  std::size_t const ngens = generators.size();

  auto add = [&](Transformation t, Word w) -> index_t {
    auto [it, inserted] = S.index_.emplace(t, static_cast<index_t>(S.elements_.size()));
    if (inserted) {
      if (S.elements_.size() >= bound)
        throw BoundExceeded("closure exceeds bound of " + std::to_string(bound) + " elements");
      S.elements_.push_back(std::move(t));
      S.words_.push_back(std::move(w));
    }
    return it->second;
  };

  for (std::size_t g = 0; g < ngens; ++g)
    S.generator_element_.push_back(add(generators[g], Word{static_cast<index_t>(g)}));

  for (std::size_t i = 0; i < S.elements_.size(); ++i) {
    for (std::size_t g = 0; g < ngens; ++g) {
      Transformation t = S.elements_[i] * generators[g];
      Word w = S.words_[i];
      w.push_back(static_cast<index_t>(g));
      index_t j = add(std::move(t), std::move(w));
      S.right_.push_back(j);
    }
  }

  S.left_.resize(S.elements_.size() * ngens);
  for (std::size_t i = 0; i < S.elements_.size(); ++i)
    for (std::size_t g = 0; g < ngens; ++g)
      S.left_[i * ngens + g] = S.index_.at(generators[g] * S.elements_[i]);

  S.identity_ = S.find(Transformation::identity(degree));
  if (!S.identity_) {
    // A monoid identity need not be the identity map.
    for (index_t e = 0; e < S.size() && !S.identity_; ++e) {
      bool ok = true;
      for (std::size_t g = 0; g < ngens && ok; ++g)
        ok = S.right(e, g) == S.generator_element(g) && S.left(e, g) == S.generator_element(g);
      if (ok) S.identity_ = e;
    }
  }
  return S;
}

/// Greedy generating set: scan `elements` in order and keep each one not
/// already generated by the earlier choices. The result generates exactly
/// the semigroup spanned by `elements`.
inline std::vector<Transformation> greedy_generators(std::vector<Transformation> const& elements) {
  std::vector<Transformation> gens;
  std::vector<Transformation> closed;
  std::unordered_set<Transformation, TransformationHash> seen;
  for (auto const& x : elements) {
    if (seen.count(x)) continue;
    gens.push_back(x);
    std::vector<Transformation> queue;
    auto push = [&](Transformation t) {
      if (seen.insert(t).second) queue.push_back(std::move(t));
    };
    push(x);
    for (auto const& c : closed) push(c * x);
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (auto const& g : gens) push(queue[q] * g);
    closed.insert(closed.end(), queue.begin(), queue.end());
  }
  return gens;
}

/// Semigroup whose element set is `elements`, which must be closed.
inline FiniteSemigroup semigroup_from_elements(std::size_t degree,
                                               std::vector<Transformation> const& elements,
                                               std::size_t bound = default_closure_bound) {
  if (elements.empty()) throw PreconditionError("empty element set");
  auto S = generate_closure(degree, greedy_generators(elements), bound);
  std::unordered_set<Transformation, TransformationHash> given(elements.begin(), elements.end());
  if (given.size() != S.size()) throw PreconditionError("element set is not closed under composition");
  return S;
}

/// The elements of S¹ in order: an explicit identity first when S lacks one.
inline std::vector<Transformation> monoid_elements(FiniteSemigroup const& S) {
  std::vector<Transformation> out;
  if (!S.is_monoid() || !S.at(*S.identity()).is_identity())
    out.push_back(Transformation::identity(S.degree()));
  out.insert(out.end(), S.elements().begin(), S.elements().end());
  return out;
}

}  // namespace tsg
