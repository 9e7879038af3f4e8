#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsg/errors.hpp"
#include "tsg/semigroup.hpp"
#include "tsg/stochastic.hpp"

namespace tsg {

/// States X, alphabet Σ and a total transition table δ: X × Σ → X.
struct DeterministicAutomaton {
  std::vector<std::string> states;
  std::vector<std::string> alphabet;
  std::vector<std::vector<index_t>> delta;  // delta[x][a]

  std::size_t state_count() const noexcept { return states.size(); }
  std::size_t letter_count() const noexcept { return alphabet.size(); }

  void validate() const {
    if (states.empty()) throw PreconditionError("automaton has no states");
    if (delta.size() != states.size()) throw PreconditionError("delta must have one row per state");
    for (std::size_t x = 0; x < delta.size(); ++x) {
      if (delta[x].size() != alphabet.size())
        throw PreconditionError("delta row " + std::to_string(x) + " must have one entry per letter");
      for (auto y : delta[x])
        if (y >= states.size())
          throw PreconditionError("delta row " + std::to_string(x) + " has out-of-range state " + std::to_string(y));
    }
  }

  /// The transformation of letter a.
  Transformation letter(std::size_t a) const {
    std::vector<index_t> im(states.size());
    for (std::size_t x = 0; x < states.size(); ++x) im[x] = delta[x].at(a);
    return Transformation(std::move(im));
  }

  /// Builds an automaton with default names from letter transformations.
  static DeterministicAutomaton from_letters(std::vector<Transformation> const& letters) {
    if (letters.empty()) throw PreconditionError("no letters");
    DeterministicAutomaton A;
    std::size_t n = letters.front().degree();
    for (std::size_t x = 0; x < n; ++x) A.states.push_back(std::to_string(x));
    for (std::size_t a = 0; a < letters.size(); ++a) A.alphabet.push_back("a" + std::to_string(a));
    A.delta.assign(n, std::vector<index_t>(letters.size()));
    for (std::size_t a = 0; a < letters.size(); ++a) {
      if (letters[a].degree() != n) throw PreconditionError("letters have different degrees");
      for (index_t x = 0; x < n; ++x) A.delta[x][a] = letters[a][x];
    }
    return A;
  }
};

/// An automaton with a finite set Ω of distributions over its alphabet.
struct ProbabilisticInstance {
  DeterministicAutomaton automaton;
  std::vector<Distribution> omega;

  void validate() const {
    automaton.validate();
    for (auto const& w : omega)
      if (w.base() != automaton.letter_count()) throw PreconditionError("omega distribution is not over the alphabet");
  }
};

/// S = Σ⁺σ acting on the states, with σ recorded per letter.
struct TransitionSemigroup {
  std::size_t state_count = 0;
  FiniteSemigroup semigroup;
  std::vector<index_t> letter_map;  // letter a ↦ element aσ
};

inline TransitionSemigroup transition_semigroup(DeterministicAutomaton const& aut,
                                                std::size_t bound = default_closure_bound) {
  aut.validate();
  if (aut.alphabet.empty()) throw PreconditionError("transition_semigroup: empty alphabet");
  std::vector<Transformation> gens;
  for (std::size_t a = 0; a < aut.letter_count(); ++a) gens.push_back(aut.letter(a));
  TransitionSemigroup T;
  T.state_count = aut.state_count();
  T.semigroup = generate_closure(aut.state_count(), gens, bound);
  for (std::size_t a = 0; a < gens.size(); ++a) T.letter_map.push_back(T.semigroup.generator_element(a));
  return T;
}

/// ℙδ(π, μ) = Σ_{x,a} π(x) μ(a) δ(x, a).
inline Distribution pdelta(Distribution const& pi, Distribution const& mu, DeterministicAutomaton const& aut) {
  if (pi.base() != aut.state_count() || mu.base() != aut.letter_count())
    throw PreconditionError("pdelta: distribution shapes do not match the automaton");
  std::map<index_t, Rational> w;
  for (auto const& [x, p] : pi.weights())
    for (auto const& [a, m] : mu.weights()) w[aut.delta[x][a]] += p * m;
  return Distribution(aut.state_count(), std::move(w));
}

/// πμ = Σ_{xs=y} π(x) μ(s) y.
inline Distribution act(FiniteSemigroup const& S, Distribution const& pi, Distribution const& mu) {
  if (pi.base() != S.degree() || mu.base() != S.size())
    throw PreconditionError("act: distribution bases do not match the semigroup");
  std::map<index_t, Rational> w;
  for (auto const& [x, p] : pi.weights())
    for (auto const& [s, m] : mu.weights()) w[S.at(s)[x]] += p * m;
  return Distribution(S.degree(), std::move(w));
}

/// μ(s) = Σ_{aσ=s} μ(a).
inline Distribution pushforward(TransitionSemigroup const& T, Distribution const& mu) {
  if (mu.base() != T.letter_map.size()) throw PreconditionError("pushforward: distribution is not over the alphabet");
  std::map<index_t, Rational> w;
  for (auto const& [a, m] : mu.weights()) w[T.letter_map[a]] += m;
  return Distribution(T.semigroup.size(), std::move(w));
}

/// Final distribution of a finite run, plus the first exact repeat among the
/// running convolution products ν_k = σω_{w_1} ∗ ⋯ ∗ σω_{w_k}, if any.
struct RunResult {
  Distribution final;
  std::vector<Distribution> trajectory;  // π_0, π_1, ..., π_len
  std::optional<std::pair<std::size_t, std::size_t>> repeat;  // (j, k) with ν_j = ν_k, j < k
};

inline RunResult run_instance(ProbabilisticInstance const& inst, Distribution const& pi0,
                              std::vector<std::size_t> const& word, bool detect_repeat = false) {
  inst.validate();
  if (pi0.base() != inst.automaton.state_count()) throw PreconditionError("run_instance: initial distribution shape");
  for (auto i : word)
    if (i >= inst.omega.size()) throw PreconditionError("run_instance: omega index " + std::to_string(i) + " out of range");
  RunResult r;
  r.final = pi0;
  r.trajectory.push_back(pi0);
  for (auto i : word) {
    r.final = pdelta(r.final, inst.omega[i], inst.automaton);
    r.trajectory.push_back(r.final);
  }
  if (detect_repeat && !word.empty()) {
    auto T = transition_semigroup(inst.automaton);
    std::vector<Distribution> nu;
    for (std::size_t k = 0; k < word.size() && !r.repeat; ++k) {
      auto step = pushforward(T, inst.omega[word[k]]);
      nu.push_back(k == 0 ? step : convolve(T.semigroup, nu.back(), step));
      for (std::size_t j = 0; j + 1 < nu.size(); ++j)
        if (nu[j] == nu.back()) {
          r.repeat = std::pair{j + 1, k + 1};
          break;
        }
    }
  }
  return r;
}

/// Transformation semigroup of the supports of `mats`, which must all be
/// row-monomial (so each matrix is the 0/1 matrix of a map), together with
/// each input expressed as a point-mass distribution over it.
struct SupportClassification {
  TransitionSemigroup semigroup;
  std::vector<Distribution> expressions;
};

inline SupportClassification support_semigroup(std::vector<StochasticMatrix> const& mats) {
  if (mats.empty()) throw PreconditionError("support_semigroup: no matrices");
  std::size_t n = mats.front().size();
  std::vector<Transformation> gens;
  for (std::size_t m = 0; m < mats.size(); ++m) {
    if (mats[m].size() != n) throw PreconditionError("support_semigroup: matrices of different sizes");
    std::vector<index_t> im(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::size_t> nz;
      for (std::size_t j = 0; j < n; ++j)
        if (mats[m](i, j) != 0) nz.push_back(j);
      if (nz.size() != 1) {
        std::string cols;
        for (auto j : nz) cols += (cols.empty() ? "" : ",") + std::to_string(j);
        throw PreconditionError("matrix " + std::to_string(m) + ": support columns (" + cols + ") in row " +
                                std::to_string(i) + " not monomial");
      }
      im[i] = static_cast<index_t>(nz[0]);
    }
    gens.push_back(Transformation(std::move(im)));
  }
  SupportClassification out;
  out.semigroup = transition_semigroup(DeterministicAutomaton::from_letters(gens));
  for (std::size_t m = 0; m < mats.size(); ++m) {
    auto d = Distribution::point(out.semigroup.semigroup.size(), out.semigroup.letter_map[m]);
    detail::ensure(matrix_of(out.semigroup.semigroup, d) == mats[m], "support expression does not reproduce matrix");
    out.expressions.push_back(std::move(d));
  }
  return out;
}

}  // namespace tsg
