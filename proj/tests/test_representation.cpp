#include <catch_amalgamated.hpp>

#include <random>

#include "corpus.hpp"

using namespace tsg;

namespace {

std::vector<std::size_t> dims(std::vector<MatrixRepresentation> const& reps) {
  std::vector<std::size_t> out;
  for (auto const& r : reps) out.push_back(r.dim);
  return out;
}

std::vector<std::size_t> dims(Irreducibles const& irr) {
  std::vector<std::size_t> out;
  for (auto const& fam : irr.families)
    for (auto const& M : fam.simples) out.push_back(M.dim);
  std::sort(out.begin(), out.end());
  return out;
}

Group group_of(FiniteSemigroup const& S) {
  std::vector<index_t> all(S.size());
  for (index_t i = 0; i < S.size(); ++i) all[i] = i;
  return group_from_elements(S, all);
}

index_t find_element(FiniteSemigroup const& S, std::vector<index_t> im) { return S.index_of(Transformation(im)); }

}  // namespace

TEST_CASE("polynomial factors over GF(p)") {
  std::mt19937_64 rng(1);
  PrimeField f5(5), f2(2);
  using detail::poly::Poly;
  // (x² + 2)(x + 1)²(x + 3) over GF(5); x² + 2 has no root mod 5.
  Poly a = detail::poly::mul(f5, detail::poly::mul(f5, Poly{2, 0, 1}, Poly{1, 1}),
                             detail::poly::mul(f5, Poly{1, 1}, Poly{3, 1}));
  auto fs = detail::poly::distinct_irreducible_factors(f5, a, rng);
  CHECK(fs == std::vector<Poly>{{1, 1}, {3, 1}, {2, 0, 1}});
  // x⁴ + x + 1 is irreducible over GF(2); times (x² + x + 1).
  auto b = detail::poly::mul(f2, Poly{1, 1, 0, 0, 1}, Poly{1, 1, 1});
  CHECK(detail::poly::distinct_irreducible_factors(f2, b, rng) == std::vector<Poly>{{1, 1, 1}, {1, 1, 0, 0, 1}});
  // Two quadratics over GF(3) found together by distinct-degree splitting.
  PrimeField f3(3);
  auto c = detail::poly::mul(f3, Poly{1, 0, 1}, Poly{2, 1, 1});
  CHECK(detail::poly::distinct_irreducible_factors(f3, c, rng).size() == 2);
}

TEST_CASE("group irreducibles") {
  std::mt19937_64 rng(7);
  Group trivial;
  CHECK(dims(group_irreducibles(trivial, PrimeField(3), rng)) == std::vector<std::size_t>{1});

  auto c2 = group_of(corpus::cyclic(2));
  auto reps = group_irreducibles(c2, PrimeField(3), rng);
  REQUIRE(dims(reps) == std::vector<std::size_t>{1, 1});
  index_t swap = 1 - c2.identity();
  CHECK(reps[0].action[swap] == FpMat{{1}});
  CHECK(reps[1].action[swap] == FpMat{{2}});

  CHECK(dims(group_irreducibles(group_of(corpus::symmetric3()), PrimeField(7), rng)) ==
        std::vector<std::size_t>{1, 1, 2});
  auto c3 = group_of(corpus::cyclic(3));
  CHECK(dims(group_irreducibles(c3, PrimeField(7), rng)) == std::vector<std::size_t>{1, 1, 1});
  // x² + x + 1 stays irreducible over GF(2) and GF(5).
  CHECK(dims(group_irreducibles(c3, PrimeField(2), rng)) == std::vector<std::size_t>{1, 2});
  CHECK(dims(group_irreducibles(c3, PrimeField(5), rng)) == std::vector<std::size_t>{1, 2});
  // x⁷ − 1 = (x + 1)(x³ + x + 1)(x³ + x² + 1) over GF(2).
  CHECK(dims(group_irreducibles(group_of(corpus::cyclic(7)), PrimeField(2), rng)) == std::vector<std::size_t>{1, 3, 3});
  CHECK(dims(group_irreducibles(group_of(corpus::cyclic(6)), PrimeField(5), rng)) ==
        std::vector<std::size_t>{1, 1, 2, 2});

  CHECK_THROWS_AS(group_irreducibles(c2, PrimeField(2), rng), CharacteristicError);
  CHECK_THROWS_AS(PrimeField(4), PreconditionError);
}

TEST_CASE("chopping detects irreducibility exactly") {
  std::mt19937_64 rng(11);
  PrimeField f(5);
  auto s3 = group_of(corpus::symmetric3());
  auto reps = group_irreducibles(s3, f, rng);
  for (auto const& r : reps) CHECK(is_irreducible(as_module(s3, r), rng));
  auto reg = regular_module(s3, f);
  CHECK_FALSE(is_irreducible(reg, rng));
  auto factors = composition_factors(reg, rng);
  std::size_t total = 0;
  for (auto const& m : factors) total += m.dim;
  CHECK(total == 6);
  CHECK(classify_simple(factors).size() == 3);
}

TEST_CASE("chop determinism across seeds") {
  auto s3 = group_of(corpus::symmetric3());
  PrimeField f(7);
  auto base = group_irreducibles(s3, f, std::uint64_t{1});
  for (std::uint64_t seed = 2; seed <= 5; ++seed) {
    auto other = group_irreducibles(s3, f, seed);
    REQUIRE(other.size() == base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
      CHECK(character(other[i]) == character(base[i]));
      CHECK(isomorphic(as_module(s3, other[i]), as_module(s3, base[i])));
    }
  }
}

TEST_CASE("induction") {
  PrimeField f(5);
  std::mt19937_64 rng(3);

  // Group case: one H-class, so Ind(N) ≅ N.
  auto c3 = corpus::cyclic(3);
  auto G3 = green_structure(c3);
  auto R3 = schutz_representation(c3, G3, *c3.identity());
  for (auto const& N : group_irreducibles(R3.group, f, rng)) {
    auto ind = induce(N, c3, R3);
    CHECK(ind.dim == N.dim);
    CHECK(is_multiplicative(c3, ind));
    CHECK(maximal_submodule(ind, c3, R3.base).dim() == 0);
  }

  // Constants of F2: trivial H, two H-classes.
  auto F2 = corpus::full_transformations(2);
  auto G2 = green_structure(F2);
  auto c0 = find_element(F2, {0, 0});
  auto R = schutz_representation(F2, G2, c0);
  auto triv = group_irreducibles(R.group, f, rng);
  REQUIRE(triv.size() == 1);
  auto ind = induce(triv[0], F2, R);
  CHECK(ind.dim == 2);
  CHECK(is_multiplicative(F2, ind));
  auto rad = maximal_submodule(ind, F2, c0);
  CHECK(rad.dim() == 1);
  CHECK(quotient_representation(ind, rad).dim == 1);

  // Rank-2 R-class of F3: H ≅ C2 with three H-classes.
  auto F3 = corpus::full_transformations(3);
  auto G = green_structure(F3);
  auto e = find_element(F3, {0, 1, 1});
  REQUIRE(F3.is_idempotent(e));
  auto R2 = schutz_representation(F3, G, e);
  CHECK(R2.group.order() == 2);
  auto reps = group_irreducibles(R2.group, f, rng);
  REQUIRE(reps.size() == 2);
  for (auto const& N : reps) {
    auto M = induce(N, F3, R2);
    CHECK(M.dim == 3);
    CHECK(is_multiplicative(F3, M));
  }

  auto not_idem = find_element(F3, {1, 2, 0});
  CHECK_THROWS_AS(induce(triv[0], F3, G, not_idem), PreconditionError);
}

TEST_CASE("apex") {
  PrimeField f(5);
  auto F2 = corpus::full_transformations(2);
  auto G = green_structure(F2);

  MatrixRepresentation trivial{f, 1, std::vector<FpMat>(F2.size(), FpMat{{1}})};
  auto a = apex_of(trivial, F2, G);
  CHECK(a.annihilator.empty());
  REQUIRE(a.valid);
  CHECK(*a.j_class == G.minimal_j_class());

  // The sign of the swap, killing the constants.
  MatrixRepresentation sign{f, 1, {}};
  for (index_t s = 0; s < F2.size(); ++s) {
    auto const& t = F2.at(s);
    std::uint32_t v = t[0] == t[1] ? 0 : (t[0] == 0 ? 1 : 4);
    sign.action.push_back(FpMat{{v}});
  }
  REQUIRE(is_multiplicative(F2, sign));
  auto b = apex_of(sign, F2, G);
  REQUIRE(b.valid);
  CHECK(*b.apex_idempotent == *F2.identity());
  CHECK(b.annihilator.size() == 2);

  MatrixRepresentation zero{f, 1, std::vector<FpMat>(F2.size(), FpMat{{0}})};
  CHECK_FALSE(apex_of(zero, F2, G).valid);
}

TEST_CASE("enumerated irreducibles") {
  auto ff = enumerate_irreducibles(corpus::flip_flop(), PrimeField(3), 1);
  CHECK(ff.families.size() == 2);
  CHECK(dims(ff) == std::vector<std::size_t>{1, 1});

  auto F2 = corpus::full_transformations(2);
  auto f2 = enumerate_irreducibles(F2, PrimeField(5), 1);
  CHECK(f2.count() == 3);
  for (auto const& fam : f2.families)
    CHECK(fam.simples.size() == (fam.idempotent == *F2.identity() ? 2u : 1u));

  // A group has a single J-class.
  auto s3 = corpus::symmetric3();
  auto irr = enumerate_irreducibles(s3, PrimeField(7), 1);
  REQUIRE(irr.families.size() == 1);
  CHECK(dims(irr) == std::vector<std::size_t>{1, 1, 2});

  CHECK_THROWS_AS(enumerate_irreducibles(F2, PrimeField(2), 1), CharacteristicError);
}

TEST_CASE("regular module factors") {
  std::mt19937_64 rng(2);
  auto c2 = regular_module_factors(corpus::cyclic(2), PrimeField(3), rng);
  REQUIRE(c2.size() == 2);
  CHECK(c2[0].multiplicity == 1);
  CHECK(c2[1].multiplicity == 1);

  auto one = generate_closure(1, {Transformation{0}});
  auto t = regular_module_factors(one, PrimeField(3), rng);
  REQUIRE(t.size() == 1);
  CHECK(t[0].module.dim == 1);

  auto ff = corpus::flip_flop();
  auto factors = regular_module_factors(ff, PrimeField(3), rng);
  CHECK(same_simple_classes(ff, enumerate_irreducibles(ff, PrimeField(3), 5), factors));

  // {a, a²} with a² a zero: the nonregular a leaves the zero module as a factor.
  auto nil = generate_closure(3, {Transformation{1, 2, 2}});
  REQUIRE(nil.size() == 2);
  auto nf = regular_module_factors(nil, PrimeField(3), rng);
  REQUIRE(nf.size() == 2);
  CHECK(std::count_if(nf.begin(), nf.end(), [](ModuleClass const& c) { return is_zero_module(c.module); }) == 1);
  CHECK(same_simple_classes(nil, enumerate_irreducibles(nil, PrimeField(3), 1), nf));
}

TEST_CASE("Munn-Ponizovskii correspondence on the corpus") {
  std::vector<corpus::Named> all = corpus::representation_corpus();
  all.push_back({"C3", corpus::cyclic(3)});
  all.push_back({"abc", corpus::abc()});
  all.push_back({"F3", corpus::full_transformations(3)});
  auto randoms = corpus::random_closures(6);
  for (std::size_t i = 0; i < randoms.size(); ++i) all.push_back({"random " + std::to_string(i), randoms[i]});
  for (auto const& [name, S] : all) {
    INFO(name);
    auto G = green_structure(S);
    PrimeField f(coprime_characteristic(G));
    std::mt19937_64 rng(17);
    auto irr = enumerate_irreducibles(S, G, f, rng);
    std::size_t expected = 0;
    for (auto e : idempotent_representatives(G)) {
      auto R = schutz_representation(S, G, e);
      expected += group_irreducibles(R.group, f, rng).size();
    }
    CHECK(irr.count() == expected);
    CHECK(same_simple_classes(S, irr, regular_module_factors(S, f, rng)));
    for (auto const& fam : irr.families)
      for (auto const& M : fam.simples) {
        CHECK(is_multiplicative(S, M));
        auto apex = apex_of(M, S, G);
        CHECK(apex.matches == 1);
        CHECK(apex.apex_idempotent == fam.idempotent);
      }
  }
}

TEST_CASE("enumeration is seed independent") {
  auto S = corpus::full_transformations(3);
  auto base = enumerate_irreducibles(S, PrimeField(5), 1);
  for (std::uint64_t seed = 2; seed <= 5; ++seed) {
    auto other = enumerate_irreducibles(S, PrimeField(5), seed);
    CHECK(dims(other) == dims(base));
    std::vector<ModuleClass> classes;
    for (auto const& fam : other.families)
      for (auto const& M : fam.simples) classes.push_back({as_module(S, M), 1});
    CHECK(same_simple_classes(S, base, classes));
  }
}

TEST_CASE("principal indecomposables of the reduced holonomy monoid") {
  struct Case {
    FiniteSemigroup S;
    std::uint32_t p;
    std::vector<std::size_t> module_dims, simple_dims;
  };
  std::vector<Case> cases{{corpus::flip_flop(), 3, {2, 1}, {1, 1}},
                          {corpus::cyclic(2), 3, {2, 1, 1}, {1, 1, 1}},
                          {corpus::full_transformations(3), 5, {}, {}}};
  for (auto const& c : cases) {
    auto hd = holonomy_decompose(c.S);
    auto rh = zeiger_reduce(hd, c.S);
    PrimeField f(c.p);
    auto pis = holonomy_principal_indecomposables(hd, rh, f, std::uint64_t{9});
    std::vector<std::size_t> md, sd;
    for (auto const& pi : pis) {
      md.push_back(pi.module.dim);
      sd.push_back(pi.simple.dim);
      CHECK(pi.module.dim == pi.group_module.dim * pi.tail_points);
      CHECK(pi.unique_maximal);
      CHECK(pi.module.dim - pi.radical.size() == pi.simple.dim);
    }
    if (!c.module_dims.empty()) {
      CHECK(md == c.module_dims);
      CHECK(sd == c.simple_dims);
    }
    CHECK(quotients_match(rh.monoid, pis, enumerate_irreducibles(rh.monoid, f, 4)));
  }
}
