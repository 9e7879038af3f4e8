#include <catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "corpus.hpp"

using namespace tsg;
using corpus::index_t;

namespace {

std::vector<FiniteSemigroup> small_corpus() {
  std::vector<FiniteSemigroup> out{corpus::flip_flop(), corpus::cyclic(2), corpus::cyclic(3),
                                   corpus::symmetric3(), corpus::full_transformations(2),
                                   corpus::full_transformations(3), corpus::abc()};
  for (auto& S : corpus::random_closures()) out.push_back(std::move(S));
  return out;
}

std::vector<index_t> sorted(std::set<index_t> const& s) { return {s.begin(), s.end()}; }

// All permutations of n points, as a group table.
Group symmetric_group(std::size_t n) {
  std::vector<index_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Transformation> perms;
  do perms.push_back(Transformation(p));
  while (std::next_permutation(p.begin(), p.end()));
  return group_from_permutations(perms);
}

Group cyclic_group(std::size_t n) {
  std::vector<std::vector<index_t>> t(n, std::vector<index_t>(n));
  for (index_t a = 0; a < n; ++a)
    for (index_t b = 0; b < n; ++b) t[a][b] = static_cast<index_t>((a + b) % n);
  return Group(t);
}

Group klein_group() {
  std::vector<std::vector<index_t>> t(4, std::vector<index_t>(4));
  for (index_t a = 0; a < 4; ++a)
    for (index_t b = 0; b < 4; ++b) t[a][b] = a ^ b;
  return Group(t);
}

std::multiset<std::size_t> factor_orders(std::vector<SimpleFactor> const& f) {
  std::multiset<std::size_t> out;
  for (auto const& x : f) out.insert(x.order);
  return out;
}

}  // namespace

TEST_CASE("transformations compose as a right action") {
  Transformation s{1, 2, 0}, t{0, 0, 2};
  auto st = s * t;
  for (index_t x = 0; x < 3; ++x) CHECK(st[x] == t[s[x]]);
  CHECK_THROWS_AS(Transformation(std::vector<index_t>{0, 3}), PreconditionError);
  CHECK_THROWS_AS(s * Transformation(std::vector<index_t>{0, 1}), PreconditionError);
  CHECK(Transformation{2, 0, 2}.image_set() == std::vector<index_t>{0, 2});
  CHECK(Transformation{2, 0, 1}.inverse_permutation() * Transformation{2, 0, 1} == Transformation::identity(3));
}

TEST_CASE("generate_closure small cases") {
  auto C2 = generate_closure(2, {Transformation{1, 0}});
  CHECK(C2.size() == 2);
  CHECK(C2.contains(Transformation::identity(2)));
  auto K = generate_closure(2, {Transformation{0, 0}});
  CHECK(K.size() == 1);
  CHECK_THROWS_AS(generate_closure(0, {}), PreconditionError);
  CHECK_THROWS_AS(generate_closure(2, {}), PreconditionError);
  CHECK_THROWS_AS(generate_closure(2, {Transformation{0, 1, 2}}), PreconditionError);
  CHECK_THROWS_AS(generate_closure(5, {Transformation{1, 2, 3, 4, 0}, Transformation{0, 0, 2, 3, 4},
                                       Transformation{1, 0, 2, 3, 4}},
                                   100),
                  BoundExceeded);
}

TEST_CASE("F_3 closure equals all 27 maps") {
  auto S = corpus::full_transformations(3);
  REQUIRE(S.size() == 27);
  for (index_t a = 0; a < 3; ++a)
    for (index_t b = 0; b < 3; ++b)
      for (index_t c = 0; c < 3; ++c) CHECK(S.contains(Transformation{a, b, c}));
}

TEST_CASE("closure tables and words are consistent") {
  for (auto const& S : small_corpus()) {
    std::set<Transformation> distinct(S.elements().begin(), S.elements().end());
    CHECK(distinct.size() == S.size());
    for (index_t i = 0; i < S.size(); ++i) {
      CHECK(S.evaluate(S.word(i)) == S.at(i));
      for (std::size_t g = 0; g < S.number_of_generators(); ++g) {
        CHECK(S.at(S.right(i, g)) == S.at(i) * S.generator(g));
        CHECK(S.at(S.left(i, g)) == S.generator(g) * S.at(i));
      }
      if (i > 0) {
        auto const &a = S.word(i - 1), &b = S.word(i);
        bool shortlex = a.size() < b.size() || (a.size() == b.size() && a < b);
        CHECK(shortlex);
      }
    }
  }
}

TEST_CASE("semigroup_from_elements recovers the element set") {
  auto F3 = corpus::full_transformations(3);
  auto T = semigroup_from_elements(3, F3.elements());
  CHECK(T.size() == 27);
  CHECK_THROWS_AS(semigroup_from_elements(2, {Transformation{1, 0}}), PreconditionError);
}

TEST_CASE("Green's relations match a principal-ideal oracle") {
  for (auto const& S : small_corpus()) {
    auto G = green_structure(S);
    auto B = corpus::brute_green(S);
    CHECK(G.l == B.l);
    CHECK(G.r == B.r);
    CHECK(G.j == B.j);
    CHECK(G.h == B.h);
    CHECK(G.d == G.j);
    // j_leq against two-sided ideal containment.
    for (index_t s = 0; s < S.size(); ++s)
      for (index_t t = 0; t < S.size(); ++t) {
        auto Is = corpus::two_sided_ideal(S, s), It = corpus::two_sided_ideal(S, t);
        bool sub = std::includes(It.begin(), It.end(), Is.begin(), Is.end());
        CHECK(G.j_leq(s, t) == sub);
      }
  }
}

TEST_CASE("Green's lemma cardinalities and H as L meet R") {
  for (auto const& S : small_corpus()) {
    auto G = green_structure(S);
    for (auto const& jc : G.j.classes) {
      std::set<std::size_t> lsz, rsz, hsz;
      for (auto s : jc) {
        lsz.insert(G.l.class_containing(s).size());
        rsz.insert(G.r.class_containing(s).size());
        hsz.insert(G.h.class_containing(s).size());
      }
      CHECK(lsz.size() == 1);
      CHECK(rsz.size() == 1);
      CHECK(hsz.size() == 1);
    }
    for (index_t s = 0; s < S.size(); ++s)
      for (index_t t = 0; t < S.size(); ++t)
        CHECK(G.h.same(s, t) == (G.l.same(s, t) && G.r.same(s, t)));
  }
}

TEST_CASE("Green structure examples") {
  auto C3 = corpus::cyclic(3);
  auto G3 = green_structure(C3);
  CHECK(G3.j.size() == 1);
  CHECK(G3.h.size() == 1);

  auto F2 = corpus::full_transformations(2);
  auto G = green_structure(F2);
  REQUIRE(G.j.size() == 2);
  auto c0 = F2.index_of(Transformation{0, 0}), c1 = F2.index_of(Transformation{1, 1});
  auto id = F2.index_of(Transformation{0, 1}), sw = F2.index_of(Transformation{1, 0});
  CHECK(G.j.same(id, sw));
  CHECK(G.j.same(c0, c1));
  CHECK(G.r.same(c0, c1));
  CHECK(!G.l.same(c0, c1));

  auto ABC = corpus::abc();
  auto GA = green_structure(ABC);
  CHECK(ABC.size() == 3);
  CHECK(GA.j.size() == 3);
}

TEST_CASE("regularity is decided with inverse witnesses") {
  bool saw_nonregular = false;
  for (auto const& S : small_corpus()) {
    auto G = green_structure(S);
    for (index_t s = 0; s < S.size(); ++s) {
      auto w = is_regular(S, s);
      bool brute = false;
      for (index_t t = 0; t < S.size() && !brute; ++t) brute = S.product(S.product(s, t), s) == s;
      CHECK(w.regular == brute);
      CHECK(w.regular == G.is_regular_element(s));
      if (w.regular) {
        auto t = *w.inverse;
        CHECK(S.product(S.product(s, t), s) == s);
        CHECK(S.product(S.product(t, s), t) == t);
      } else {
        saw_nonregular = true;
      }
      if (S.is_idempotent(s)) CHECK(w.regular);
    }
  }
  CHECK(saw_nonregular);
}

TEST_CASE("idempotent identities Se, eS, eSe against J_e") {
  for (auto const& S : small_corpus()) {
    auto G = green_structure(S);
    for (auto e : G.idempotents) {
      std::set<index_t> se, es, ese;
      for (index_t s = 0; s < S.size(); ++s) {
        index_t a = S.product(s, e), b = S.product(e, s), c = S.product(b, e);
        if (G.j.same(a, e)) se.insert(a);
        if (G.j.same(b, e)) es.insert(b);
        if (G.j.same(c, e)) ese.insert(c);
      }
      CHECK(sorted(se) == G.l.class_containing(e));
      CHECK(sorted(es) == G.r.class_containing(e));
      CHECK(sorted(ese) == G.h.class_containing(e));
    }
  }
}

TEST_CASE("maximal subgroups") {
  auto F3 = corpus::full_transformations(3);
  auto G = green_structure(F3);
  auto id = F3.index_of(Transformation::identity(3));
  CHECK(group_from_elements(F3, maximal_subgroup_elements(F3, G, id)).order() == 6);
  auto k = F3.index_of(Transformation{1, 1, 1});
  CHECK(maximal_subgroup_elements(F3, G, k).size() == 1);
  auto f = F3.index_of(Transformation{0, 1, 1});
  auto H = maximal_subgroup_elements(F3, G, f);
  CHECK(group_from_elements(F3, H).order() == 2);
  auto nonidem = F3.index_of(Transformation{1, 2, 0});
  CHECK_THROWS_AS(maximal_subgroup_elements(F3, G, nonidem), PreconditionError);
}

TEST_CASE("principal factors") {
  auto F2 = corpus::full_transformations(2);
  auto G = green_structure(F2);
  auto c0 = F2.index_of(Transformation{0, 0});
  auto P = principal_factor(F2, G, c0);
  CHECK(P.kind == PrincipalFactorKind::zero_simple);
  for (auto x : P.j_class)
    for (auto y : P.j_class) CHECK(P.product(x, y) == std::optional<index_t>(F2.product(x, y)));

  auto S3 = corpus::symmetric3();
  auto GS = green_structure(S3);
  auto PS = principal_factor(S3, GS, 0);
  CHECK(PS.kind == PrincipalFactorKind::simple_minimal_ideal);
  CHECK(!PS.has_zero);

  bool saw_null = false;
  for (auto const& S : corpus::random_closures()) {
    auto GR = green_structure(S);
    for (index_t jc = 0; jc < GR.j.size(); ++jc) {
      if (GR.regular[jc]) continue;
      auto PN = principal_factor(S, GR, GR.j.classes[jc].front());
      CHECK(PN.kind == PrincipalFactorKind::null);
      for (auto const& row : PN.table)
        for (auto const& v : row) CHECK(!v.has_value());
      saw_null = true;
    }
  }
  CHECK(saw_null);
}

TEST_CASE("Rees coordinatization examples") {
  auto F2 = corpus::full_transformations(2);
  auto G = green_structure(F2);
  auto c0 = F2.index_of(Transformation{0, 0});
  auto M = rees_coordinatize(F2, G, c0);
  CHECK(M.data().group.order() == 1);
  // Λ runs over the H-classes of R_e (the two constants), Γ over those of L_e.
  CHECK(M.data().lambda_size() == 2);
  CHECK(M.data().gamma_size() == 1);

  auto S3 = corpus::symmetric3();
  auto GS = green_structure(S3);
  auto e = *S3.identity();
  auto MS = rees_coordinatize(S3, GS, e);
  CHECK(MS.data().lambda_size() == 1);
  CHECK(MS.data().gamma_size() == 1);
  REQUIRE(MS.data().sandwich[0][0].has_value());
  CHECK(MS.data().group_elements[*MS.data().sandwich[0][0]] == e);

  auto F3 = corpus::full_transformations(3);
  auto GF = green_structure(F3);
  auto f = F3.index_of(Transformation{0, 1, 1});
  auto MF = rees_coordinatize(F3, GF, f);
  CHECK(MF.data().j_class.size() == 18);
  CHECK(MF.data().group.order() == 2);
  CHECK(MF.data().gamma_size() * 2 * MF.data().lambda_size() == 18);
  CHECK(verify_rees_products(F3, GF, MF) == 18 * 18);

  auto nonidem = F3.index_of(Transformation{1, 2, 0});
  CHECK_THROWS_AS(rees_coordinatize(F3, GF, nonidem), PreconditionError);
}

TEST_CASE("Rees round trip on every regular J-class") {
  for (auto const& S : small_corpus()) {
    auto G = green_structure(S);
    for (index_t jc = 0; jc < G.j.size(); ++jc) {
      if (!G.regular[jc]) continue;
      index_t e = *std::find_if(G.idempotents.begin(), G.idempotents.end(),
                                [&](index_t x) { return G.j.class_of[x] == jc; });
      auto M = rees_coordinatize(S, G, e);
      auto n = G.j.classes[jc].size();
      CHECK(verify_rees_products(S, G, M) == n * n);
      std::set<std::tuple<index_t, index_t, index_t>> triples;
      for (auto x : G.j.classes[jc]) {
        auto t = M.encode(x);
        triples.insert({t.gamma, t.group, t.lambda});
      }
      CHECK(triples.size() == n);
    }
  }
}

TEST_CASE("Schützenberger representations") {
  auto F2 = corpus::full_transformations(2);
  auto G = green_structure(F2);
  auto R = schutz_representation(F2, G, F2.index_of(Transformation{0, 0}));
  CHECK(R.group.order() == 1);
  CHECK(R.dimension() == 2);

  auto C3 = corpus::cyclic(3);
  auto GC = green_structure(C3);
  auto RC = schutz_representation(C3, GC, 0);
  CHECK(RC.dimension() == 1);
  CHECK(RC.group.order() == 3);
  // Right regular representation: distinct elements get distinct group entries.
  std::set<index_t> entries;
  for (index_t t = 0; t < C3.size(); ++t) entries.insert(RC.matrices[t][0]->second);
  CHECK(entries.size() == 3);

  auto F3 = corpus::full_transformations(3);
  auto GF = green_structure(F3);
  auto RF = schutz_representation(F3, GF, F3.index_of(Transformation{0, 1, 1}));
  CHECK(RF.dimension() == 3);
  CHECK(RF.group.order() == 2);

  for (auto const& S : small_corpus()) {
    auto GS = green_structure(S);
    for (index_t s = 0; s < S.size(); ++s) {
      auto RS = schutz_representation(S, GS, s);
      CHECK(RS.group.order() == GS.h.class_containing(s).size());
      CHECK(RS.dimension() * RS.group.order() == RS.r_class.size());
    }
  }
}

TEST_CASE("composition series") {
  CHECK(composition_series(Group()).empty());
  auto c4 = composition_series(cyclic_group(4));
  CHECK(factor_orders(c4) == std::multiset<std::size_t>{2, 2});
  auto s3 = composition_series(symmetric_group(3));
  CHECK(factor_orders(s3) == std::multiset<std::size_t>{2, 3});
  auto s4 = composition_series(symmetric_group(4));
  CHECK(factor_orders(s4) == std::multiset<std::size_t>{2, 3, 2, 2});
  auto s5 = composition_series(symmetric_group(5));
  REQUIRE(factor_orders(s5) == std::multiset<std::size_t>{2, 60});
  for (auto const& f : s5) CHECK(f.abelian == (f.order == 2));
  auto c6 = composition_series(cyclic_group(6));
  CHECK(factor_orders(c6) == std::multiset<std::size_t>{2, 3});
  CHECK_THROWS_AS(composition_series(symmetric_group(5), 100), BoundExceeded);
  for (std::size_t n = 1; n <= 12; ++n) {
    auto f = composition_series(cyclic_group(n));
    std::size_t prod = 1;
    for (auto const& x : f) {
      prod *= x.order;
      CHECK(x.cyclic);
    }
    CHECK(prod == n);
  }
}

TEST_CASE("group isomorphism search") {
  CHECK(!groups_isomorphic(cyclic_group(4), klein_group()));
  CHECK(groups_isomorphic(cyclic_group(6), cyclic_group(6)));
  CHECK(!groups_isomorphic(cyclic_group(6), symmetric_group(3)));
  auto S3 = corpus::symmetric3();
  auto S3g = group_from_elements(S3, [&] {
    std::vector<index_t> all(S3.size());
    std::iota(all.begin(), all.end(), 0);
    return all;
  }());
  auto phi = find_isomorphism(S3g, symmetric_group(3));
  REQUIRE(phi);
  for (index_t a = 0; a < 6; ++a)
    for (index_t b = 0; b < 6; ++b)
      CHECK((*phi)[S3g.mul(a, b)] == symmetric_group(3).mul((*phi)[a], (*phi)[b]));
  CHECK_THROWS_AS(Group({{0, 1}, {0, 1}}), PreconditionError);
}
