// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sys/wait.h>

#include "corpus.hpp"
#include "random_stochastic.hpp"
#include "tsg/tsg.hpp"

using namespace tsg;

namespace {

// Pinned limits.
constexpr double green_seconds = 10.0;
constexpr double holonomy_seconds = 60.0;
constexpr std::size_t zeiger_bound = 5000;
constexpr int stochastic_cases = 500;
constexpr std::size_t stochastic_max_n = 5;
constexpr unsigned stochastic_den = 16;
constexpr int doob_cases = 100;
constexpr int lift_trials = 50;
constexpr int mp_seeds = 5;
constexpr std::uint32_t final_field = 3;

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(std::string const& why) {
    if (pass) detail = why;
    pass = false;
  }
  void require(bool cond, std::string const& why) {
    if (!cond) fail(why);
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<corpus::Named> full_corpus() {
  auto out = corpus::holonomy_corpus();
  for (auto& n : corpus::representation_corpus()) out.push_back(n);
  out.push_back({"abc", corpus::abc()});
  auto rnd = corpus::random_closures();
  for (std::size_t i = 0; i < rnd.size(); ++i) out.push_back({"random-closure-" + std::to_string(i), rnd[i]});
  return out;
}

Outcome green_oracle() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::vector<corpus::Named> sets{{"F2", corpus::full_transformations(2)}, {"F3", corpus::full_transformations(3)}};
  auto rnd = corpus::random_closures(25);
  for (std::size_t i = 0; i < rnd.size(); ++i) {
    o.require(rnd[i].size() <= 200, "random closure larger than 200");
    sets.push_back({"random-" + std::to_string(i), rnd[i]});
  }
  for (auto const& [name, S] : sets) {
    auto G = green_structure(S);
    auto B = corpus::brute_green(S);
    o.require(G.l == B.l && G.r == B.r && G.j == B.j && G.h == B.h, name + ": partitions differ from oracle");
    o.require(G.d == G.j, name + ": D != J");
  }
  double s = seconds_since(t0);
  o.require(s < green_seconds, "runtime " + std::to_string(s) + " s");
  if (o.pass) o.detail = std::to_string(sets.size()) + " semigroups, " + std::to_string(s).substr(0, 5) + " s";
  return o;
}

Outcome idempotent_identities() {
  Outcome o;
  std::size_t checked = 0;
  for (auto const& [name, S] : full_corpus()) {
    auto G = green_structure(S);
    for (auto e : G.idempotents) {
      std::set<index_t> se, es, ese;
      for (index_t s = 0; s < S.size(); ++s) {
        index_t a = S.product(s, e), b = S.product(e, s), c = S.product(b, e);
        if (G.j.same(a, e)) se.insert(a);
        if (G.j.same(b, e)) es.insert(b);
        if (G.j.same(c, e)) ese.insert(c);
      }
      auto eq = [](std::set<index_t> const& x, std::vector<index_t> const& y) {
        return std::vector<index_t>(x.begin(), x.end()) == y;
      };
      o.require(eq(se, G.l.class_containing(e)), name + ": Se ∩ J_e != L_e");
      o.require(eq(es, G.r.class_containing(e)), name + ": eS ∩ J_e != R_e");
      o.require(eq(ese, G.h.class_containing(e)), name + ": eSe ∩ J_e != H_e");
      ++checked;
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " idempotents, 0 violations";
  return o;
}

Outcome rees_round_trip() {
  Outcome o;
  std::size_t classes = 0;
  for (auto const& [name, S] : full_corpus()) {
    auto G = green_structure(S);
    for (index_t jc = 0; jc < G.j.size(); ++jc) {
      if (!G.regular[jc]) continue;
      index_t e = *std::find_if(G.idempotents.begin(), G.idempotents.end(),
                                [&](index_t x) { return G.j.class_of[x] == jc; });
      try {
        auto M = rees_coordinatize(S, G, e);
        auto n = G.j.classes[jc].size();
        o.require(verify_rees_products(S, G, M) == n * n, name + ": product count");
        for (auto x : G.j.classes[jc]) o.require(M.decode(M.encode(x)) == x, name + ": encode/decode");
        auto const& P = M.data().sandwich;
        for (std::size_t l = 0; l < M.data().lambda_size(); ++l)
          o.require(std::any_of(P[l].begin(), P[l].end(), [](auto const& v) { return v.has_value(); }),
                    name + ": sandwich row of zeros");
        for (std::size_t g = 0; g < M.data().gamma_size(); ++g)
          o.require(std::any_of(P.begin(), P.end(), [&](auto const& row) { return row[g].has_value(); }),
                    name + ": sandwich column of zeros");
      } catch (InvariantViolation const& err) {
        o.fail(name + ": " + err.what());
      }
      ++classes;
    }
  }
  if (o.pass) o.detail = std::to_string(classes) + " regular J-classes";
  return o;
}

StochasticMatrix permute_columns(std::mt19937& rng, StochasticMatrix const& M) {
  auto p = rs::random_permutation(rng, M.size());
  return M * rs::permutation_matrix(p);
}

Outcome stochastic_green() {
  Outcome o;
  std::mt19937 rng(4242);
  std::uniform_int_distribution<std::size_t> size(2, stochastic_max_n);
  std::array<GreenRelation, 4> rels{GreenRelation::L, GreenRelation::R, GreenRelation::J, GreenRelation::H};
  std::size_t witnesses = 0;
  for (int trial = 0; trial < stochastic_cases; ++trial) {
    auto n = size(rng);
    auto M = rs::random_matrix(rng, n, stochastic_den);
    auto L1 = rs::row_shuffle_and_mix(rng, M);
    auto R1 = permute_columns(rng, M);
    auto J1 = permute_columns(rng, L1);
    auto X = rs::random_matrix(rng, n, stochastic_den);
    std::vector<StochasticMatrix> ms{M, L1, R1, J1, X};
    o.require(green_test(M, L1, GreenRelation::L).related, "constructed L pair not related");
    o.require(green_test(M, R1, GreenRelation::R).related, "constructed R pair not related");
    o.require(green_test(M, J1, GreenRelation::J).related, "constructed J pair not related");
    for (auto rel : rels) {
      std::size_t k = ms.size();
      std::vector<std::vector<bool>> rel_m(k, std::vector<bool>(k));
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
          auto v = green_test(ms[a], ms[b], rel);
          rel_m[a][b] = v.related;
          if (v.left_q) {
            o.require(*v.left_q * ms[a] == ms[b] && *v.left_p * ms[b] == ms[a], "L witness does not reproduce");
            ++witnesses;
          }
          if (v.right_q) {
            o.require(ms[a] * *v.right_q == ms[b] && ms[b] * *v.right_p == ms[a], "R witness does not reproduce");
            ++witnesses;
          }
        }
      for (std::size_t a = 0; a < k; ++a) {
        o.require(rel_m[a][a], std::string("not reflexive for ") + to_char(rel));
        for (std::size_t b = 0; b < k; ++b) {
          o.require(rel_m[a][b] == rel_m[b][a], std::string("not symmetric for ") + to_char(rel));
          for (std::size_t c = 0; c < k; ++c)
            if (rel_m[a][b] && rel_m[b][c]) o.require(rel_m[a][c], std::string("not transitive for ") + to_char(rel));
        }
      }
    }
  }
  for (std::size_t n = 1; n <= stochastic_max_n; ++n) {
    std::vector<StochasticMatrix> es;
    std::vector<std::size_t> ranks;
    for (std::size_t k = 1; k <= n; ++k)
      for (int rep = 0; rep < 3; ++rep) {
        es.push_back(rs::block_idempotent(rng, n, k, stochastic_den));
        ranks.push_back(k);
      }
    std::set<RationalMatrix> classes;
    for (std::size_t i = 0; i < es.size(); ++i) {
      o.require(es[i].is_idempotent() && rank(es[i]) == ranks[i], "constructed idempotent has wrong rank");
      classes.insert(reduced_echelon_form(es[i]));
      for (std::size_t j = 0; j < es.size(); ++j)
        o.require(green_test(es[i], es[j], GreenRelation::J).related == (ranks[i] == ranks[j]),
                  "J-equivalence of idempotents differs from equal rank");
    }
    o.require(classes.size() == n, "idempotent rank classes != n for n = " + std::to_string(n));
  }
  if (o.pass)
    o.detail = std::to_string(stochastic_cases) + " cases, " + std::to_string(witnesses) + " witnesses reproduced";
  return o;
}

StochasticMatrix mat(std::vector<std::vector<int>> const& rows) {
  RationalMatrix m;
  for (auto const& r : rows) {
    RationalVector v;
    for (auto x : r) v.push_back(Rational(x));
    m.push_back(v);
  }
  return StochasticMatrix(m);
}

Outcome support_counterexample() {
  Outcome o;
  auto A = mat({{1, 0, 0}, {0, 0, 1}, {0, 0, 1}});
  auto B = mat({{0, 0, 1}, {0, 1, 0}, {0, 0, 1}});
  auto C = mat({{0, 0, 1}, {0, 0, 1}, {0, 0, 1}});
  o.require(canonical_form(A).combined == canonical_form(B).combined, "canonical forms of A and B differ");
  o.require(green_test(A, B, GreenRelation::J).related, "A, B not J-related in S(3,Q)");
  auto sc = support_semigroup({A, B, C});
  auto const& S = sc.semigroup.semigroup;
  o.require(S.size() == 3, "support semigroup has " + std::to_string(S.size()) + " elements");
  auto G = green_structure(S);
  o.require(G.j.size() == 3, "support semigroup has " + std::to_string(G.j.size()) + " J-classes");
  for (auto const& c : G.j.classes) o.require(c.size() == 1, "J-class is not a singleton");
  o.require(!G.j.same(sc.semigroup.letter_map[0], sc.semigroup.letter_map[1]), "J(A) = J(B) in support semigroup");
  for (std::size_t m = 0; m < 3; ++m)
    o.require(matrix_of(S, sc.expressions[m]) == std::vector<StochasticMatrix>{A, B, C}[m], "expression mismatch");
  if (o.pass) o.detail = "A ~J B over Q; three singleton J-classes in {A,B,C}";
  return o;
}

Outcome doob_suite() {
  Outcome o;
  std::mt19937 rng(606);
  std::uniform_int_distribution<std::size_t> size(1, stochastic_max_n);
  for (int trial = 0; trial < doob_cases; ++trial) {
    auto n = size(rng);
    std::uniform_int_distribution<std::size_t> rk(1, n);
    auto k = rk(rng);
    auto E = rs::block_idempotent(rng, n, k);
    auto d = doob_analyze(E);
    o.require(d.is_idempotent && d.rank == k && d.blocks.size() == k, "block idempotent misanalysed");
    if (!d.is_idempotent) continue;
    // P E Pᵀ = [[e, 0], [s e, 0]] with s stochastic.
    std::size_t r = n - d.transient.size();
    bool exact = true;
    for (auto const& row : d.s) {
      Rational sum = 0;
      for (auto const& x : row) sum += x;
      exact = exact && sum == 1;
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational want = 0;
        if (j < r && i < r) want = d.e[i][j];
        if (j < r && i >= r)
          for (std::size_t l = 0; l < r; ++l) want += d.s[i - r][l] * d.e[l][j];
        exact = exact && E(d.perm[i], d.perm[j]) == want;
      }
    o.require(exact, "Doob blocks do not reconstruct the matrix");
  }
  int flagged = 0;
  for (int trial = 0; trial < doob_cases;) {
    auto M = rs::random_matrix(rng, size(rng) + 1, stochastic_den);
    if (M * M == M) continue;
    ++trial;
    if (!doob_analyze(M).is_idempotent) ++flagged;
  }
  o.require(flagged == doob_cases, std::to_string(doob_cases - flagged) + " non-idempotents not flagged");
  if (o.pass) o.detail = std::to_string(doob_cases) + " reconstructions, " + std::to_string(flagged) + " flagged";
  return o;
}

Outcome holonomy_soundness() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::size_t stages = 0;
  for (auto const& [name, S] : corpus::holonomy_corpus()) {
    auto hd = holonomy_decompose(S);
    o.require(hd.stages.size() == hd.n(), name + ": stage count");
    int prev = hd.xs.n();
    for (auto const& st : hd.stages) {
      o.require(st.rank == prev - 1, name + ": rank does not descend by 1 at k = " + std::to_string(st.k));
      prev = st.rank;
      if (auto bad = verify_stage(st, hd.xs, S))
        o.fail(name + ": stage " + std::to_string(st.k) + " fails at point " + std::to_string(bad->first));
      ++stages;
    }
    auto c = verify_covering(hd.covering, S, [&](Transformation const& t) { return hd.in_holonomy_monoid(t); });
    o.require(c.ok, name + ": final covering: " + c.reason);
  }
  double s = seconds_since(t0);
  o.require(s < holonomy_seconds, "runtime " + std::to_string(s) + " s");
  if (o.pass) o.detail = std::to_string(stages) + " stages, " + std::to_string(s).substr(0, 5) + " s";
  return o;
}

Outcome zeiger_suite() {
  Outcome o;
  std::size_t checked = 0;
  std::vector<std::string> skipped;
  auto sets = corpus::holonomy_corpus();
  for (auto& n : corpus::representation_corpus()) sets.push_back(n);
  for (auto const& [name, S] : sets) {
    auto hd = holonomy_decompose(S);
    std::optional<ReducedHolonomy> rh;
    try {
      rh = zeiger_reduce(hd, S, zeiger_bound);
    } catch (BoundExceeded const&) {
      skipped.push_back(name);
      continue;
    }
    auto const& U = rh->monoid;
    o.require(U.contains(Transformation::identity(hd.shape.points())), name + ": U lacks 1");
    for (index_t a = 0; a < U.size(); ++a)
      for (index_t b = 0; b < U.size(); ++b)
        if (!U.contains(U.at(a) * U.at(b))) {
          o.fail(name + ": U not closed");
          a = static_cast<index_t>(U.size());
          break;
        }
    auto c = verify_covering(rh->covering, S, [&](Transformation const& t) { return U.contains(t); });
    o.require(c.ok, name + ": (Y,U) does not cover: " + c.reason);
    auto rep = depth_and_classes(hd, *rh);
    o.require(rep.regularity_matches, name + ": regularity criterion disagrees with uvu = u");
    o.require(rep.ok(rh->m), name + ": class counts");
    ++checked;
  }
  if (o.pass)
    o.detail = std::to_string(checked) + " monoids U; above the size limit: " +
               (skipped.empty() ? std::string("none") : skipped.front() + (skipped.size() > 1 ? " and others" : ""));
  return o;
}

Outcome duality_lift() {
  Outcome o;
  std::mt19937 rng(909);
  std::size_t coverings = 0;
  for (auto const& [name, S] : corpus::holonomy_corpus()) {
    auto hd = holonomy_decompose(S);
    std::vector<Covering> covs{hd.covering};
    try {
      covs.push_back(zeiger_reduce(hd, S, zeiger_bound).covering);
    } catch (BoundExceeded const&) {
    }
    for (auto const& cov : covs) {
      std::vector<index_t> dom;
      for (index_t y = 0; y < cov.domain(); ++y)
        if (cov.phi[y]) dom.push_back(y);
      for (int trial = 0; trial < lift_trials; ++trial) {
        auto mu = Distribution::from_vector(rs::random_distribution(rng, S.size()));
        auto nu = lift_covering(cov, S, mu);
        Rational total = 0;
        for (auto const& w : nu.weights) total += w;
        o.require(total == 1, name + ": lifted mass != 1");
        auto w = rs::random_distribution(rng, dom.size());
        std::map<index_t, Rational> pw;
        for (std::size_t i = 0; i < dom.size(); ++i)
          if (w[i] != 0) pw[dom[i]] = w[i];
        Distribution pi(cov.domain(), pw);
        o.require(verify_lift(cov, S, mu, nu, {pi}), name + ": distribution square does not commute");
      }
      ++coverings;
    }
  }
  if (o.pass) o.detail = std::to_string(coverings) + " coverings x " + std::to_string(lift_trials) + " distributions";
  return o;
}

bool same_classes(FiniteSemigroup const& S, Irreducibles const& a, Irreducibles const& b) {
  if (a.count() != b.count()) return false;
  for (auto const& fa : a.families)
    for (auto const& M : fa.simples) {
      std::size_t hits = 0;
      for (auto const& fb : b.families)
        for (auto const& N : fb.simples) hits += isomorphic(as_module(S, M), as_module(S, N));
      if (hits != 1) return false;
    }
  return true;
}

Outcome mp_correspondence() {
  Outcome o;
  std::string dims;
  for (auto const& [name, S] : corpus::representation_corpus()) {
    auto G = green_structure(S);
    PrimeField f(coprime_characteristic(G));
    std::optional<Irreducibles> first;
    for (int seed = 0; seed < mp_seeds; ++seed) {
      auto irr = enumerate_irreducibles(S, f, static_cast<std::uint64_t>(seed));
      std::size_t expected = 0;
      for (auto e : idempotent_representatives(G)) {
        auto H = group_from_elements(S, maximal_subgroup_elements(S, G, e));
        expected += group_irreducibles(H, f, static_cast<std::uint64_t>(seed) + 100).size();
      }
      o.require(irr.count() == expected, name + ": simple count != sum over H_e");
      std::mt19937_64 rng(static_cast<std::uint64_t>(seed) + 200);
      o.require(same_simple_classes(S, irr, regular_module_factors(S, f, rng)),
                name + ": classes differ from regular-module factors");
      if (!first)
        first = irr;
      else
        o.require(same_classes(S, *first, irr), name + ": seed " + std::to_string(seed) + " changes the classes");
    }
    dims += (dims.empty() ? "" : ", ") + name + "/GF(" + std::to_string(f.p) + "): " + std::to_string(first->count());
  }
  if (o.pass) o.detail = dims;
  return o;
}

Outcome final_theorem() {
  Outcome o;
  std::string detail;
  for (auto const& [name, S] : std::vector<corpus::Named>{{"flip-flop", corpus::flip_flop()}, {"C2", corpus::cyclic(2)}}) {
    auto hd = holonomy_decompose(S);
    auto rh = zeiger_reduce(hd, S);
    PrimeField f(final_field);
    auto pis = holonomy_principal_indecomposables(hd, rh, f, 0);
    std::set<int> depths;
    for (auto const& pi : pis) {
      depths.insert(pi.depth);
      o.require(pi.module.dim == pi.group_module.dim * pi.tail_points, name + ": dim M_i != dim M |Y_i|");
      o.require(pi.unique_maximal, name + ": N_i is not the unique maximal submodule");
      o.require(pi.exhaustive, name + ": unique-maximal search was sampled");
    }
    o.require(depths.size() == static_cast<std::size_t>(rh.m + 1), name + ": depths missing");
    auto irr = enumerate_irreducibles(rh.monoid, f, 0);
    o.require(quotients_match(rh.monoid, pis, irr), name + ": {M_i/N_i} differ from simples of U");
    detail += (detail.empty() ? "" : ", ") + name + ": " + std::to_string(pis.size()) + " modules";
  }
  if (o.pass) o.detail = detail;
  return o;
}

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(std::string const& args) {
  std::string cmd = std::string(TSG_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  while (auto n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Outcome cli_determinism() {
  Outcome o;
  std::string dir = TSG_SAMPLES_DIR;
  std::vector<std::string> automata{"flip_flop", "c2", "c3", "c6", "s3", "f2", "f3", "abc", "random_a", "random_b",
                                    "flip_flop_wr_c2"};
  std::vector<std::string> commands;
  for (auto const& a : automata) {
    std::string in = dir + "/" + a + ".json";
    for (auto const* fmt : {"text", "json", "dot"}) commands.push_back("structure " + in + " --format " + fmt);
    commands.push_back("holonomy " + in + " --verify --cascade");
    commands.push_back("holonomy " + in + " --verify --format json");
    commands.push_back("holonomy " + in + " --format dot");
    commands.push_back("reps " + in + " --seed 3 --holonomy");
    commands.push_back("reps " + in + " --format json --matrices");
  }
  commands.push_back("holonomy " + dir + "/c6.json --covering " + dir + "/c6_corrupted_covering.json");
  for (auto const* m : {"abc_matrices.txt", "mixing.txt"}) {
    std::string in = dir + "/" + m;
    commands.push_back("stochastic " + in);
    commands.push_back("stochastic " + in + " --green 0 1 J --format json");
    commands.push_back("stochastic " + in + " --green 0 1 H");
    commands.push_back("stochastic " + in + " --doob 0");
    commands.push_back("stochastic " + in + " --classify --format json");
  }
  for (auto const& c : commands) {
    auto a = run_cli(c), b = run_cli(c);
    o.require(a.code == b.code && a.out == b.out, "output differs: " + c);
    o.require(a.code >= 0 && a.code <= 4 && !a.out.empty(), "abnormal run: " + c);
  }
  if (o.pass) o.detail = std::to_string(commands.size()) + " commands, byte-identical";
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"Green oracle equivalence", green_oracle},
      {"idempotent identities", idempotent_identities},
      {"Rees round trip", rees_round_trip},
      {"stochastic Green suite", stochastic_green},
      {"support-semigroup counterexample", support_counterexample},
      {"Doob suite", doob_suite},
      {"holonomy soundness", holonomy_soundness},
      {"Zeiger suite", zeiger_suite},
      {"distribution lift", duality_lift},
      {"simple-module correspondence", mp_correspondence},
      {"principal modules of reduced holonomy", final_theorem},
      {"CLI determinism", cli_determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (std::exception const& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << ". " << criteria[i].first << ": " << o.detail
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
