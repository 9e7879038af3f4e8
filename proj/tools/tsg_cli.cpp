#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tsg/tsg.hpp"

namespace {

using namespace tsg;
using nlohmann::json;

enum Exit { ok = 0, failed = 1, parse = 2, precondition = 3, characteristic = 4 };

std::string read_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Loaded {
  ProbabilisticInstance instance;
  TransitionSemigroup transition;
  Labels labels;
};

Loaded load_automaton(std::string const& path, std::size_t bound) {
  Loaded L;
  L.instance = parse_automaton_json(read_file(path));
  L.transition = transition_semigroup(L.instance.automaton, bound);
  L.labels.states = L.instance.automaton.states;
  L.labels.letters = L.instance.automaton.alphabet;
  return L;
}

void print_json(json const& j) { std::cout << j.dump(2) << "\n"; }

std::string join(std::vector<std::string> const& xs, std::string const& sep = ", ") {
  std::string out;
  for (auto const& x : xs) out += (out.empty() ? "" : sep) + x;
  return out;
}

template <class T>
std::string join_numbers(std::vector<T> const& xs, std::string const& sep = ", ") {
  std::vector<std::string> s;
  for (auto const& x : xs) s.push_back(std::to_string(x));
  return join(s, sep);
}

std::string element_name(FiniteSemigroup const& S, index_t s, Labels const& names) {
  return word_label(S, s, names) + "#" + std::to_string(s);
}

// ---- structure

struct StructureOptions {
  std::string input;
  std::string format = "text";
  std::size_t bound = default_closure_bound;
};

int cmd_structure(StructureOptions const& o) {
  auto L = load_automaton(o.input, o.bound);
  auto const& S = L.transition.semigroup;
  auto G = green_structure(S);
  if (o.format == "dot") {
    std::cout << eggbox_dot(S, G, L.labels);
    return ok;
  }
  auto doc = structure_json(S, G, L.labels);
  if (o.format == "json") {
    print_json(doc);
    return ok;
  }
  std::cout << "semigroup: " << S.size() << " elements on " << S.degree() << " states, "
            << S.number_of_generators() << " generators\n";
  std::cout << "J-classes: " << G.j.size() << "\n";
  for (auto const& jc : doc["j_classes"]) {
    std::cout << "J" << jc["id"].get<std::size_t>() << ": size " << jc["elements"].size() << ", rank "
              << jc["rank"].get<std::size_t>() << ", " << (jc["regular"].get<bool>() ? "regular" : "nonregular")
              << ", R-classes " << jc["eggbox"].size() << ", L-classes " << jc["eggbox"][0].size() << ", |H| "
              << jc["h_size"].get<std::size_t>();
    if (jc.contains("rees"))
      std::cout << ", Rees |Gamma| " << jc["rees"]["gamma"].get<std::size_t>() << " |G| "
                << jc["rees"]["group"].get<std::size_t>() << " |Lambda| " << jc["rees"]["lambda"].get<std::size_t>();
    std::cout << "\n";
    for (auto const& row : jc["eggbox"]) {
      std::vector<std::string> cells;
      for (auto const& cell : row) {
        std::vector<std::string> names;
        for (auto const& x : cell) {
          auto s = x.get<index_t>();
          names.push_back((S.is_idempotent(s) ? "*" : "") + element_name(S, s, L.labels));
        }
        cells.push_back(join(names, " "));
      }
      std::cout << "  | " << join(cells, " | ") << " |\n";
    }
  }
  std::vector<std::string> covers;
  for (auto const& c : doc["j_covers"])
    covers.push_back("J" + std::to_string(c[0].get<std::size_t>()) + " > J" + std::to_string(c[1].get<std::size_t>()));
  std::cout << "J-order covers: " << (covers.empty() ? "none" : join(covers)) << "\n";
  return ok;
}

// ---- holonomy

struct HolonomyOptions {
  std::string input;
  std::string format = "text";
  bool verify = false;
  bool cascade = false;
  std::string covering;
  std::size_t bound = 20'000;
};

struct VerifyLine {
  std::string what;
  bool pass;
  std::string detail;
};

std::string covering_failure(CoveringCheck const& c) {
  std::string s = c.reason;
  if (c.point) s += "; point " + std::to_string(*c.point);
  if (c.generator) s += "; generator " + std::to_string(*c.generator);
  return s;
}

std::vector<VerifyLine> verify_decomposition(HolonomyDecomposition const& hd, FiniteSemigroup const& S,
                                             std::optional<ReducedHolonomy> const& rh) {
  std::vector<VerifyLine> out;
  try {
    verify_height_axioms(hd.xs);
    out.push_back({"height axioms", true, ""});
  } catch (Error const& e) {
    out.push_back({"height axioms", false, e.what()});
  }
  for (auto const& st : hd.stages) {
    std::string what = "stage k=" + std::to_string(st.k);
    if (auto bad = verify_stage(st, hd.xs, S))
      out.push_back({what, false, "point " + std::to_string(bad->first) + "; generator " + std::to_string(bad->second)});
    else
      out.push_back({what, true, ""});
  }
  auto c = verify_covering(hd.covering, S, [&](Transformation const& t) { return hd.in_holonomy_monoid(t); });
  out.push_back({"covering by (Y,T)", c.ok, c.ok ? "" : covering_failure(c)});
  if (rh) {
    auto r = verify_covering(rh->covering, S, [&](Transformation const& t) { return rh->monoid.contains(t); });
    out.push_back({"covering by (Y,U)", r.ok, r.ok ? "" : covering_failure(r)});
  }
  return out;
}

int cmd_holonomy(HolonomyOptions const& o) {
  auto L = load_automaton(o.input, default_closure_bound);
  auto const& S = L.transition.semigroup;
  auto hd = holonomy_decompose(S);
  if (o.format == "dot") {
    std::cout << xs_dot(hd.xs, L.labels);
    return ok;
  }

  // A supplied covering is checked on its own, against the holonomy monoid.
  if (!o.covering.empty()) {
    auto cov = parse_covering_json(read_file(o.covering));
    auto c = verify_covering(cov, S, [&](Transformation const& t) { return hd.in_holonomy_monoid(t); });
    if (o.format == "json") {
      json j{{"schema", "tsg.holonomy/1"}, {"verify", {{"covering", o.covering}, {"pass", c.ok}}}};
      if (!c.ok) {
        j["verify"]["reason"] = c.reason;
        j["verify"]["point"] = c.point ? json(*c.point) : json(nullptr);
        j["verify"]["generator"] = c.generator ? json(*c.generator) : json(nullptr);
      }
      print_json(j);
    } else {
      std::cout << "verify covering " << o.covering << ": " << (c.ok ? "PASS" : "FAIL: " + covering_failure(c))
                << "\n";
    }
    return c.ok ? ok : failed;
  }

  std::optional<ReducedHolonomy> rh;
  std::string reduced_error;
  try {
    rh = zeiger_reduce(hd, S, o.bound);
  } catch (BoundExceeded const& e) {
    reduced_error = e.what();
  }
  auto pd = prime_factors(hd);

  json j;
  j["schema"] = "tsg.holonomy/1";
  j["states"] = S.degree();
  j["size"] = S.size();
  j["n"] = hd.n();
  j["levels"] = holonomy_levels_json(hd, L.labels);
  j["points"] = hd.shape.points();
  j["holonomy_monoid_order"] = hd.holonomy_monoid_order().get_str();
  if (rh)
    j["reduced"] = {{"size", rh->monoid.size()}, {"m", rh->m}, {"n", rh->n}};
  else
    j["reduced"] = {{"error", reduced_error}};
  j["prime_factors"] = prime_factors_json(pd);
  j["covering"] = covering_json(hd.covering);
  if (o.cascade) {
    j["cascade"] = json::array();
    for (std::size_t g = 0; g < S.number_of_generators(); ++g)
      j["cascade"].push_back({{"letter", L.labels.letters[g]}, {"components", cascade_json(hd, hd.covering.witnesses[g])}});
  }
  std::vector<VerifyLine> checks;
  bool all = true;
  if (o.verify) {
    checks = verify_decomposition(hd, S, rh);
    for (auto const& c : checks) all = all && c.pass;
    j["verify"] = json::array();
    for (auto const& c : checks) j["verify"].push_back({{"check", c.what}, {"pass", c.pass}, {"detail", c.detail}});
    j["verify_pass"] = all;
  }
  if (o.format == "json") {
    print_json(j);
    return all ? ok : failed;
  }

  std::cout << "semigroup: " << S.size() << " elements on " << S.degree() << " states\n";
  std::cout << "height n = " << hd.n() << "\n";
  for (auto const& lv : j["levels"]) {
    std::cout << "level " << lv["level"].get<std::size_t>() << ": |X| " << lv["states"].get<std::size_t>()
              << ", group order " << lv["group_order"].get<std::size_t>() << "\n";
    for (auto const& r : lv["representatives"]) {
      std::vector<std::string> factors = r["composition_factors"].get<std::vector<std::string>>();
      std::cout << "  " << r["label"].get<std::string>() << ": " << r["brick_count"].get<std::size_t>()
                << " bricks, |H| " << r["group_order"].get<std::size_t>() << ", factors ["
                << join(factors) << "]\n";
    }
  }
  std::cout << "|Y| = " << hd.shape.points() << "\n";
  std::cout << "|T| = " << j["holonomy_monoid_order"].get<std::string>() << "\n";
  if (rh)
    std::cout << "|U| = " << rh->monoid.size() << "\n(m, n) = (" << rh->m << ", " << rh->n << ")\n";
  else
    std::cout << "|U|: " << reduced_error << "\n";
  std::vector<std::string> groups = j["prime_factors"]["groups"].get<std::vector<std::string>>();
  std::cout << "prime factors: groups [" << join(groups) << "], flip-flops " << pd.flip_flops << "\n";
  if (o.cascade)
    for (auto const& c : j["cascade"]) std::cout << "cascade " << c["letter"].get<std::string>() << ": " << c["components"].dump() << "\n";
  for (auto const& c : checks)
    std::cout << "verify " << c.what << ": " << (c.pass ? "PASS" : "FAIL: " + c.detail) << "\n";
  if (o.verify) std::cout << "verify: " << (all ? "PASS" : "FAIL") << "\n";
  return all ? ok : failed;
}

// ---- stochastic

struct StochasticOptions {
  std::string input;
  std::string format = "text";
  std::vector<std::string> green;
  std::optional<std::size_t> doob;
  bool classify = false;
};

std::string indent(std::string const& text, std::string const& pad = "    ") {
  std::string out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out += pad + line + "\n";
  return out;
}

std::string matrix_text(RationalMatrix const& m) {
  std::string s;
  for (auto const& row : m) {
    std::vector<std::string> r;
    for (auto const& x : row) r.push_back(format_rational(x));
    s += join(r, " ") + "\n";
  }
  return s;
}

int cmd_stochastic(StochasticOptions const& o) {
  auto mats = parse_matrices(read_file(o.input));
  if (mats.empty()) throw ParseError("no matrices in " + o.input);
  json j;
  j["schema"] = "tsg.stochastic/1";
  j["matrices"] = mats.size();
  std::ostringstream t;
  t << "matrices: " << mats.size() << "\n";
  auto index_arg = [&](std::string const& s) -> std::size_t {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &pos);
    } catch (std::exception const&) {
      pos = 0;
    }
    if (pos != s.size() || s.empty()) throw ParseError("--green: '" + s + "' is not a matrix index");
    if (v >= mats.size()) throw PreconditionError("matrix index " + s + " out of range");
    return v;
  };
  bool any = false;
  if (!o.green.empty()) {
    any = true;
    auto a = index_arg(o.green[0]), b = index_arg(o.green[1]);
    auto rel = parse_green_relation(o.green[2]);
    auto v = green_test(mats[a], mats[b], rel);
    json g{{"a", a}, {"b", b}, {"relation", std::string(1, to_char(rel))}, {"related", v.related}};
    t << "M" << a << " " << to_char(rel) << " M" << b << ": " << (v.related ? "true" : "false") << "\n";
    auto wit = [&](char const* key, std::string const& label, std::optional<StochasticMatrix> const& m) {
      if (!m) return;
      g[key] = matrix_to_json(m->entries());
      t << "  " << label << ":\n" << indent(matrix_text(m->entries()));
    };
    wit("left_q", "Q with Q M", v.left_q);
    wit("left_p", "P with P N", v.left_p);
    wit("right_q", "Q with M Q", v.right_q);
    wit("right_p", "P with N P", v.right_p);
    j["green"] = g;
  }
  if (o.doob) {
    any = true;
    if (*o.doob >= mats.size()) throw PreconditionError("matrix index " + std::to_string(*o.doob) + " out of range");
    auto d = doob_analyze(mats[*o.doob]);
    json dj{{"matrix", *o.doob}, {"idempotent", d.is_idempotent}};
    t << "M" << *o.doob << ": " << (d.is_idempotent ? "idempotent" : "not idempotent") << "\n";
    if (d.is_idempotent) {
      dj["rank"] = d.rank;
      dj["blocks"] = d.blocks;
      dj["transient"] = d.transient;
      dj["permutation"] = d.perm;
      dj["e"] = matrix_to_json(d.e);
      dj["s"] = matrix_to_json(d.s);
      std::vector<std::string> blocks;
      for (auto const& b : d.blocks) blocks.push_back("{" + join_numbers(b) + "}");
      t << "  rank " << d.rank << ", blocks " << d.blocks.size() << ": " << join(blocks, " ") << "\n";
      t << "  transient: {" << join_numbers(d.transient) << "}\n";
      t << "  permutation: " << join_numbers(d.perm, " ") << "\n";
      t << "  E:\n" << indent(matrix_text(d.e));
      if (!d.s.empty()) t << "  S:\n" << indent(matrix_text(d.s));
    }
    j["doob"] = dj;
  }
  if (o.classify) {
    any = true;
    auto sc = support_semigroup(mats);
    auto const& S = sc.semigroup.semigroup;
    auto G = green_structure(S);
    auto names = Labels::numbered(S.degree(), mats.size());
    for (std::size_t m = 0; m < mats.size(); ++m) names.letters[m] = "M" + std::to_string(m);
    json cj;
    cj["size"] = S.size();
    cj["semigroup"] = structure_json(S, G, names);
    cj["expressions"] = json::array();
    t << "support semigroup: " << S.size() << " elements on " << S.degree() << " states\n";
    std::vector<std::string> sizes;
    for (auto const& c : G.j.classes) sizes.push_back(std::to_string(c.size()));
    t << "J-classes: " << G.j.size() << " (sizes " << join(sizes) << ")\n";
    for (std::size_t m = 0; m < mats.size(); ++m) {
      json e = json::object();
      std::vector<std::string> terms;
      for (auto const& [s, w] : sc.expressions[m].weights()) {
        e[std::to_string(s)] = format_rational(w);
        terms.push_back(format_rational(w) + " " + element_name(S, s, names));
      }
      cj["expressions"].push_back(e);
      t << "M" << m << " = " << join(terms, " + ") << "\n";
    }
    for (std::size_t m = 0; m < mats.size(); ++m)
      for (std::size_t n = m + 1; n < mats.size(); ++n) {
        bool same = G.j.same(sc.semigroup.letter_map[m], sc.semigroup.letter_map[n]);
        t << "J(M" << m << ") " << (same ? "=" : "!=") << " J(M" << n << ")\n";
      }
    j["classify"] = cj;
  }
  if (!any) {
    j["summary"] = json::array();
    for (std::size_t m = 0; m < mats.size(); ++m) {
      auto cf = canonical_form(mats[m]);
      j["summary"].push_back({{"matrix", m},
                              {"size", mats[m].size()},
                              {"rank", rank(mats[m])},
                              {"idempotent", mats[m].is_idempotent()},
                              {"canonical_form", matrix_to_json(cf.combined)}});
      t << "M" << m << ": " << mats[m].size() << "x" << mats[m].size() << ", rank " << rank(mats[m])
        << (mats[m].is_idempotent() ? ", idempotent" : "") << "\n  canonical form:\n"
        << indent(matrix_text(cf.combined));
    }
  }
  if (o.format == "json")
    print_json(j);
  else
    std::cout << t.str();
  return ok;
}

// ---- reps

struct RepsOptions {
  std::string input;
  std::string format = "text";
  std::optional<std::uint32_t> field;
  std::uint64_t seed = 0;
  bool holonomy = false;
  bool matrices = false;
  std::size_t bound = 20'000;
};

/// Orders |H_e| over one idempotent per regular J-class.
std::vector<std::size_t> maximal_subgroup_orders(GreenStructure const& G) {
  std::vector<std::size_t> out;
  for (auto e : idempotent_representatives(G)) out.push_back(G.h.class_containing(e).size());
  return out;
}

void require_coprime(std::uint32_t p, std::vector<std::size_t> const& orders, std::string const& what) {
  std::vector<std::size_t> bad;
  for (auto h : orders)
    if (h % p == 0) bad.push_back(h);
  if (!bad.empty())
    throw CharacteristicError("characteristic " + std::to_string(p) + " divides maximal subgroup orders of " + what +
                              ": |H_e| = " + join_numbers(bad));
}

int cmd_reps(RepsOptions const& o) {
  auto L = load_automaton(o.input, default_closure_bound);
  auto const& S = L.transition.semigroup;
  auto G = green_structure(S);
  auto orders = maximal_subgroup_orders(G);

  std::optional<HolonomyDecomposition> hd;
  std::optional<ReducedHolonomy> rh;
  std::optional<GreenStructure> UG;
  std::vector<std::size_t> u_orders;
  if (o.holonomy) {
    hd = holonomy_decompose(S);
    rh = zeiger_reduce(*hd, S, o.bound);
    UG = green_structure(rh->monoid);
    u_orders = maximal_subgroup_orders(*UG);
  }

  std::uint32_t p = 0;
  if (o.field) {
    p = *o.field;
  } else {
    for (p = 3;; ++p) {
      if (!PrimeField::is_prime(p)) continue;
      auto coprime = [&](auto const& hs) { return std::all_of(hs.begin(), hs.end(), [&](auto h) { return h % p != 0; }); };
      if (coprime(orders) && coprime(u_orders)) break;
    }
  }
  PrimeField f(p);
  require_coprime(p, orders, "S");
  if (o.holonomy) require_coprime(p, u_orders, "U");

  auto irr = enumerate_irreducibles(S, f, o.seed);
  json j;
  j["schema"] = "tsg.reps/1";
  j["field"] = p;
  j["seed"] = o.seed;
  j["size"] = S.size();
  j["count"] = irr.count();
  j["apexes"] = irreducibles_json(S, irr, L.labels, o.matrices);

  std::vector<PrincipalIndecomposable> pis;
  bool match = true;
  if (o.holonomy) {
    pis = holonomy_principal_indecomposables(*hd, *rh, f, o.seed);
    std::mt19937_64 rng(o.seed);
    auto u_irr = enumerate_irreducibles(rh->monoid, *UG, f, rng);
    match = quotients_match(rh->monoid, pis, u_irr);
    j["holonomy"] = {{"size", rh->monoid.size()},
                     {"m", rh->m},
                     {"n", rh->n},
                     {"modules", principal_indecomposables_json(pis)},
                     {"quotients_match", match}};
  }
  if (o.format == "json") {
    print_json(j);
    return match ? ok : failed;
  }

  std::cout << "field GF(" << p << "), seed " << o.seed << "\n";
  std::cout << "simple modules: " << irr.count() << "\n";
  for (auto const& fam : j["apexes"]) {
    std::vector<std::size_t> dims;
    for (auto const& m : fam["simples"]) dims.push_back(m["dim"].get<std::size_t>());
    std::cout << "apex J" << fam["j_class"].get<std::size_t>() << " at " << fam["word"].get<std::string>() << "#"
              << fam["idempotent"].get<std::size_t>() << ": |H| " << fam["group_order"].get<std::size_t>()
              << ", dims [" << join_numbers(dims) << "]\n";
    if (o.matrices)
      for (auto const& m : fam["simples"]) std::cout << "  generators " << m["generators"].dump() << "\n";
  }
  if (o.holonomy) {
    std::cout << "reduced holonomy: |U| " << rh->monoid.size() << ", (m, n) = (" << rh->m << ", " << rh->n << ")\n";
    std::cout << "depth  |H_i|  dim V  |Y_i|  dim M  dim N  dim M/N  unique maximal\n";
    for (auto const& pi : pis)
      std::cout << std::setw(5) << pi.depth << std::setw(7) << pi.group_order << std::setw(7) << pi.group_module.dim << std::setw(7) << pi.tail_points
                << std::setw(7) << pi.module.dim << std::setw(7) << pi.radical.size() << std::setw(9) << pi.simple.dim
                << "  " << (pi.unique_maximal ? "yes" : "no") << (pi.exhaustive ? "" : " (sampled)") << "\n";
    std::cout << "quotients match simples of U: " << (match ? "yes" : "no") << "\n";
  }
  return match ? ok : failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite transformation semigroups: Green structure, holonomy cascades, stochastic matrices and modular "
               "representations."};
  app.require_subcommand(1);
  auto formats = CLI::IsMember({"text", "json", "dot"});
  auto no_dot = CLI::IsMember({"text", "json"});

  StructureOptions so;
  auto* structure = app.add_subcommand("structure", "J-classes, eggboxes, Rees parameters of an automaton's semigroup");
  structure->add_option("input", so.input, "automaton JSON")->required();
  structure->add_option("--format", so.format, "text, json or dot (eggbox diagram)")->check(formats);
  structure->add_option("--bound", so.bound, "maximum semigroup size");

  HolonomyOptions ho;
  auto* hol = app.add_subcommand("holonomy", "holonomy cascade decomposition and its reduced monoid");
  hol->add_option("input", ho.input, "automaton JSON")->required();
  hol->add_option("--format", ho.format, "text, json or dot (XS poset)")->check(formats);
  hol->add_flag("--verify", ho.verify, "re-check every stage and covering; exit 1 on failure");
  hol->add_option("--covering", ho.covering, "verify a covering {phi, witnesses} read from this JSON file instead");
  hol->add_flag("--cascade", ho.cascade, "print cascade components of each letter's witness");
  hol->add_option("--bound", ho.bound, "maximum size of the reduced monoid U");

  StochasticOptions sto;
  auto* sto_cmd = app.add_subcommand("stochastic", "Green relations, Doob form and support semigroups of matrices");
  sto_cmd->add_option("input", sto.input, "matrix list (text or JSON)")->required();
  sto_cmd->add_option("--format", sto.format, "text or json")->check(no_dot);
  sto_cmd->add_option("--green", sto.green, "a b REL: test matrices a and b for REL in L, R, J, H")->expected(3);
  sto_cmd->add_option("--doob", sto.doob, "block decomposition of idempotent matrix i");
  sto_cmd->add_flag("--classify", sto.classify, "support semigroup and each matrix as a distribution over it");

  RepsOptions ro;
  auto* reps = app.add_subcommand("reps", "irreducible modules over GF(p)");
  reps->add_option("input", ro.input, "automaton JSON")->required();
  reps->add_option("--format", ro.format, "text or json")->check(no_dot);
  reps->add_option("--field", ro.field, "prime p; default is the least prime >= 3 coprime to all |H_e|");
  reps->add_option("--seed", ro.seed, "random seed (default 0)");
  reps->add_flag("--holonomy", ro.holonomy, "principal modules M_i, radicals N_i of the reduced holonomy monoid");
  reps->add_flag("--matrices", ro.matrices, "include generator matrices of each simple module");
  reps->add_option("--bound", ro.bound, "maximum size of the reduced monoid U");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? ok : parse;
  }

  try {
    if (*structure) return cmd_structure(so);
    if (*hol) return cmd_holonomy(ho);
    if (*sto_cmd) return cmd_stochastic(sto);
    if (*reps) return cmd_reps(ro);
  } catch (ParseError const& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return parse;
  } catch (CharacteristicError const& e) {
    std::cerr << "characteristic error: " << e.what() << "\n";
    return characteristic;
  } catch (PreconditionError const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return precondition;
  } catch (std::exception const& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return failed;
  }
  return ok;
}
