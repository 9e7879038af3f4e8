#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsg/green.hpp"
#include "tsg/holonomy.hpp"
#include "tsg/rees.hpp"
#include "tsg/representation.hpp"
#include "tsg/wreath.hpp"
#include "tsg/zeiger.hpp"

namespace tsg {

/// Element words are spelled with these letter names.
struct Labels {
  std::vector<std::string> states;
  std::vector<std::string> letters;

  static Labels numbered(std::size_t states, std::size_t letters) {
    Labels l;
    for (std::size_t i = 0; i < states; ++i) l.states.push_back(std::to_string(i));
    for (std::size_t a = 0; a < letters; ++a) l.letters.push_back("a" + std::to_string(a));
    return l;
  }
};

inline std::string word_label(FiniteSemigroup const& S, index_t s, Labels const& names) {
  bool short_names = std::all_of(names.letters.begin(), names.letters.end(), [](auto const& n) { return n.size() == 1; });
  std::string out;
  for (auto g : S.word(s)) {
    if (!out.empty() && !short_names) out += ".";
    out += names.letters.at(g);
  }
  return out;
}

inline std::string state_set_label(StateSet a, Labels const& names) {
  std::string s = "{";
  for (StateSet m = a; m; m &= m - 1) {
    if (s.size() > 1) s += ",";
    s += names.states.at(static_cast<std::size_t>(std::countr_zero(m)));
  }
  return s + "}";
}

inline std::vector<index_t> state_list(StateSet a) {
  std::vector<index_t> out;
  for (StateSet m = a; m; m &= m - 1) out.push_back(static_cast<index_t>(std::countr_zero(m)));
  return out;
}

/// Direct covers (a, b) of the J-order: J(b) ⊊ J(a) with nothing between.
inline std::vector<std::pair<index_t, index_t>> j_covers(GreenStructure const& G) {
  std::vector<std::pair<index_t, index_t>> out;
  auto n = static_cast<index_t>(G.j.size());
  auto strictly = [&](index_t a, index_t b) { return a != b && G.below[a][b]; };
  for (index_t a = 0; a < n; ++a)
    for (index_t b = 0; b < n; ++b) {
      if (!strictly(a, b)) continue;
      bool direct = true;
      for (index_t c = 0; c < n && direct; ++c) direct = !(strictly(a, c) && strictly(c, b));
      if (direct) out.emplace_back(a, b);
    }
  return out;
}

/// Eggbox of one J-class: rows are R-classes and columns L-classes, both
/// ordered by least element; cells list the H-class.
inline std::vector<std::vector<std::vector<index_t>>> eggbox(GreenStructure const& G, index_t j) {
  std::vector<index_t> rs, ls;
  for (auto x : G.j.classes[j]) {
    if (std::find(rs.begin(), rs.end(), G.r.class_of[x]) == rs.end()) rs.push_back(G.r.class_of[x]);
    if (std::find(ls.begin(), ls.end(), G.l.class_of[x]) == ls.end()) ls.push_back(G.l.class_of[x]);
  }
  std::vector<std::vector<std::vector<index_t>>> grid(rs.size(), std::vector<std::vector<index_t>>(ls.size()));
  for (auto x : G.j.classes[j]) {
    auto r = std::find(rs.begin(), rs.end(), G.r.class_of[x]) - rs.begin();
    auto l = std::find(ls.begin(), ls.end(), G.l.class_of[x]) - ls.begin();
    grid[static_cast<std::size_t>(r)][static_cast<std::size_t>(l)].push_back(x);
  }
  return grid;
}

inline nlohmann::json structure_json(FiniteSemigroup const& S, GreenStructure const& G, Labels const& names) {
  nlohmann::json j;
  j["schema"] = "tsg.structure/1";
  j["degree"] = S.degree();
  j["size"] = S.size();
  j["letters"] = names.letters;
  j["states"] = names.states;
  j["elements"] = nlohmann::json::array();
  for (index_t s = 0; s < S.size(); ++s) {
    auto const& im = S.at(s).images();
    j["elements"].push_back({{"images", std::vector<index_t>(im.begin(), im.end())},
                             {"word", word_label(S, s, names)},
                             {"idempotent", S.is_idempotent(s)}});
  }
  j["j_classes"] = nlohmann::json::array();
  for (index_t c = 0; c < G.j.size(); ++c) {
    auto const& members = G.j.classes[c];
    nlohmann::json jc;
    jc["id"] = c;
    jc["elements"] = members;
    jc["regular"] = static_cast<bool>(G.regular[c]);
    jc["rank"] = S.at(members.front()).rank();
    jc["h_size"] = G.h.class_containing(members.front()).size();
    jc["eggbox"] = eggbox(G, c);
    if (G.regular[c]) {
      index_t e = *std::find_if(members.begin(), members.end(), [&](index_t x) { return S.is_idempotent(x); });
      auto rees = rees_coordinatize(S, G, e);
      jc["idempotent"] = e;
      jc["rees"] = {{"gamma", rees.data().gamma_size()},
                    {"group", rees.data().group.order()},
                    {"lambda", rees.data().lambda_size()}};
    }
    j["j_classes"].push_back(std::move(jc));
  }
  j["j_covers"] = nlohmann::json::array();
  for (auto [a, b] : j_covers(G)) j["j_covers"].push_back({a, b});
  return j;
}

namespace detail {
inline std::string dot_escape(std::string const& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else if (c == '"') out += "&quot;";
    else out += c;
  }
  return out;
}
}  // namespace detail

/// One HTML-table node per J-class, edges along the cover relation.
inline std::string eggbox_dot(FiniteSemigroup const& S, GreenStructure const& G, Labels const& names) {
  std::ostringstream o;
  o << "digraph eggbox {\n  node [shape=plaintext];\n";
  for (index_t c = 0; c < G.j.size(); ++c) {
    o << "  j" << c << " [label=<<table border=\"0\" cellborder=\"1\" cellspacing=\"0\">";
    for (auto const& row : eggbox(G, c)) {
      o << "<tr>";
      for (auto const& cell : row) {
        std::string text;
        for (auto x : cell) {
          if (!text.empty()) text += " ";
          text += (S.is_idempotent(x) ? "*" : "") + word_label(S, x, names);
        }
        o << "<td>" << detail::dot_escape(text) << "</td>";
      }
      o << "</tr>";
    }
    o << "</table>>];\n";
  }
  for (auto [a, b] : j_covers(G)) o << "  j" << a << " -> j" << b << ";\n";
  o << "}\n";
  return o.str();
}

/// Hasse diagram of XS modulo ∼, one rank per height.
inline std::string xs_dot(XSPoset const& xs, Labels const& names) {
  std::ostringstream o;
  o << "digraph xs {\n  rankdir=BT;\n  node [shape=box];\n";
  for (index_t a = 0; a < xs.size(); ++a)
    o << "  x" << a << " [label=\"" << detail::dot_escape(state_set_label(xs.sets[a], names)) << " h=" << xs.height[a]
      << "\"];\n";
  int top = xs.n();
  for (int h = -1; h <= top; ++h) {
    o << "  { rank=same;";
    for (index_t a = 0; a < xs.size(); ++a)
      if (xs.height[a] == h) o << " x" << a << ";";
    o << " }\n";
  }
  for (index_t a = 0; a < xs.size(); ++a)
    for (index_t b = 0; b < xs.size(); ++b) {
      if (!xs.less(a, b)) continue;
      bool direct = true;
      for (index_t c = 0; c < xs.size() && direct; ++c) direct = !(xs.less(a, c) && xs.less(c, b));
      if (direct) o << "  x" << a << " -> x" << b << ";\n";
    }
  for (index_t a = 0; a < xs.size(); ++a)
    for (index_t b = a + 1; b < xs.size(); ++b)
      if (xs.similar(a, b)) o << "  x" << a << " -> x" << b << " [style=dashed, dir=none];\n";
  o << "}\n";
  return o.str();
}

inline nlohmann::json covering_json(Covering const& cov) {
  nlohmann::json j;
  j["phi"] = nlohmann::json::array();
  for (auto const& x : cov.phi) j["phi"].push_back(x ? nlohmann::json(*x) : nlohmann::json(nullptr));
  j["witnesses"] = nlohmann::json::array();
  for (auto const& w : cov.witnesses) j["witnesses"].push_back(std::vector<index_t>(w.images().begin(), w.images().end()));
  return j;
}

/// Reads {"phi": [x | null, …], "witnesses": [[images], …]}.
inline Covering parse_covering_json(std::string const& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (nlohmann::json::parse_error const& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (j.contains("covering")) j = j["covering"];
  if (!j.is_object()) throw ParseError("$: expected an object");
  if (!j.contains("phi") || !j["phi"].is_array()) throw ParseError("$.phi: missing");
  if (!j.contains("witnesses") || !j["witnesses"].is_array()) throw ParseError("$.witnesses: missing");
  Covering cov;
  std::size_t ny = j["phi"].size();
  for (std::size_t y = 0; y < ny; ++y) {
    auto const& v = j["phi"][y];
    if (v.is_null())
      cov.phi.push_back(std::nullopt);
    else if (v.is_number_unsigned())
      cov.phi.push_back(v.get<index_t>());
    else
      throw ParseError("$.phi[" + std::to_string(y) + "]: expected a state index or null");
  }
  for (std::size_t g = 0; g < j["witnesses"].size(); ++g) {
    auto const& w = j["witnesses"][g];
    std::string path = "$.witnesses[" + std::to_string(g) + "]";
    if (!w.is_array() || w.size() != ny) throw ParseError(path + ": expected " + std::to_string(ny) + " images");
    std::vector<index_t> im;
    for (std::size_t y = 0; y < ny; ++y) {
      if (!w[y].is_number_unsigned() || w[y].get<std::size_t>() >= ny)
        throw ParseError(path + "[" + std::to_string(y) + "]: expected a point below " + std::to_string(ny));
      im.push_back(w[y].get<index_t>());
    }
    cov.witnesses.emplace_back(std::move(im));
  }
  return cov;
}

inline nlohmann::json holonomy_levels_json(HolonomyDecomposition const& hd, Labels const& names) {
  nlohmann::json levels = nlohmann::json::array();
  for (std::size_t k = 0; k < hd.levels.size(); ++k) {
    auto const& L = hd.levels[k];
    nlohmann::json lj;
    lj["level"] = k + 1;
    lj["height"] = L.height;
    lj["states"] = L.states();
    lj["group_order"] = L.group_order;
    lj["representatives"] = nlohmann::json::array();
    for (auto const& c : L.components) {
      nlohmann::json cj;
      cj["set"] = state_list(hd.xs.sets[c.rep]);
      cj["label"] = state_set_label(hd.xs.sets[c.rep], names);
      cj["bricks"] = nlohmann::json::array();
      for (auto b : c.bricks) cj["bricks"].push_back(state_list(hd.xs.sets[b]));
      cj["brick_count"] = c.bricks.size();
      cj["group_order"] = c.group.order();
      std::vector<std::string> factors;
      for (auto const& f : composition_series(c.group)) factors.push_back(f.name());
      cj["composition_factors"] = factors;
      lj["representatives"].push_back(std::move(cj));
    }
    levels.push_back(std::move(lj));
  }
  return levels;
}

inline nlohmann::json prime_factors_json(PrimeDecomposition const& pd) {
  std::vector<std::string> groups;
  for (auto const& g : pd.groups) groups.push_back(g.name());
  return {{"groups", groups}, {"flip_flops", pd.flip_flops}};
}

/// Component values of a cascade element per level and tail; group values
/// are "g<i>" and constants "c<state>".
inline nlohmann::json cascade_json(HolonomyDecomposition const& hd, Transformation const& t) {
  auto comps = hd.components_of(t);
  if (!comps) return nullptr;
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t k = 0; k < comps->size(); ++k) {
    nlohmann::json row = nlohmann::json::array();
    for (auto v : (*comps)[k]) {
      auto const& L = hd.levels[k];
      row.push_back(L.is_group_element(v) ? "g" + std::to_string(v) : "c" + std::to_string(v - L.group_order));
    }
    out.push_back(std::move(row));
  }
  return out;
}

inline nlohmann::json irreducibles_json(FiniteSemigroup const& S, Irreducibles const& irr, Labels const& names,
                                        bool matrices) {
  nlohmann::json out = nlohmann::json::array();
  for (auto const& fam : irr.families) {
    nlohmann::json fj;
    fj["j_class"] = fam.j_class;
    fj["idempotent"] = fam.idempotent;
    fj["word"] = word_label(S, fam.idempotent, names);
    fj["group_order"] = fam.schutz.group.order();
    fj["h_classes_in_r"] = fam.schutz.dimension();
    fj["simples"] = nlohmann::json::array();
    for (std::size_t i = 0; i < fam.simples.size(); ++i) {
      auto const& M = fam.simples[i];
      nlohmann::json mj{{"dim", M.dim}, {"field", irr.field.p}, {"apex", fam.j_class},
                        {"group_module_dim", fam.group_modules[i].dim}};
      if (matrices) {
        nlohmann::json gens = nlohmann::json::array();
        for (std::size_t g = 0; g < S.number_of_generators(); ++g) gens.push_back(M.action[S.generator_element(g)]);
        mj["generators"] = gens;
      }
      fj["simples"].push_back(std::move(mj));
    }
    out.push_back(std::move(fj));
  }
  return out;
}

inline nlohmann::json principal_indecomposables_json(std::vector<PrincipalIndecomposable> const& pis) {
  nlohmann::json out = nlohmann::json::array();
  for (auto const& pi : pis)
    out.push_back({{"depth", pi.depth},
                   {"idempotent", pi.idempotent},
                   {"group_order", pi.group_order},
                   {"group_module_dim", pi.group_module.dim},
                   {"tail_points", pi.tail_points},
                   {"module_dim", pi.module.dim},
                   {"radical_dim", pi.radical.size()},
                   {"simple_dim", pi.simple.dim},
                   {"unique_maximal", pi.unique_maximal},
                   {"unique_maximal_exhaustive", pi.exhaustive}});
  return out;
}

}  // namespace tsg
