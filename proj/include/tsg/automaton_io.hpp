#pragma once

#include <json.hpp>

#include <algorithm>
#include <string>

#include "tsg/automata.hpp"
#include "tsg/errors.hpp"
#include "tsg/rational.hpp"

namespace tsg {

namespace detail {

inline nlohmann::json const& field(nlohmann::json const& obj, char const* key) {
  if (!obj.contains(key)) throw ParseError(std::string("$.") + key + ": missing");
  return obj[key];
}

inline std::vector<std::string> name_list(nlohmann::json const& j, std::string const& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array of names");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) throw ParseError(path + "[" + std::to_string(i) + "]: expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

}  // namespace detail

/// Reads {"states", "alphabet", "delta", "omega"?}; delta has one row per
/// state with one target index per letter; omega entries map letter names to
/// fraction strings.
inline ProbabilisticInstance parse_automaton_json(std::string const& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (nlohmann::json::parse_error const& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("$: expected an object");
  ProbabilisticInstance inst;
  auto& A = inst.automaton;
  A.states = detail::name_list(detail::field(doc, "states"), "$.states");
  A.alphabet = detail::name_list(detail::field(doc, "alphabet"), "$.alphabet");
  if (A.states.empty()) throw ParseError("$.states: must be nonempty");
  if (A.alphabet.empty()) throw ParseError("$.alphabet: must be nonempty");
  auto const& d = detail::field(doc, "delta");
  if (!d.is_array() || d.size() != A.states.size())
    throw ParseError("$.delta: expected " + std::to_string(A.states.size()) + " rows");
  for (std::size_t x = 0; x < d.size(); ++x) {
    std::string path = "$.delta[" + std::to_string(x) + "]";
    if (!d[x].is_array() || d[x].size() != A.alphabet.size())
      throw ParseError(path + ": expected " + std::to_string(A.alphabet.size()) + " entries");
    std::vector<index_t> row;
    for (std::size_t a = 0; a < d[x].size(); ++a) {
      auto const& v = d[x][a];
      if (!v.is_number_unsigned() || v.get<std::uint64_t>() >= A.states.size())
        throw ParseError(path + "[" + std::to_string(a) + "]: expected a state index below " +
                         std::to_string(A.states.size()));
      row.push_back(static_cast<index_t>(v.get<std::uint64_t>()));
    }
    A.delta.push_back(std::move(row));
  }
  if (doc.contains("omega")) {
    auto const& om = doc["omega"];
    if (!om.is_array()) throw ParseError("$.omega: expected an array");
    for (std::size_t i = 0; i < om.size(); ++i) {
      std::string path = "$.omega[" + std::to_string(i) + "]";
      if (!om[i].is_object()) throw ParseError(path + ": expected an object");
      std::map<index_t, Rational> w;
      for (auto const& [letter, val] : om[i].items()) {
        auto it = std::find(A.alphabet.begin(), A.alphabet.end(), letter);
        if (it == A.alphabet.end()) throw ParseError(path + "." + letter + ": unknown letter");
        if (!val.is_string()) throw ParseError(path + "." + letter + ": expected a fraction string");
        try {
          w[static_cast<index_t>(it - A.alphabet.begin())] += parse_rational(val.get<std::string>());
        } catch (ParseError const& e) {
          throw ParseError(path + "." + letter + ": " + e.what());
        }
      }
      try {
        inst.omega.emplace_back(A.alphabet.size(), std::move(w));
      } catch (PreconditionError const& e) {
        throw ParseError(path + ": " + e.what());
      }
    }
  }
  return inst;
}

inline nlohmann::json automaton_to_json(ProbabilisticInstance const& inst) {
  nlohmann::json doc;
  doc["states"] = inst.automaton.states;
  doc["alphabet"] = inst.automaton.alphabet;
  doc["delta"] = inst.automaton.delta;
  doc["omega"] = nlohmann::json::array();
  for (auto const& w : inst.omega) {
    nlohmann::json o = nlohmann::json::object();
    for (auto const& [a, p] : w.weights()) o[inst.automaton.alphabet[a]] = format_rational(p);
    doc["omega"].push_back(o);
  }
  return doc;
}

/// Element image arrays, generator element indices and word witnesses.
inline nlohmann::json semigroup_to_json(FiniteSemigroup const& S) {
  nlohmann::json j;
  j["degree"] = S.degree();
  j["elements"] = nlohmann::json::array();
  for (auto const& t : S.elements()) j["elements"].push_back(std::vector<index_t>(t.images().begin(), t.images().end()));
  j["generators"] = nlohmann::json::array();
  for (std::size_t g = 0; g < S.number_of_generators(); ++g) j["generators"].push_back(S.generator_element(g));
  j["words"] = nlohmann::json::array();
  for (index_t i = 0; i < S.size(); ++i) j["words"].push_back(S.word(i));
  return j;
}

}  // namespace tsg
