#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "revforge/circuit.hpp"

namespace revforge {

using json = nlohmann::json;

// Circuit interchange format:
//
//   {"alphabet": k, "width": n,
//    "gates": [{"control_word": [s, ...],
//               "perm": {"arity": l, "cycles": [["010", "100", "001"], ...]},
//               "layout": [wire, ...]}, ...]}
//
// Cycles list words as symbol strings; unlisted words are fixed. Output is
// canonical: each cycle starts at its smallest word and cycles are sorted.

inline json perm_to_json(const Gate& g) {
  json cycles_json = json::array();
  for (const auto& cycle : cycles(g)) {
    json c = json::array();
    for (WordIndex w : cycle) c.push_back(word_to_string(w, g.alphabet(), g.arity()));
    cycles_json.push_back(std::move(c));
  }
  return json{{"arity", g.arity()}, {"cycles", std::move(cycles_json)}};
}

inline Gate perm_from_json(const json& j, const Alphabet& alphabet) {
  require(j.is_object() && j.contains("arity") && j.contains("cycles"), "perm needs \"arity\" and \"cycles\"");
  const auto arity = j.at("arity").get<std::size_t>();
  std::vector<std::vector<WordIndex>> cycle_list;
  for (const auto& c : j.at("cycles")) {
    std::vector<WordIndex> cycle;
    for (const auto& w : c) {
      const auto text = w.get<std::string>();
      require(text.size() == arity, "cycle word \"" + text + "\" does not have length " + std::to_string(arity));
      cycle.push_back(encode_word(word_from_string(text, alphabet), alphabet));
    }
    require(!cycle.empty(), "empty cycle");
    cycle_list.push_back(std::move(cycle));
  }
  return Gate::from_cycles(alphabet, arity, cycle_list);
}

inline json placed_gate_to_json(const PlacedGate& g) {
  return json{{"control_word", g.control_word()}, {"perm", perm_to_json(g.perm())}, {"layout", g.layout()}};
}

inline PlacedGate placed_gate_from_json(const json& j, const Alphabet& alphabet) {
  std::vector<Symbol> control;
  if (j.contains("control_word")) control = j.at("control_word").get<std::vector<Symbol>>();
  Gate perm = perm_from_json(j.at("perm"), alphabet);
  std::vector<std::size_t> layout;
  if (j.contains("layout")) {
    layout = j.at("layout").get<std::vector<std::size_t>>();
  } else {
    layout.resize(control.size() + perm.arity());
    std::iota(layout.begin(), layout.end(), std::size_t{0});
  }
  return PlacedGate(std::move(control), std::move(perm), std::move(layout));
}

inline json circuit_to_json(const Circuit& c) {
  json gates = json::array();
  for (const auto& g : c.gates()) gates.push_back(placed_gate_to_json(g));
  return json{{"alphabet", c.alphabet().size()}, {"width", c.width()}, {"gates", std::move(gates)}};
}

inline Circuit circuit_from_json(const json& j) {
  try {
    const Alphabet alphabet(j.at("alphabet").get<std::size_t>());
    Circuit c(alphabet, j.at("width").get<std::size_t>());
    for (const auto& g : j.at("gates")) c.push_back(placed_gate_from_json(g, alphabet));
    return c;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed circuit JSON: ") + e.what());
  }
}

/// A gate written either as a circuit document or as a bare perm object with
/// an "alphabet" field.
inline Gate gate_from_json(const json& j) {
  if (j.contains("gates")) return circuit_denotation(circuit_from_json(j));
  try {
    const Alphabet alphabet(j.at("alphabet").get<std::size_t>());
    return perm_from_json(j.contains("perm") ? j.at("perm") : j, alphabet);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed gate JSON: ") + e.what());
  }
}

inline std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << text;
}

}  // namespace revforge
