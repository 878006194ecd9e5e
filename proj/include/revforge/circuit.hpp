#pragma once

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "revforge/gate.hpp"

namespace revforge {

/// One gate instance in a circuit: the controlled permutation
/// C_{control_word}[perm] placed so that its i-th input sits on circuit wire
/// layout[i]. An empty control word places `perm` itself.
class PlacedGate {
 public:
  PlacedGate(std::vector<Symbol> control_word, Gate perm, std::vector<std::size_t> layout)
      : control_word_(std::move(control_word)), perm_(std::move(perm)), layout_(std::move(layout)) {
    for (Symbol s : control_word_) require(perm_.alphabet().contains(s), "control symbol outside alphabet");
    require(layout_.size() == arity(), "layout length must equal control length plus permutation arity");
  }

  /// Places `perm` on wires 0..arity-1 without controls.
  static PlacedGate plain(Gate perm) {
    std::vector<std::size_t> layout(perm.arity());
    std::iota(layout.begin(), layout.end(), std::size_t{0});
    return PlacedGate({}, std::move(perm), std::move(layout));
  }

  [[nodiscard]] const std::vector<Symbol>& control_word() const noexcept { return control_word_; }
  [[nodiscard]] const Gate& perm() const noexcept { return perm_; }
  [[nodiscard]] const std::vector<std::size_t>& layout() const noexcept { return layout_; }
  [[nodiscard]] std::size_t arity() const noexcept { return control_word_.size() + perm_.arity(); }

  [[nodiscard]] Gate base() const { return control_word_.empty() ? perm_ : controlled(control_word_, perm_); }

  [[nodiscard]] Gate extension(std::size_t width) const { return extend(base(), width, layout_); }

  friend bool operator==(const PlacedGate&, const PlacedGate&) = default;

 private:
  std::vector<Symbol> control_word_;
  Gate perm_;
  std::vector<std::size_t> layout_;
};

/// An ordered gate list on `width` wires. Gates are listed in application
/// order (first listed is applied first), the left-to-right reading of a
/// circuit diagram; as a composition that is g_last ∘ ... ∘ g_first.
class Circuit {
 public:
  Circuit(Alphabet alphabet, std::size_t width, std::vector<PlacedGate> gates = {})
      : alphabet_(alphabet), width_(width), gates_(std::move(gates)) {
    for (const auto& g : gates_) check(g);
  }

  [[nodiscard]] const Alphabet& alphabet() const noexcept { return alphabet_; }
  [[nodiscard]] std::size_t width() const noexcept { return width_; }
  [[nodiscard]] const std::vector<PlacedGate>& gates() const noexcept { return gates_; }
  [[nodiscard]] std::size_t size() const noexcept { return gates_.size(); }

  void push_back(PlacedGate g) {
    check(g);
    gates_.push_back(std::move(g));
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  void check(const PlacedGate& g) const {
    require(g.perm().alphabet() == alphabet_, "gate alphabet differs from circuit alphabet");
    validate_layout(g.layout(), width_);
  }

  Alphabet alphabet_;
  std::size_t width_;
  std::vector<PlacedGate> gates_;
};

/// The gate computed by the circuit.
inline Gate circuit_denotation(const Circuit& c) {
  Table state(word_count(c.alphabet(), c.width()));
  std::iota(state.begin(), state.end(), WordIndex{0});
  for (const auto& g : c.gates()) {
    const Gate ext = g.extension(c.width());
    for (auto& y : state) y = ext.table()[y];
  }
  return Gate(c.alphabet(), c.width(), std::move(state), Gate::Unchecked{});
}

/// Exact table equality of the circuit's denotation with `target`.
inline bool verify_circuit(const Circuit& c, const Gate& target) {
  if (target.alphabet() != c.alphabet() || target.arity() != c.width()) return false;
  return circuit_denotation(c) == target;
}

}  // namespace revforge
