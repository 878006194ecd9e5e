#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "revforge/circuit.hpp"
#include "revforge/circuit_json.hpp"

namespace revforge {

namespace detail {

// α with f = wire_perm(α), if f only moves wires around.
inline std::optional<std::vector<std::size_t>> as_wire_permutation(const Gate& f) {
  if (f.arity() > 6) return std::nullopt;
  std::vector<std::size_t> m(f.arity());
  std::iota(m.begin(), m.end(), std::size_t{0});
  do {
    if (wire_perm(WirePermutation(m), f.alphabet()) == f) return m;
  } while (std::next_permutation(m.begin(), m.end()));
  return std::nullopt;
}

// Pads to `width` display columns; box-drawing characters count as one.
inline std::string pad_cell(const std::string& body, std::size_t width, const char* fill) {
  std::size_t shown = 0;
  for (unsigned char c : body)
    if ((c & 0xC0) != 0x80) ++shown;
  const std::size_t left = (width - std::min(width, shown)) / 2;
  const std::size_t right = width - std::min(width, shown) - left;
  std::string out;
  for (std::size_t i = 0; i < left; ++i) out += fill;
  out += body;
  for (std::size_t i = 0; i < right; ++i) out += fill;
  return out;
}

}  // namespace detail

/// Monospace diagram, one column per gate in application order. Wires are
/// numbered from 1 here, unlike files and code. Control
/// wires show ● with their control symbol; acted wires show ○ with either
/// an arrow to the local position their value moves to (wire permutations)
/// or their local input position. Each column is labelled below: swap, rot,
/// a symbol cycle for one-wire perms, or p<i> from the legend after the
/// diagram.
inline std::string render_circuit(const Circuit& c, std::size_t width_cap = 64) {
  if (c.width() > width_cap) {
    throw ResourceCapExceeded("circuit width " + std::to_string(c.width()) + " exceeds the render cap of " +
                              std::to_string(width_cap));
  }
  constexpr std::size_t kCell = 7;
  const std::size_t n = c.width();
  std::vector<std::string> rows(n);
  for (std::size_t w = 0; w < n; ++w) {
    rows[w] = "w" + std::to_string(w + 1);
    rows[w].resize(std::to_string(n).size() + 2, ' ');
    rows[w] += "──";
  }
  std::string labels(rows.empty() ? 0 : std::to_string(n).size() + 4, ' ');
  std::vector<std::string> legend;

  for (const auto& g : c.gates()) {
    const auto& layout = g.layout();
    const std::size_t k = g.control_word().size();
    std::vector<std::string> cell(n);
    for (std::size_t i = 0; i < k; ++i) cell[layout[i]] = "●" + std::string(1, symbol_char(g.control_word()[i]));
    const auto alpha = detail::as_wire_permutation(g.perm());
    std::string label;
    for (std::size_t i = 0; i < g.perm().arity(); ++i) {
      const std::size_t wire = layout[k + i];
      cell[wire] = alpha ? "○→" + std::to_string((*alpha)[i] + 1) : "○" + std::to_string(i + 1);
    }
    if (alpha) {
      const auto& a = *alpha;
      const bool identity = std::is_sorted(a.begin(), a.end());
      if (identity) label = "id";
      else if (a.size() == 2) label = "swap";
      else if (a.size() == 3 && (a == std::vector<std::size_t>{1, 2, 0} || a == std::vector<std::size_t>{2, 0, 1})) label = "rot";
      else label = "wires";
    } else if (g.perm().arity() == 1) {
      for (const auto& cyc : cycles(g.perm())) {
        label += "(";
        for (auto x : cyc) label += symbol_char(static_cast<Symbol>(x));
        label += ")";
      }
    } else {
      const auto text = perm_to_json(g.perm()).dump();
      auto it = std::find(legend.begin(), legend.end(), text);
      if (it == legend.end()) it = legend.insert(legend.end(), text);
      label = "p" + std::to_string(it - legend.begin() + 1);
    }
    const auto [lo, hi] = std::minmax_element(layout.begin(), layout.end());
    for (std::size_t w = 0; w < n; ++w) {
      if (!cell[w].empty()) rows[w] += detail::pad_cell(cell[w], kCell, "─");
      else if (w > *lo && w < *hi) rows[w] += detail::pad_cell("┼", kCell, "─");
      else rows[w] += detail::pad_cell("", kCell, "─");
    }
    labels += detail::pad_cell(label, kCell, " ");
  }
  std::ostringstream out;
  for (const auto& r : rows) out << r << "──\n";
  if (!c.gates().empty()) {
    while (!labels.empty() && labels.back() == ' ') labels.pop_back();
    out << labels << "\n";
  }
  for (std::size_t i = 0; i < legend.size(); ++i) out << "p" << i + 1 << " = " << legend[i] << "\n";
  return out.str();
}

}  // namespace revforge
