#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "revforge/circuit.hpp"
#include "revforge/circuit_json.hpp"
#include "revforge/conservation.hpp"
#include "revforge/groups.hpp"

namespace revforge {

/// A library template: `perm` under `control_word`, placed on each listed
/// layout, or on every injective layout when `layouts` is empty.
struct LibraryEntry {
  std::vector<Symbol> control_word;
  Gate perm;
  std::vector<std::vector<std::size_t>> layouts;
};

enum class SearchMode { find_any, find_shortest, prove_no_shorter };

inline std::string to_string(SearchMode m) {
  switch (m) {
    case SearchMode::find_any: return "find_any";
    case SearchMode::find_shortest: return "find_shortest";
    case SearchMode::prove_no_shorter: return "prove_no_shorter";
  }
  return "?";
}

inline SearchMode search_mode_from_string(const std::string& s) {
  for (auto m : {SearchMode::find_any, SearchMode::find_shortest, SearchMode::prove_no_shorter})
    if (to_string(m) == s) return m;
  throw InvalidArgument("unknown search mode \"" + s + "\"");
}

/// find_any and find_shortest both return the lexicographically smallest
/// shortest circuit. prove_no_shorter rules out every length below `bound`.
struct SearchProblem {
  Gate target;
  std::vector<LibraryEntry> library;
  SearchMode mode = SearchMode::find_shortest;
  std::size_t max_depth = 12;
  std::size_t bound = 0;
  std::size_t memory_mb = 2048;
  std::size_t threads = 1;
  std::size_t degree_cap = 4096;

  [[nodiscard]] std::size_t width() const { return target.arity(); }
};

/// Library gates in index order after expanding layouts and dropping
/// placements whose table repeats an earlier one.
struct InstantiatedLibrary {
  std::vector<PlacedGate> gates;
  std::vector<Table> tables;
  std::vector<std::string> policy;  // one line per entry
};

namespace detail {

inline void lexicographic_layouts(std::size_t arity, std::size_t width,
                                  const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> layout;
  std::vector<bool> used(width, false);
  std::function<void()> rec = [&]() {
    if (layout.size() == arity) {
      visit(layout);
      return;
    }
    for (std::size_t w = 0; w < width; ++w) {
      if (used[w]) continue;
      used[w] = true;
      layout.push_back(w);
      rec();
      layout.pop_back();
      used[w] = false;
    }
  };
  rec();
}

}  // namespace detail

inline InstantiatedLibrary instantiate_library(const std::vector<LibraryEntry>& library, const Alphabet& alphabet,
                                               std::size_t width) {
  require(!library.empty(), "library is empty");
  InstantiatedLibrary out;
  std::set<Table> seen;
  for (const auto& e : library) {
    require(e.perm.alphabet() == alphabet, "library gate alphabet differs from the target's");
    const std::size_t arity = e.control_word.size() + e.perm.arity();
    require(arity <= width, "library gate of arity " + std::to_string(arity) + " does not fit " + std::to_string(width) +
                                " wires");
    std::size_t added = 0, placements = 0;
    auto add = [&](const std::vector<std::size_t>& layout) {
      ++placements;
      PlacedGate g(e.control_word, e.perm, layout);
      auto t = g.extension(width).table();
      if (seen.insert(t).second) {
        out.gates.push_back(std::move(g));
        out.tables.push_back(std::move(t));
        ++added;
      }
    };
    if (e.layouts.empty()) {
      detail::lexicographic_layouts(arity, width, add);
    } else {
      for (const auto& l : e.layouts) {
        validate_layout(l, width);
        require(l.size() == arity, "layout length differs from the gate's arity");
        add(l);
      }
    }
    out.policy.push_back("control " + word_to_string(e.control_word) + ", arity-" + std::to_string(e.perm.arity()) +
                         " perm: " + (e.layouts.empty() ? "all injective layouts" : "listed layouts") + ", " +
                         std::to_string(placements) + " placements, " + std::to_string(added) + " new");
  }
  return out;
}

inline InstantiatedLibrary instantiate_library(const SearchProblem& p) {
  return instantiate_library(p.library, p.target.alphabet(), p.width());
}

struct SynthesisResult {
  SearchMode mode = SearchMode::find_shortest;
  bool found = false;
  std::optional<Circuit> circuit;
  /// Gate indices into the instantiated library, in application order.
  std::vector<std::uint32_t> word;
  /// Every composition of at most this many gates was ruled out.
  std::size_t exhausted_depth = 0;
  /// The searched length limit.
  std::size_t limit = 0;
  /// One side of the search closed up without meeting the target, so no
  /// composition of any length reaches it.
  bool unreachable = false;
  std::size_t library_size = 0;
  std::vector<std::string> layout_policy;
  std::uint64_t nodes_expanded = 0;
  std::size_t forward_depth = 0;
  std::size_t backward_depth = 0;
  std::size_t extension_depth = 0;
  std::size_t forward_states = 0;
  std::size_t backward_states = 0;
  bool verified = false;

  [[nodiscard]] std::size_t length() const { return circuit ? circuit->size() : 0; }

  /// prove_no_shorter(d) succeeded: nothing shorter than d exists.
  [[nodiscard]] bool proved() const { return mode == SearchMode::prove_no_shorter && !found; }

  [[nodiscard]] nlohmann::json to_json() const {
    nlohmann::json j{{"mode", to_string(mode)},
                     {"status", found ? "found" : "unsat"},
                     {"library_size", library_size},
                     {"layout_policy", layout_policy},
                     {"nodes_expanded", nodes_expanded},
                     {"search", {{"forward_depth", forward_depth},
                                 {"backward_depth", backward_depth},
                                 {"extension_depth", extension_depth},
                                 {"forward_states", forward_states},
                                 {"backward_states", backward_states}}}};
    nlohmann::json cert{{"exhausted_depth", exhausted_depth}, {"limit", limit}};
    if (found) {
      j["length"] = length();
      j["circuit"] = circuit_to_json(*circuit);
      j["gate_indices"] = word;
      cert["verified"] = verified;
    } else {
      j["unsat_depth"] = exhausted_depth;
      cert["unreachable"] = unreachable;
    }
    j["certificate"] = cert;
    return j;
  }
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

inline std::uint64_t hash_bytes(const unsigned char* p, std::size_t n) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ n;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    std::uint64_t k;
    std::memcpy(&k, p + i, 8);
    h ^= k * 0x9e3779b97f4a7c15ULL;
    h = ((h << 29) | (h >> 35)) * 0xbf58476d1ce4e5b9ULL;
  }
  std::uint64_t tail = 0;
  std::memcpy(&tail, p + i, n - i);
  return mix64(h ^ tail);
}

// Permutation tables keyed by content, with BFS bookkeeping per state.
template <class T>
class StateStore {
 public:
  static constexpr std::uint32_t npos = std::numeric_limits<std::uint32_t>::max();

  explicit StateStore(std::size_t degree) : degree_(degree), slots_(1024, npos) {}

  [[nodiscard]] std::size_t size() const noexcept { return hashes_.size(); }
  [[nodiscard]] const T* state(std::uint32_t id) const { return arena_.data() + std::size_t{id} * degree_; }
  [[nodiscard]] std::uint8_t depth(std::uint32_t id) const { return depth_[id]; }
  [[nodiscard]] std::uint32_t parent(std::uint32_t id) const { return parent_[id]; }
  [[nodiscard]] std::uint32_t gate(std::uint32_t id) const { return gate_[id]; }
  [[nodiscard]] std::size_t bytes_per_state() const { return degree_ * sizeof(T) + 17 + 2 * sizeof(std::uint32_t); }

  [[nodiscard]] std::uint32_t find(const T* s) const {
    const std::uint64_t h = hash(s);
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t i = h & mask;; i = (i + 1) & mask) {
      const std::uint32_t id = slots_[i];
      if (id == npos) return npos;
      if (hashes_[id] == h && std::memcmp(state(id), s, degree_ * sizeof(T)) == 0) return id;
    }
  }

  // Adds s unless present. Returns whether it was added.
  bool insert(const T* s, std::uint8_t depth, std::uint32_t parent, std::uint32_t gate) {
    if ((size() + 1) * 2 > slots_.size()) grow();
    const std::uint64_t h = hash(s);
    const std::size_t mask = slots_.size() - 1;
    std::size_t i = h & mask;
    for (;; i = (i + 1) & mask) {
      const std::uint32_t id = slots_[i];
      if (id == npos) break;
      if (hashes_[id] == h && std::memcmp(state(id), s, degree_ * sizeof(T)) == 0) return false;
    }
    require(size() < npos, "state store full");
    slots_[i] = static_cast<std::uint32_t>(size());
    arena_.insert(arena_.end(), s, s + degree_);
    hashes_.push_back(h);
    depth_.push_back(depth);
    parent_.push_back(parent);
    gate_.push_back(gate);
    return true;
  }

 private:
  [[nodiscard]] std::uint64_t hash(const T* s) const {
    return hash_bytes(reinterpret_cast<const unsigned char*>(s), degree_ * sizeof(T));
  }

  void grow() {
    std::vector<std::uint32_t> next(slots_.size() * 2, npos);
    const std::size_t mask = next.size() - 1;
    for (std::uint32_t id = 0; id < size(); ++id) {
      std::size_t i = hashes_[id] & mask;
      while (next[i] != npos) i = (i + 1) & mask;
      next[i] = id;
    }
    slots_ = std::move(next);
  }

  std::size_t degree_;
  std::vector<std::uint32_t> slots_;
  std::vector<T> arena_;
  std::vector<std::uint64_t> hashes_;
  std::vector<std::uint8_t> depth_;
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> gate_;
};

// Bidirectional breadth-first search from the identity (forward) and from
// the target (backward, applying inverses on the left). Forward layers are
// generated in order of their lexicographically smallest gate words, which
// the reconstruction relies on.
template <class T>
class MeetInTheMiddle {
 public:
  MeetInTheMiddle(const std::vector<Table>& library, const Table& target, std::size_t limit, std::size_t state_cap,
                  std::size_t threads)
      : degree_(target.size()),
        limit_(limit),
        state_cap_(state_cap),
        threads_(std::max<std::size_t>(1, threads)),
        forward_(degree_),
        backward_(degree_),
        target_(target.begin(), target.end()) {
    for (const auto& t : library) {
      gates_.emplace_back(t.begin(), t.end());
      std::vector<T> inv(degree_);
      for (std::size_t x = 0; x < degree_; ++x) inv[t[x]] = static_cast<T>(x);
      inverses_.push_back(std::move(inv));
    }
  }

  void run() {
    std::vector<T> id(degree_);
    for (std::size_t x = 0; x < degree_; ++x) id[x] = static_cast<T>(x);
    forward_.insert(id.data(), 0, StateStore<T>::npos, 0);
    backward_.insert(target_.data(), 0, StateStore<T>::npos, 0);
    forward_layers_ = {0};
    backward_layers_ = {0};
    if (id == target_) {
      length_ = 0;
      return;
    }
    while (a_ + b_ < limit_) {
      const auto side = choose_side();
      if (!side) break;
      const std::size_t before = *side ? forward_.size() : backward_.size();
      const auto met = *side ? expand(forward_, forward_layers_, gates_, a_, backward_)
                             : expand(backward_, backward_layers_, inverses_, b_, forward_);
      const std::size_t after = *side ? forward_.size() : backward_.size();
      if (met) {
        length_ = *met;
        return;
      }
      if (after == before) {
        unreachable_ = true;
        return;
      }
    }
    for (std::size_t k = 1; a_ + b_ + k <= limit_; ++k) {
      extension_ = k;
      if (auto met = extend_search(k)) {
        length_ = *met;
        return;
      }
    }
  }

  [[nodiscard]] std::optional<std::size_t> length() const { return length_; }
  [[nodiscard]] bool unreachable() const { return unreachable_; }
  [[nodiscard]] std::size_t exhausted() const {
    if (length_) return *length_ - 1;
    return a_ + b_ + extension_;
  }
  [[nodiscard]] std::uint64_t nodes() const { return nodes_; }
  [[nodiscard]] std::size_t forward_depth() const { return a_; }
  [[nodiscard]] std::size_t backward_depth() const { return b_; }
  [[nodiscard]] std::size_t extension_depth() const { return extension_; }
  [[nodiscard]] std::size_t forward_states() const { return forward_.size(); }
  [[nodiscard]] std::size_t backward_states() const { return backward_.size(); }

  /// The lexicographically smallest gate word of the shortest length.
  [[nodiscard]] std::vector<std::uint32_t> lexmin_word() const {
    const std::size_t total = *length_;
    const std::size_t p = std::min(total, a_);
    std::uint32_t chosen = StateStore<T>::npos;
    for (std::size_t id = forward_layers_[p]; id < layer_end(forward_, forward_layers_, p); ++id) {
      if (within(forward_.state(static_cast<std::uint32_t>(id)), total - p)) {
        chosen = static_cast<std::uint32_t>(id);
        break;
      }
    }
    require(chosen != StateStore<T>::npos, "internal error: no forward state continues to the target");
    std::vector<std::uint32_t> word;
    for (std::uint32_t id = chosen; forward_.depth(id) > 0; id = forward_.parent(id)) word.push_back(forward_.gate(id));
    std::reverse(word.begin(), word.end());

    std::vector<T> cur(forward_.state(chosen), forward_.state(chosen) + degree_);
    std::vector<T> next(degree_);
    for (std::size_t r = total - p; r > 0; --r) {
      bool stepped = false;
      for (std::uint32_t g = 0; g < gates_.size() && !stepped; ++g) {
        apply(gates_[g], cur.data(), next.data());
        if (within(next.data(), r - 1)) {
          word.push_back(g);
          cur.swap(next);
          stepped = true;
        }
      }
      require(stepped, "internal error: greedy continuation stalled");
    }
    require(cur == target_, "internal error: reconstruction missed the target");
    return word;
  }

 private:
  void apply(const std::vector<T>& g, const T* s, T* out) const {
    for (std::size_t x = 0; x < degree_; ++x) out[x] = g[s[x]];
  }

  static std::size_t layer_end(const StateStore<T>& store, const std::vector<std::size_t>& layers, std::size_t k) {
    return k + 1 < layers.size() ? layers[k + 1] : store.size();
  }

  // true = forward, false = backward, nullopt = neither fits in memory.
  std::optional<bool> choose_side() const {
    auto predict = [&](const StateStore<T>& store, const std::vector<std::size_t>& layers, std::size_t depth) {
      const double last = static_cast<double>(layer_end(store, layers, depth) - layers[depth]);
      double growth = static_cast<double>(gates_.size());
      if (depth > 0) {
        const double prev = static_cast<double>(layers[depth] - layers[depth - 1]);
        growth = std::min(growth, std::max(1.0, last / prev * 1.25));
      }
      return static_cast<double>(store.size()) + last * growth;
    };
    const double f = predict(forward_, forward_layers_, a_);
    const double b = predict(backward_, backward_layers_, b_);
    const bool f_ok = f <= static_cast<double>(state_cap_);
    const bool b_ok = b <= static_cast<double>(state_cap_);
    if (f_ok && b_ok) return f <= b;
    if (f_ok) return true;
    if (b_ok) return false;
    return std::nullopt;
  }

  // Builds the next layer of `store` and matches it against `other`.
  // Returns the shortest length through the new layer, if any.
  std::optional<std::size_t> expand(StateStore<T>& store, std::vector<std::size_t>& layers,
                                    const std::vector<std::vector<T>>& moves, std::size_t& depth,
                                    const StateStore<T>& other) {
    const std::size_t begin = layers[depth], end = layer_end(store, layers, depth);
    layers.push_back(store.size());
    ++depth;
    require(depth < 255, "search depth exceeds 254");
    std::vector<T> child(degree_);
    for (std::size_t id = begin; id < end; ++id) {
      for (std::uint32_t g = 0; g < moves.size(); ++g) {
        apply(moves[g], store.state(static_cast<std::uint32_t>(id)), child.data());
        ++nodes_;
        store.insert(child.data(), static_cast<std::uint8_t>(depth), static_cast<std::uint32_t>(id), g);
      }
      if (store.size() > 2 * state_cap_) {
        throw ResourceCapExceeded("search frontier outgrew the memory cap (" + std::to_string(store.size()) +
                                  " states); raise --memory-mb");
      }
    }
    std::optional<std::size_t> best;
    for (std::size_t id = layers[depth]; id < store.size(); ++id) {
      const auto j = other.find(store.state(static_cast<std::uint32_t>(id)));
      if (j != StateStore<T>::npos) {
        const std::size_t len = depth + other.depth(j);
        if (!best || len < *best) best = len;
      }
    }
    return best;
  }

  // Depth-k walks from every state of the last forward layer, matched
  // against the whole backward store.
  std::optional<std::size_t> extend_search(std::size_t k) {
    const std::size_t begin = forward_layers_[a_], end = forward_.size();
    const std::size_t workers = std::min<std::size_t>(threads_, std::max<std::size_t>(1, (end - begin) / 1024));
    std::vector<std::size_t> best(workers, std::numeric_limits<std::size_t>::max());
    std::vector<std::uint64_t> counts(workers, 0);
    auto work = [&](std::size_t w) {
      const std::size_t lo = begin + (end - begin) * w / workers, hi = begin + (end - begin) * (w + 1) / workers;
      std::vector<std::vector<T>> stack(k + 1, std::vector<T>(degree_));
      std::size_t local = std::numeric_limits<std::size_t>::max();
      std::uint64_t count = 0;
      std::function<void(std::size_t)> rec = [&](std::size_t level) {
        for (std::uint32_t g = 0; g < gates_.size(); ++g) {
          apply(gates_[g], stack[level].data(), stack[level + 1].data());
          ++count;
          if (level + 1 == k) {
            const auto j = backward_.find(stack[level + 1].data());
            if (j != StateStore<T>::npos) local = std::min<std::size_t>(local, backward_.depth(j));
          } else {
            rec(level + 1);
          }
        }
      };
      for (std::size_t id = lo; id < hi; ++id) {
        std::memcpy(stack[0].data(), forward_.state(static_cast<std::uint32_t>(id)), degree_ * sizeof(T));
        rec(0);
      }
      best[w] = local;
      counts[w] = count;
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
      for (auto& t : pool) t.join();
    }
    for (auto c : counts) nodes_ += c;
    const std::size_t m = *std::min_element(best.begin(), best.end());
    if (m == std::numeric_limits<std::size_t>::max()) return std::nullopt;
    return a_ + k + m;
  }

  // Whether s reaches the target in at most r more gates, given that it
  // needs at least r.
  bool within(const T* s, std::size_t r) const {
    if (r <= b_) {
      const auto j = backward_.find(s);
      return j != StateStore<T>::npos && backward_.depth(j) <= r;
    }
    const std::size_t k = r - b_;
    std::vector<std::vector<T>> stack(k + 1, std::vector<T>(degree_));
    std::memcpy(stack[0].data(), s, degree_ * sizeof(T));
    std::function<bool(std::size_t)> rec = [&](std::size_t level) {
      for (std::uint32_t g = 0; g < gates_.size(); ++g) {
        apply(gates_[g], stack[level].data(), stack[level + 1].data());
        if (level + 1 == k) {
          if (backward_.find(stack[level + 1].data()) != StateStore<T>::npos) return true;
        } else if (rec(level + 1)) {
          return true;
        }
      }
      return false;
    };
    return rec(0);
  }

  std::size_t degree_;
  std::size_t limit_;
  std::size_t state_cap_;
  std::size_t threads_;
  StateStore<T> forward_, backward_;
  std::vector<std::size_t> forward_layers_, backward_layers_;
  std::vector<std::vector<T>> gates_, inverses_;
  std::vector<T> target_;
  std::size_t a_ = 0, b_ = 0, extension_ = 0;
  std::optional<std::size_t> length_;
  bool unreachable_ = false;
  std::uint64_t nodes_ = 0;
};

template <class T>
SynthesisResult run_search(const SearchProblem& problem, const InstantiatedLibrary& lib, std::size_t limit) {
  const std::size_t degree = problem.target.degree();
  const std::size_t per_state = degree * sizeof(T) + 25;
  const std::size_t cap = std::max<std::size_t>(1024, problem.memory_mb * (std::size_t{1} << 20) / (2 * per_state));
  MeetInTheMiddle<T> engine(lib.tables, problem.target.table(), limit, cap, problem.threads);
  engine.run();
  SynthesisResult r;
  r.mode = problem.mode;
  r.limit = limit;
  r.library_size = lib.gates.size();
  r.layout_policy = lib.policy;
  r.nodes_expanded = engine.nodes();
  r.forward_depth = engine.forward_depth();
  r.backward_depth = engine.backward_depth();
  r.extension_depth = engine.extension_depth();
  r.forward_states = engine.forward_states();
  r.backward_states = engine.backward_states();
  r.unreachable = engine.unreachable();
  r.exhausted_depth = engine.unreachable() ? limit : std::min(limit, engine.exhausted());
  if (engine.length()) {
    r.found = true;
    r.word = engine.lexmin_word();
    Circuit c(problem.target.alphabet(), problem.width());
    for (auto g : r.word) c.push_back(lib.gates[g]);
    r.verified = verify_circuit(c, problem.target);
    if (!r.verified) throw Error("internal error: synthesized circuit does not denote the target");
    r.circuit = std::move(c);
  }
  return r;
}

}  // namespace detail

/// Meet-in-the-middle search for a shortest composition of library gates
/// equal to the target. The returned circuit is always verified.
inline SynthesisResult synthesize(const SearchProblem& problem) {
  const std::size_t degree = problem.target.degree();
  if (degree > problem.degree_cap) {
    throw ResourceCapExceeded("search degree " + std::to_string(degree) + " exceeds the cap of " +
                              std::to_string(problem.degree_cap));
  }
  std::size_t limit = problem.max_depth;
  if (problem.mode == SearchMode::prove_no_shorter) {
    require(problem.bound >= 1, "prove_no_shorter needs a bound of at least 1");
    limit = problem.bound - 1;
  }
  require(limit <= 254, "search depth above 254");
  const auto lib = instantiate_library(problem);
  if (degree <= 256) return detail::run_search<std::uint8_t>(problem, lib, limit);
  return detail::run_search<std::uint16_t>(problem, lib, limit);
}

// ---------------------------------------------------------------------------
// Problem documents
//
//   {"target": circuit-or-perm, "width": n,
//    "library": [{"control_word": [..], "perm": perm, "layouts": "all" | [[..], ..]}],
//    "mode": "find_shortest" | "find_any" | "prove_no_shorter", "bound": d, "max_depth": d}

inline nlohmann::json problem_to_json(const SearchProblem& p) {
  nlohmann::json lib = nlohmann::json::array();
  for (const auto& e : p.library) {
    nlohmann::json j{{"control_word", e.control_word}, {"perm", perm_to_json(e.perm)}};
    if (e.layouts.empty()) j["layouts"] = "all";
    else j["layouts"] = e.layouts;
    lib.push_back(std::move(j));
  }
  auto target = perm_to_json(p.target);
  target["alphabet"] = p.target.alphabet().size();
  nlohmann::json j{{"target", target}, {"width", p.width()}, {"library", lib}, {"mode", to_string(p.mode)},
                   {"max_depth", p.max_depth}};
  if (p.mode == SearchMode::prove_no_shorter) j["bound"] = p.bound;
  return j;
}

inline SearchProblem problem_from_json(const nlohmann::json& j) {
  try {
    const Gate target = gate_from_json(j.at("target"));
    if (j.contains("width")) require(j.at("width").get<std::size_t>() == target.arity(), "width differs from the target's arity");
    SearchProblem p{target, {}};
    for (const auto& e : j.at("library")) {
      LibraryEntry entry{{}, perm_from_json(e.at("perm"), target.alphabet()), {}};
      if (e.contains("control_word")) entry.control_word = e.at("control_word").get<std::vector<Symbol>>();
      if (e.contains("layouts") && !e.at("layouts").is_string())
        entry.layouts = e.at("layouts").get<std::vector<std::vector<std::size_t>>>();
      else if (e.contains("layouts"))
        require(e.at("layouts").get<std::string>() == "all", "layouts must be \"all\" or a list");
      p.library.push_back(std::move(entry));
    }
    if (j.contains("mode")) p.mode = search_mode_from_string(j.at("mode").get<std::string>());
    if (j.contains("max_depth")) p.max_depth = j.at("max_depth").get<std::size_t>();
    if (j.contains("bound")) p.bound = j.at("bound").get<std::size_t>();
    if (p.mode == SearchMode::prove_no_shorter) require(j.contains("bound"), "prove_no_shorter needs \"bound\"");
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed problem: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Fixed searches

/// The 0-word-controlled three-wire rotation (x1 x2 x3) ↦ (x3 x1 x2), one
/// template on every injective layout.
inline LibraryEntry controlled_rotation_entry() { return LibraryEntry{{0}, wire_rotation(Alphabet(2)), {}}; }

/// ρ_{a,b,c,d}: the 0-controlled rotation with its control on wire a and
/// the rotated wires b, c, d.
inline PlacedGate rho(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
  return PlacedGate({0}, wire_rotation(Alphabet(2)), {a, b, c, d});
}

/// The reference nine-gate circuit for the 00-controlled rotation, in
/// application order.
inline Circuit cc_rot_reference_circuit() {
  return Circuit(Alphabet(2), 5,
                 {rho(3, 0, 2, 4), rho(1, 0, 2, 3), rho(0, 1, 4, 3), rho(1, 2, 3, 4), rho(0, 1, 3, 4), rho(3, 0, 1, 2),
                  rho(1, 0, 2, 4), rho(3, 1, 4, 2), rho(1, 0, 2, 3)});
}

inline const std::vector<std::string>& search_instance_names() {
  static const std::vector<std::string> names{"cc_rot_9", "c01_rot_8", "wordcycle_0001_6", "wordcycle_0011_6",
                                              "fig2_4swaps"};
  return names;
}

/// Library of 2-controlled symbol swaps, every control word and layout.
inline std::vector<LibraryEntry> two_controlled_swaps(const Alphabet& a) {
  std::vector<LibraryEntry> lib;
  for (WordIndex cw = 0; cw < word_count(a, 2); ++cw)
    for (WordIndex s = 0; s < a.size(); ++s)
      for (WordIndex t = s + 1; t < a.size(); ++t) lib.push_back({decode_word(cw, a, 2), Gate::word_swap(a, 1, s, t), {}});
  return lib;
}

/// The ab-controlled 3-cycle (xs xt ys) on four wires.
inline Gate fig2_target(const Alphabet& al, Symbol a, Symbol b, Symbol x, Symbol s, Symbol t, Symbol y) {
  for (Symbol v : {a, b, x, s, t, y}) require(al.contains(v), "symbol outside alphabet");
  require(x != y && s != t, "(xs xt ys) is a 3-cycle only when x != y and s != t");
  const std::size_t k = al.size();
  const Gate cyc = Gate::from_cycles(al, 2, {{static_cast<WordIndex>(x * k + s), static_cast<WordIndex>(x * k + t),
                                              static_cast<WordIndex>(y * k + s)}});
  return controlled({a, b}, cyc);
}

/// Target and library for a named fixed search, with the expected length.
inline std::pair<SearchProblem, std::size_t> search_instance(const std::string& name) {
  const Alphabet bin(2);
  const Gate rot = wire_rotation(bin);
  auto word = [&](std::string_view s) { return encode_word(word_from_string(s, bin), bin); };
  if (name == "cc_rot_9")
    return {SearchProblem{extend(controlled({0, 0}, rot), 5, {0, 1, 2, 3, 4}), {controlled_rotation_entry()}}, 9};
  if (name == "c01_rot_8")
    return {SearchProblem{extend(controlled({0, 1}, rot), 5, {0, 1, 2, 3, 4}), {controlled_rotation_entry()}}, 8};
  if (name == "wordcycle_0001_6")
    return {SearchProblem{Gate::from_cycles(bin, 4, {{word("0001"), word("0010"), word("0100")}}), {controlled_rotation_entry()}},
            6};
  if (name == "wordcycle_0011_6")
    return {SearchProblem{Gate::from_cycles(bin, 4, {{word("0011"), word("0110"), word("0101")}}), {controlled_rotation_entry()}},
            6};
  if (name == "fig2_4swaps") return {SearchProblem{fig2_target(bin, 1, 1, 0, 0, 1, 1), two_controlled_swaps(bin)}, 4};
  throw InvalidArgument("unknown search instance \"" + name + "\"");
}

struct ReproduceOptions {
  std::size_t threads = 1;
  std::size_t memory_mb = 2048;
  /// Directory of stored circuits (<name>.json). Found circuits are
  /// compared with a stored one, or written when none exists yet.
  std::optional<std::string> fixture_dir;
  bool update_fixtures = false;
};

struct SearchReproduction {
  std::string name;
  std::size_t expected_length = 0;
  SynthesisResult result;
  /// prove_no_shorter(expected) for the instances claimed optimal.
  std::optional<SynthesisResult> optimality;
  std::optional<bool> reference_verifies;
  std::string fixture;  // "matched", "written", or "" when none was used

  [[nodiscard]] bool passed() const {
    return result.found && result.length() == expected_length && (!optimality || optimality->proved()) &&
           reference_verifies.value_or(true) && fixture != "mismatch";
  }

  [[nodiscard]] nlohmann::json to_json() const {
    nlohmann::json j{{"name", name}, {"expected_length", expected_length}, {"result", result.to_json()}};
    if (optimality) j["optimality"] = optimality->to_json();
    if (reference_verifies) j["reference_circuit_verifies"] = *reference_verifies;
    if (!fixture.empty()) j["fixture"] = fixture;
    j["passed"] = passed();
    return j;
  }
};

inline SearchReproduction reproduce_search(const std::string& name, const ReproduceOptions& options = {}) {
  auto [problem, expected] = search_instance(name);
  problem.threads = options.threads;
  problem.memory_mb = options.memory_mb;
  SearchReproduction r{name, expected, synthesize(problem), std::nullopt, std::nullopt, ""};
  if (name == "cc_rot_9" || name == "c01_rot_8") {
    SearchProblem prove = problem;
    prove.mode = SearchMode::prove_no_shorter;
    prove.bound = expected;
    r.optimality = synthesize(prove);
  }
  if (name == "cc_rot_9") r.reference_verifies = verify_circuit(cc_rot_reference_circuit(), problem.target);
  if (options.fixture_dir && r.result.circuit) {
    const auto path = std::filesystem::path(*options.fixture_dir) / (name + ".json");
    if (std::filesystem::exists(path) && !options.update_fixtures) {
      r.fixture = circuit_from_json(read_json_file(path.string())) == *r.result.circuit ? "matched" : "mismatch";
    } else {
      write_text_file(path.string(), dump_canonical(circuit_to_json(*r.result.circuit)));
      r.fixture = "written";
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Fredkin and wire swap

struct FredkinReport {
  std::size_t n = 0;
  bool in_scope = false;
  BigInt group_order;         // |G|, G generated by every placement
  std::size_t span_size = 0;  // parity sequences reached by G
  BigInt even_part_order;     // |G ∩ alternating conservative| = |G| / span
  BigInt expected_order;      // |alternating conservative|
  bool verdict = false;       // G contains every even conservative permutation
  std::size_t generators = 0;

  [[nodiscard]] nlohmann::json to_json() const {
    nlohmann::json j{{"n", n},
                     {"in_scope", in_scope},
                     {"generators", generators},
                     {"group_order", group_order.str()},
                     {"parity_span_size", span_size},
                     {"even_part_order", even_part_order.str()},
                     {"expected_order", expected_order.str()}};
    if (in_scope) j["verdict"] = verdict ? "yes" : "no";
    return j;
  }
};

/// Builds the group of all placements of the Fredkin gate and the wire swap
/// on n bits. Fredkin is odd on some weight classes, so the group is larger
/// than the alternating conservative group; the check is that it contains
/// all of it, i.e. |G| = |alternating conservative| × |parity span|.
inline FredkinReport fredkin_universality_check(std::size_t n, const GroupOptions& options = {}) {
  require(n >= 2, "needs at least two wires");
  const Alphabet bin(2);
  const auto lc = WeightHom::letter_count(bin);
  const Gate swap = wire_swap(bin);
  const Gate fredkin = controlled({1}, swap);
  std::vector<Gate> gens;
  std::set<Table> seen;
  auto add = [&](const Gate& g) {
    if (seen.insert(g.table()).second) gens.push_back(g);
  };
  detail::lexicographic_layouts(2, n, [&](const std::vector<std::size_t>& l) { add(extend(swap, n, l)); });
  if (n >= 3) detail::lexicographic_layouts(3, n, [&](const std::vector<std::size_t>& l) { add(extend(fredkin, n, l)); });

  FredkinReport r;
  r.n = n;
  r.in_scope = n >= 4;
  r.generators = gens.size();
  std::vector<Gate> bases{swap};
  if (n >= 3) bases.push_back(fredkin);
  const auto span = parity_span(bases, lc, n);
  r.span_size = span.size();
  r.expected_order = TargetGroup(TargetKind::alternating_conservative, bin, n, lc).expected_order();
  GroupOptions o = options;
  o.order_bound = r.expected_order * r.span_size;
  const auto g = PermGroup::build(gens, o);
  r.group_order = g.order();
  r.even_part_order = r.group_order / r.span_size;
  r.verdict = r.even_part_order == r.expected_order;
  return r;
}

}  // namespace revforge
