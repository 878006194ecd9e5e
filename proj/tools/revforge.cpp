#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "repro.hpp"
#include "revforge/revforge.hpp"

using namespace revforge;

namespace {

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kUsage = 2;
constexpr int kCap = 3;

#ifndef REVFORGE_FIXTURE_DIR
#define REVFORGE_FIXTURE_DIR "tests/fixtures"
#endif

struct Common {
  bool json = false;
  std::size_t threads = 0;
  std::size_t degree_cap = 4096;
};

std::size_t thread_count(const Common& c) {
  if (c.threads) return c.threads;
  if (const char* env = std::getenv("REVFORGE_THREADS")) {
    try {
      const auto v = std::stoul(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
      throw InvalidArgument("REVFORGE_THREADS must be a positive integer");
    }
  }
  return 1;
}

Gate load_gate(const std::string& path) { return gate_from_json(read_json_file(path)); }

// A builtin hom name, or a JSON file with the custom form.
WeightHom load_hom(const std::string& spec, const Alphabet& alphabet) {
  if (std::filesystem::exists(spec)) return hom_from_json(read_json_file(spec), alphabet);
  return hom_from_json(nlohmann::json(spec), alphabet);
}

std::vector<WordIndex> parse_words(const std::string& list, const Alphabet& a, std::size_t n) {
  std::vector<WordIndex> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    require(item.size() == n, "word \"" + item + "\" does not have length " + std::to_string(n));
    out.push_back(encode_word(word_from_string(item, a), a));
  }
  return out;
}

void emit(const Common& c, const nlohmann::json& j, const std::string& text) {
  if (c.json) std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

std::string join_cycle_type(const Gate& g) {
  std::vector<std::size_t> lengths;
  for (const auto& cyc : cycles(g)) lengths.push_back(cyc.size());
  std::sort(lengths.rbegin(), lengths.rend());
  std::string s;
  for (auto l : lengths) s += (s.empty() ? "" : ",") + std::to_string(l);
  return s.empty() ? "-" : s;
}

void write_or_print(const std::optional<std::string>& out, const std::string& text) {
  if (out) write_text_file(*out, text);
  else std::cout << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"revforge: reversible gate sets over finite alphabets"};
  app.require_subcommand(1);
  Common common;
  app.add_flag("--json", common.json, "Print JSON instead of text");
  app.add_option("--threads", common.threads, "Worker threads (fallback: REVFORGE_THREADS)");
  app.add_option("--degree-cap", common.degree_cap, "Largest permutation degree accepted");

  std::function<int()> action;

  // classify
  auto* classify = app.add_subcommand("classify", "Describe a gate: parity, cycle type, conservation");
  std::string cl_circuit, cl_hom;
  classify->add_option("--circuit", cl_circuit, "Gate or circuit JSON")->required();
  classify->add_option("--hom", cl_hom, "Weight hom (name or JSON file)");
  classify->callback([&] {
    action = [&] {
      const Gate g = load_gate(cl_circuit);
      nlohmann::json j{{"alphabet", g.alphabet().size()},
                       {"arity", g.arity()},
                       {"degree", g.degree()},
                       {"identity", g.is_identity()},
                       {"parity", parity(g) ? "odd" : "even"},
                       {"cycle_type", join_cycle_type(g)},
                       {"wire_permutation", detail::as_wire_permutation(g).has_value()}};
      std::ostringstream t;
      t << "alphabet: " << g.alphabet().size() << "\narity: " << g.arity() << "\nparity: " << j["parity"].get<std::string>()
        << "\ncycle type: " << j["cycle_type"].get<std::string>()
        << "\nwire permutation: " << (j["wire_permutation"].get<bool>() ? "true" : "false") << "\n";
      if (!cl_hom.empty()) {
        const auto h = load_hom(cl_hom, g.alphabet());
        const bool cons = is_conservative(g, h);
        j["conservative"] = cons;
        t << "conservative (" << h.name() << "): " << (cons ? "true" : "false") << "\n";
        if (cons) {
          const auto psi = parity_sequence(g, h).to_string();
          j["parity_sequence"] = psi;
          t << "parity sequence: " << psi << "\n";
        }
      }
      emit(common, j, t.str());
      return kOk;
    };
  });

  // check-conservative
  auto* check = app.add_subcommand("check-conservative", "Does the gate preserve the weight hom?");
  std::string ck_circuit, ck_hom = "letter_count";
  check->add_option("--circuit", ck_circuit, "Gate or circuit JSON")->required();
  check->add_option("--hom", ck_hom, "Weight hom (name or JSON file)");
  check->callback([&] {
    action = [&] {
      const Gate g = load_gate(ck_circuit);
      const bool cons = is_conservative(g, load_hom(ck_hom, g.alphabet()));
      emit(common, {{"conservative", cons}}, std::string("conservative: ") + (cons ? "true" : "false") + "\n");
      return cons ? kOk : kFalse;
    };
  });

  // parity-seq
  auto* pseq = app.add_subcommand("parity-seq", "Parity sequence of a conservative gate, applied at width n");
  std::string ps_circuit, ps_hom = "letter_count";
  std::size_t ps_width = 0;
  pseq->add_option("--circuit", ps_circuit, "Gate or circuit JSON")->required();
  pseq->add_option("--hom", ps_hom, "Weight hom (name or JSON file)");
  pseq->add_option("--width", ps_width, "Width to extend to (default: the gate's arity)");
  pseq->callback([&] {
    action = [&] {
      const Gate g = load_gate(ps_circuit);
      const auto h = load_hom(ps_hom, g.alphabet());
      const std::size_t n = ps_width ? ps_width : g.arity();
      const auto psi = applied_parity(g, h, n).to_string();
      emit(common, {{"width", n}, {"parity_sequence", psi}}, psi + "\n");
      return kOk;
    };
  });

  // parity-span
  auto* pspan = app.add_subcommand("parity-span", "Span of the generators' parity sequences at width n");
  std::vector<std::string> sp_circuits;
  std::string sp_hom = "letter_count";
  std::size_t sp_width = 0;
  pspan->add_option("--circuit", sp_circuits, "Generator gate JSON (repeatable)")->required();
  pspan->add_option("--hom", sp_hom, "Weight hom (name or JSON file)");
  pspan->add_option("--width", sp_width, "Width")->required();
  pspan->callback([&] {
    action = [&] {
      std::vector<Gate> gens;
      for (const auto& p : sp_circuits) gens.push_back(load_gate(p));
      const auto h = load_hom(sp_hom, gens.front().alphabet());
      const auto span = parity_span(gens, h, sp_width);
      nlohmann::json els = nlohmann::json::array();
      std::ostringstream t;
      t << "rank: " << span.rank() << "\nsize: " << span.size() << "\n";
      if (span.rank() <= 12)
        for (const auto& e : span.elements()) {
          els.push_back(e.to_string());
          t << e.to_string() << "\n";
        }
      emit(common, {{"rank", span.rank()}, {"size", span.size()}, {"elements", els}}, t.str());
      return kOk;
    };
  });

  // witness
  auto* wit = app.add_subcommand("witness", "A class swap whose parity sequence lies outside the span");
  std::vector<std::string> wi_circuits;
  std::string wi_hom = "letter_count";
  std::size_t wi_width = 0, wi_alphabet = 2;
  wit->add_option("--circuit", wi_circuits, "Generator gate JSON (repeatable)");
  wit->add_option("--hom", wi_hom, "Weight hom (name or JSON file)");
  wit->add_option("--alphabet", wi_alphabet, "Alphabet size when no generators are given");
  wit->add_option("--width", wi_width, "Width")->required();
  wit->callback([&] {
    action = [&] {
      std::vector<Gate> gens;
      for (const auto& p : wi_circuits) gens.push_back(load_gate(p));
      const Alphabet a = gens.empty() ? Alphabet(wi_alphabet) : gens.front().alphabet();
      const auto h = load_hom(wi_hom, a);
      const auto w = find_nonmember_witness(gens, h, wi_width);
      if (!w) {
        emit(common, {{"witness", nullptr}}, "no witness: the span holds every class swap\n");
        return kFalse;
      }
      const auto first = word_to_string(w->first, a, wi_width), second = word_to_string(w->second, a, wi_width);
      emit(common,
           {{"witness", {{"swap", {first, second}}, {"class", w->class_id}, {"parity_sequence", w->parity.to_string()}}}},
           "witness: (" + first + " " + second + ") in class " + std::to_string(w->class_id) +
               "\nparity sequence: " + w->parity.to_string() + "\n");
      return kOk;
    };
  });

  // components
  auto* comp = app.add_subcommand("components", "Connected components of a word graph on A^n");
  std::string co_kind = "G2", co_hom;
  std::size_t co_alphabet = 2, co_width = 0, co_m = 0;
  bool co_csv = false;
  comp->add_option("--kind", co_kind, "G1, G2, G3, G4, G2phi or G4phi");
  comp->add_option("--alphabet", co_alphabet, "Alphabet size");
  comp->add_option("--width", co_width, "Word length n")->required();
  comp->add_option("--hom", co_hom, "Weight hom for the φ kinds (name or JSON file)");
  comp->add_option("--m", co_m, "Window length for the φ kinds");
  comp->add_flag("--csv", co_csv, "Print the component census as CSV");
  comp->callback([&] {
    action = [&] {
      const Alphabet a(co_alphabet);
      std::optional<WeightHom> h;
      if (!co_hom.empty()) h = load_hom(co_hom, a);
      const EdgeFamily f(graph_kind_from_string(co_kind), a, co_width, h, co_m);
      if (word_count(a, co_width) > (std::size_t{1} << 26)) throw ResourceCapExceeded("graph too large");
      const auto p = components(f);
      const auto& ref = f.hom();
      nlohmann::json j{{"graph", f.name()}, {"components", p.count()}, {"sizes", p.sizes()}};
      std::ostringstream t;
      t << f.name() << ": " << p.count() << " components\n";
      if (ref) {
        const bool match = matches_weight_classes(p, *ref);
        j["matches_weight_classes"] = match;
        t << "matches " << ref->name() << " classes: " << (match ? "true" : "false") << "\n";
      }
      if (co_csv) {
        std::cout << component_csv(p, ref ? *ref : WeightHom::length(a));
        return kOk;
      }
      emit(common, j, t.str());
      return kOk;
    };
  });

  // minimal-m
  auto* minm = app.add_subcommand("minimal-m", "Smallest window m whose φ-graph components are the weight classes");
  std::string mm_hom = "letter_count", mm_kind = "G4phi";
  std::size_t mm_alphabet = 2, mm_nmin = 1, mm_nmax = 6;
  minm->add_option("--hom", mm_hom, "Weight hom (name or JSON file)");
  minm->add_option("--alphabet", mm_alphabet, "Alphabet size");
  minm->add_option("--kind", mm_kind, "G2phi or G4phi");
  minm->add_option("--n-min", mm_nmin, "Smallest word length checked");
  minm->add_option("--n-max", mm_nmax, "Largest word length checked");
  minm->callback([&] {
    action = [&] {
      const auto h = load_hom(mm_hom, Alphabet(mm_alphabet));
      const auto r = minimal_m(h, graph_kind_from_string(mm_kind), mm_nmin, mm_nmax);
      nlohmann::json fails = nlohmann::json::array();
      for (auto [m, n] : r.failures) fails.push_back({{"m", m}, {"n", n}});
      emit(common, {{"m", r.m}, {"failures", fails}}, "m = " + std::to_string(r.m) + "\n");
      return kOk;
    };
  });

  // gen-test
  auto* gen = app.add_subcommand("gen-test", "Does a controlled family generate the target group?");
  std::string gt_family, gt_target = "full", gt_hom, gt_theorem;
  std::vector<std::string> gt_circuits;
  std::size_t gt_controls = 0, gt_alphabet = 2, gt_width = 0, gt_m = 0, gt_max = 4096;
  bool gt_timing = false;
  gen->add_option("--family", gt_family, "P1, P2, P2phi, P3, P4 or P4phi");
  gen->add_option("--circuit", gt_circuits, "Custom base gates (repeatable), used instead of --family");
  gen->add_option("--theorem", gt_theorem, "AltFiniteGen, FullFiniteGen_odd, AltCons or AltPhiCons");
  gen->add_option("--controls", gt_controls, "Number of control wires k in CP(k, P)");
  gen->add_option("--alphabet", gt_alphabet, "Alphabet size");
  gen->add_option("--width", gt_width, "Arity n of the target layer")->required();
  gen->add_option("--target", gt_target, "full, alternating, conservative or alternating_conservative");
  gen->add_option("--hom", gt_hom, "Weight hom (name or JSON file)");
  gen->add_option("--m", gt_m, "Factor length for P2phi / P4phi");
  gen->add_option("--max-generators", gt_max, "Generators handed to the group builder up front");
  gen->add_flag("--timing", gt_timing, "Include wall-clock time");
  gen->callback([&] {
    action = [&] {
      GenerationOptions opts;
      opts.max_generators = gt_max;
      opts.group.degree_cap = common.degree_cap;
      if (!gt_theorem.empty()) {
        const Alphabet a(gt_alphabet);
        std::optional<WeightHom> h;
        if (!gt_hom.empty()) h = load_hom(gt_hom, a);
        const auto r = reproduce_theorem(theorem_from_string(gt_theorem), a, gt_width, h, opts);
        std::ostringstream t;
        t << "theorem: " << gt_theorem << "\nverdict: " << (r.passed() ? "yes" : "no")
          << "\nexpected order: " << r.report.expected_order << "\nachieved order: " << r.report.achieved_order << "\n";
        if (r.lifted_only) t << "lifted cycles alone: " << (r.lifted_only->verdict ? "yes" : "no") << "\n";
        emit(common, r.to_json(gt_timing), t.str());
        return r.passed() ? kOk : kFalse;
      }
      std::vector<Gate> base;
      Alphabet a(gt_alphabet);
      if (!gt_circuits.empty()) {
        for (const auto& p : gt_circuits) base.push_back(load_gate(p));
        a = base.front().alphabet();
        base = custom_family(base).gates;
      } else {
        require(!gt_family.empty(), "give --family, --circuit or --theorem");
        std::optional<WeightHom> fh;
        if (!gt_hom.empty()) fh = load_hom(gt_hom, a);
        base = family(gt_family, a, fh, gt_m).gates;
      }
      const auto kind = target_kind_from_string(gt_target);
      std::optional<WeightHom> th;
      if (kind == TargetKind::conservative || kind == TargetKind::alternating_conservative)
        th = load_hom(gt_hom.empty() ? "letter_count" : gt_hom, a);
      const GeneratorSource src = [&](const std::function<void(std::span<const WordIndex>)>& visit) {
        for_each_controlled(base, gt_controls, gt_width, [&](const ControlledView& v) { visit(v.table); });
      };
      const auto r = generates_target(src, TargetGroup(kind, a, gt_width, th), opts);
      std::ostringstream t;
      t << "target: " << gt_target << "\nverdict: " << (r.verdict ? "yes" : "no") << "\nexpected order: " << r.expected_order
        << "\nachieved order: " << r.achieved_order << "\ngenerators: " << r.census.candidates << " candidates, "
        << r.census.distinct << " distinct, " << r.census.used << " used\n";
      if (!r.reason.empty()) t << "reason: " << r.reason << "\n";
      emit(common, r.to_json(gt_timing), t.str());
      return r.verdict ? kOk : kFalse;
    };
  });

  // family
  auto* fam = app.add_subcommand("family", "List a base family, or CP(k, P) placed on n wires");
  std::string fa_name, fa_hom;
  std::size_t fa_alphabet = 2, fa_m = 0, fa_controls = 0, fa_width = 0;
  fam->add_option("--family", fa_name, "P1, P2, P2phi, P3, P4 or P4phi")->required();
  fam->add_option("--alphabet", fa_alphabet, "Alphabet size");
  fam->add_option("--hom", fa_hom, "Weight hom for the φ families");
  fam->add_option("--m", fa_m, "Factor length for the φ families");
  fam->add_option("--controls", fa_controls, "Controls k");
  fam->add_option("--width", fa_width, "Place CP(k, P) on this many wires");
  fam->callback([&] {
    action = [&] {
      const Alphabet a(fa_alphabet);
      std::optional<WeightHom> h;
      if (!fa_hom.empty()) h = load_hom(fa_hom, a);
      const auto f = family(fa_name, a, h, fa_m);
      nlohmann::json members = nlohmann::json::array();
      std::ostringstream t;
      if (fa_width) {
        const auto placed = controlled_placements(f.gates, fa_controls, fa_width);
        for (const auto& g : placed) members.push_back(placed_gate_to_json(g));
        t << "CP(" << fa_controls << ", " << fa_name << ") on " << fa_width << " wires: " << placed.size() << " gates\n";
      } else {
        for (const auto& g : f.gates) {
          members.push_back(perm_to_json(g));
          t << perm_to_json(g).dump() << "\n";
        }
        t << f.gates.size() << " gates\n";
      }
      emit(common, {{"family", fa_name}, {"count", members.size()}, {"members", members}}, t.str());
      return kOk;
    };
  });

  // lower-control
  auto* lower = app.add_subcommand("lower-control", "Eight 1-controlled cycles for a 2-controlled 3-cycle");
  std::size_t lo_alphabet = 2, lo_width = 0;
  std::string lo_control, lo_cycle, lo_class;
  std::optional<std::string> lo_out;
  bool lo_render = false;
  lower->add_option("--alphabet", lo_alphabet, "Alphabet size");
  lower->add_option("--width", lo_width, "Length n of the cycled words")->required();
  lower->add_option("--control", lo_control, "Two-symbol control word, e.g. 01")->required();
  lower->add_option("--cycle", lo_cycle, "Three words x,y,z")->required();
  lower->add_option("--class", lo_class, "Words of the class X (default: the letter-count class of x)");
  lower->add_option("--out", lo_out, "Write the circuit JSON here");
  lower->add_flag("--render", lo_render, "Print a diagram");
  lower->callback([&] {
    action = [&] {
      const Alphabet a(lo_alphabet);
      const auto w = word_from_string(lo_control, a);
      const auto xyz = parse_words(lo_cycle, a, lo_width);
      require(xyz.size() == 3, "--cycle needs three words");
      std::vector<WordIndex> X;
      if (!lo_class.empty()) {
        X = parse_words(lo_class, a, lo_width);
      } else {
        const WeightPartition p(WeightHom::letter_count(a), lo_width);
        X = p.members()[p.class_of(xyz[0])];
      }
      const auto c = lower_control(w, xyz[0], xyz[1], xyz[2], X, a, lo_width);
      const bool ok = verify_circuit(c, controlled(w, Gate::from_cycles(a, lo_width, {xyz})));
      if (lo_render) std::cout << render_circuit(c);
      write_or_print(lo_out, dump_canonical(circuit_to_json(c)));
      if (!common.json) std::cerr << "verified: " << (ok ? "true" : "false") << "\n";
      return ok ? kOk : kFalse;
    };
  });

  // lift-control
  auto* lift = app.add_subcommand("lift-control", "Prefix every control word of a circuit");
  std::string li_circuit, li_prefix;
  std::optional<std::string> li_out;
  bool li_render = false;
  lift->add_option("--circuit", li_circuit, "Circuit JSON")->required();
  lift->add_option("--prefix", li_prefix, "Word u to prefix")->required();
  lift->add_option("--out", li_out, "Write the circuit JSON here");
  lift->add_flag("--render", li_render, "Print a diagram");
  lift->callback([&] {
    action = [&] {
      const Circuit c = circuit_from_json(read_json_file(li_circuit));
      const auto lifted = lift_control(c, word_from_string(li_prefix, c.alphabet()));
      if (li_render) std::cout << render_circuit(lifted);
      write_or_print(li_out, dump_canonical(circuit_to_json(lifted)));
      return kOk;
    };
  });

  // synthesize
  auto* syn = app.add_subcommand("synthesize", "Shortest circuit for a target from a gate library");
  std::string sy_problem, sy_mode;
  std::optional<std::size_t> sy_depth, sy_bound;
  std::size_t sy_memory = 2048;
  std::optional<std::string> sy_out;
  bool sy_render = false;
  syn->add_option("--problem", sy_problem, "Problem JSON")->required();
  syn->add_option("--mode", sy_mode, "find_any, find_shortest or prove_no_shorter");
  syn->add_option("--max-depth", sy_depth, "Longest circuit searched");
  syn->add_option("--bound", sy_bound, "prove_no_shorter: rule out lengths below this");
  syn->add_option("--memory-mb", sy_memory, "Memory budget for the search frontiers");
  syn->add_option("--out", sy_out, "Write the result JSON here");
  syn->add_flag("--render", sy_render, "Print a diagram of the circuit");
  syn->callback([&] {
    action = [&] {
      auto p = problem_from_json(read_json_file(sy_problem));
      if (!sy_mode.empty()) p.mode = search_mode_from_string(sy_mode);
      if (sy_depth) p.max_depth = *sy_depth;
      if (sy_bound) p.bound = *sy_bound;
      p.memory_mb = sy_memory;
      p.threads = thread_count(common);
      p.degree_cap = common.degree_cap;
      const auto r = synthesize(p);
      if (sy_out) write_text_file(*sy_out, dump_canonical(r.to_json()));
      std::ostringstream t;
      if (r.found) {
        t << "length: " << r.length() << "\nverified: " << (r.verified ? "true" : "false") << "\n";
        if (sy_render) t << render_circuit(*r.circuit);
      } else {
        t << "unsat: no circuit of length <= " << r.exhausted_depth << (r.unreachable ? " (target not generated)" : "")
          << "\n";
      }
      t << "nodes expanded: " << r.nodes_expanded << "\n";
      emit(common, r.to_json(), t.str());
      if (p.mode == SearchMode::prove_no_shorter) return r.proved() ? kOk : kFalse;
      return r.found ? kOk : kFalse;
    };
  });

  // verify
  auto* ver = app.add_subcommand("verify", "Does the circuit denote the target exactly?");
  std::string ve_circuit, ve_target;
  bool ve_render = false;
  ver->add_option("--circuit", ve_circuit, "Circuit JSON")->required();
  ver->add_option("--target", ve_target, "Target gate or circuit JSON")->required();
  ver->add_flag("--render", ve_render, "Print a diagram");
  ver->callback([&] {
    action = [&] {
      const Circuit c = circuit_from_json(read_json_file(ve_circuit));
      const Gate target = load_gate(ve_target);
      require(target.arity() == c.width() && target.alphabet() == c.alphabet(), "circuit and target are incompatible");
      const bool ok = verify_circuit(c, target);
      if (ve_render) std::cout << render_circuit(c);
      emit(common, {{"verified", ok}, {"gates", c.size()}},
           std::string("verified: ") + (ok ? "true" : "false") + "\ngates: " + std::to_string(c.size()) + "\n");
      return ok ? kOk : kFalse;
    };
  });

  // repro
  auto* rep = app.add_subcommand("repro", "Re-run every pinned claim and compare");
  bool re_all = false, re_update = false, re_list = false;
  std::vector<std::string> re_names;
  std::string re_dir = REVFORGE_FIXTURE_DIR;
  std::size_t re_memory = 2048;
  rep->add_flag("--all", re_all, "Run every claim");
  rep->add_option("--name", re_names, "Run only this claim (repeatable)");
  rep->add_flag("--list", re_list, "List claim names");
  rep->add_option("--fixture-dir", re_dir, "Directory with repro_expected.json and stored circuits");
  rep->add_flag("--update-fixtures", re_update, "Overwrite stored circuits with fresh search results");
  rep->add_option("--memory-mb", re_memory, "Memory budget for searches");
  rep->callback([&] {
    action = [&] {
      repro::Options o{re_dir, thread_count(common), re_memory, re_update};
      if (re_list) {
        for (const auto& c : repro::claims(o)) std::cout << c.name << "\n";
        return kOk;
      }
      require(re_all || !re_names.empty(), "give --all or --name");
      std::map<std::string, std::string> expected;
      const auto path = std::filesystem::path(re_dir) / "repro_expected.json";
      if (std::filesystem::exists(path)) expected = read_json_file(path.string()).get<std::map<std::string, std::string>>();
      const auto results = repro::run(o, expected, re_all ? std::vector<std::string>{} : re_names);
      require(!results.empty(), "no claim matches the given names");
      bool all = true;
      nlohmann::json arr = nlohmann::json::array();
      std::ostringstream t;
      for (const auto& r : results) {
        all = all && r.passed;
        arr.push_back({{"name", r.name}, {"expected", r.expected}, {"actual", r.actual}, {"passed", r.passed}});
        t << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.actual;
        if (!r.passed) t << " (expected: " << (r.expected.empty() ? "<none>" : r.expected) << ")";
        t << "\n";
      }
      t << (all ? "all claims reproduced\n" : "some claims did not reproduce\n");
      emit(common, {{"claims", arr}, {"passed", all}}, t.str());
      return all ? kOk : kFalse;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  try {
    return action();
  } catch (const ResourceCapExceeded& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kCap;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
