// Command line front end: validate machine/presentation/profile files, run
// and search machines, compile the group presentations, and measure words.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "smkit/gn_compiler.hpp"
#include "smkit/hn_extension.hpp"
#include "smkit/io.hpp"
#include "smkit/metrics.hpp"
#include "smkit/parallel.hpp"
#include "smkit/word_problem.hpp"

using json = nlohmann::json;
using namespace smkit;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;
constexpr int kBudget = 3;

struct GlobalOpts {
  std::size_t budget_len = 0;  // 0 = per-command default
  std::uint64_t budget_nodes = 1000000;
  std::uint64_t budget_depth = 10000;
  std::size_t n_param = 0;  // 0 = machine default 9ck
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string format = "text";
  std::string out_path;
};

SearchBudget make_budget(const GlobalOpts& g, std::size_t default_len) {
  SearchBudget b;
  b.max_word_len = g.budget_len ? g.budget_len : default_len;
  b.max_nodes = g.budget_nodes;
  b.max_depth = g.budget_depth;
  return b;
}

// output goes to --out when given, stdout otherwise
int emit(const GlobalOpts& g, const std::string& text) {
  if (g.out_path.empty()) {
    std::cout << text;
    return kOk;
  }
  std::ofstream f(g.out_path, std::ios::binary);
  if (!f) {
    std::cerr << "cannot write " << g.out_path << "\n";
    return kInputError;
  }
  f << text;
  return kOk;
}

std::string verdict_name(TrivialVerdict v) {
  switch (v) {
    case TrivialVerdict::Trivial: return "trivial";
    case TrivialVerdict::NontrivialWithinCap: return "nontrivial-within-cap";
    case TrivialVerdict::BudgetHit: return "budget-hit";
  }
  return "?";
}

json steps_json(const Derivation& d) {
  json steps = json::array();
  for (const auto& s : d.steps)
    steps.push_back({{"position", s.position},
                     {"orbit", s.orbit},
                     {"shift", s.shift},
                     {"sign", s.sign}});
  return steps;
}

KappaParams pick_params(const GlobalOpts& g, const SMachine& m,
                        const AdmissibleWord& stop) {
  std::size_t n = g.n_param;
  if (!n) {
    GroupPresentation probe = compile_gn(m, stop, KappaParams::standard(1), "probe");
    Constants cs = compute_constants(probe);
    n = cs.n_default ? cs.n_default : 1;
    if (cs.degenerate)
      std::cerr << "note: no tape letters in any transition relator; "
                   "falling back to N = 9k = " << 9 * cs.k << "\n";
  }
  if (n < 9)
    std::cerr << "note: N = " << n << " is below the regime the theory assumes\n";
  return KappaParams::standard(n);
}

AdmissibleWord parse_adm_or_throw(const SMachine& m, const std::string& text) {
  Word w = parse_word(m.hardware().alphabet(), text);
  auto parsed = parse_admissible(m.hardware(), w);
  if (auto* issue = std::get_if<AdmissibleIssue>(&parsed))
    throw WordError("word '" + text + "' not admissible: " + issue->message);
  return std::get<AdmissibleWord>(parsed);
}

int cmd_validate(const GlobalOpts& g, const std::vector<std::string>& paths) {
  std::ostringstream out;
  bool violations = false;
  std::optional<MachineFile> last_machine;
  for (const std::string& path : paths) {
    auto dot = path.rfind('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot);
    if (ext == ".smf") {
      MachineFile mf = read_smf_file(path);
      Report hr = mf.machine.hardware().validate();
      out << path << ": ok (machine " << mf.name << ", k="
          << mf.machine.hardware().k() << ", rules="
          << mf.machine.positive_rules().size() << ")\n";
      last_machine = std::move(mf);
      (void)hr;  // construction already enforced it
    } else if (ext == ".gp") {
      GroupPresentation p = read_gp_file(path);
      out << path << ": ok (presentation " << p.name() << ", "
          << p.relators().size() << " relator orbits)\n";
    } else if (ext == ".emb") {
      EmbeddingProfile prof = read_emb_file(path);
      Report rep = last_machine
                       ? prof.validate_against(last_machine->machine.hardware())
                       : prof.validate();
      if (rep.ok()) {
        out << path << ": ok (profile " << prof.name << ")\n";
      } else {
        violations = true;
        for (const auto& v : rep.violations) out << path << ": " << v << "\n";
      }
    } else {
      throw WordError("unknown file type: " + path);
    }
  }
  int rc = emit(g, out.str());
  if (rc != kOk) return rc;
  return violations ? kNegative : kOk;
}

int cmd_run(const GlobalOpts& g, const std::string& machine_path,
            const std::string& word_text, const std::string& history_text) {
  MachineFile mf = read_smf_file(machine_path);
  AdmissibleWord start = parse_adm_or_throw(mf.machine, word_text);
  std::vector<RuleRef> history = parse_history(mf.machine, history_text);
  RunResult r = run_history(mf.machine, start, history);
  if (auto* err = std::get_if<RunError>(&r)) {
    std::cerr << "step " << err->step + 1 << ": " << err->cause.message << "\n";
    return kNegative;
  }
  const Computation& comp = std::get<Computation>(r);
  std::ostringstream out;
  if (g.format == "json") {
    json j;
    j["start"] = format_word(comp.start.word());
    j["history"] = format_history(comp.history);
    json trace = json::array();
    for (const auto& w : comp.trace) trace.push_back(format_word(w.word()));
    j["trace"] = trace;
    j["length"] = comp.length();
    j["area"] = comp.area();
    j["reduced"] = comp.reduced_history();
    out << j.dump(2) << "\n";
  } else {
    out << format_word(comp.trace.back().word()) << "\n";
  }
  return emit(g, out.str());
}

int cmd_search(const GlobalOpts& g, const std::string& machine_path,
               const std::string& from_text, const std::string& to_text) {
  MachineFile mf = read_smf_file(machine_path);
  AdmissibleWord from = parse_adm_or_throw(mf.machine, from_text);
  AdmissibleWord to = parse_adm_or_throw(mf.machine, to_text);
  SearchBudget b = make_budget(
      g, SearchBudget::for_pair(from.size(), to.size()).max_word_len);
  ReachResult r = search_reachable(mf.machine, from, to, b);
  std::ostringstream out;
  if (g.format == "json") {
    json j;
    j["status"] = r.status == ReachResult::Found      ? "found"
                  : r.status == ReachResult::Exhausted ? "exhausted"
                                                       : "budget-hit";
    j["nodes_expanded"] = r.nodes_expanded;
    if (r.computation) {
      j["history"] = format_history(r.computation->history);
      j["length"] = r.computation->length();
      j["area"] = r.computation->area();
    }
    out << j.dump(2) << "\n";
  } else if (r.status == ReachResult::Found) {
    out << format_history(r.computation->history) << "\n";
  } else {
    out << (r.status == ReachResult::Exhausted ? "exhausted" : "budget-hit")
        << "\n";
  }
  int rc = emit(g, out.str());
  if (rc != kOk) return rc;
  if (r.status == ReachResult::Found) return kOk;
  return r.status == ReachResult::Exhausted ? kNegative : kBudget;
}

int cmd_compile_gn(const GlobalOpts& g, const std::string& machine_path,
                   const std::string& stop_text) {
  MachineFile mf = read_smf_file(machine_path);
  AdmissibleWord stop = parse_adm_or_throw(mf.machine, stop_text);
  KappaParams p = pick_params(g, mf.machine, stop);
  GroupPresentation gn = compile_gn(mf.machine, stop, p, mf.name + "_gn");
  std::ostringstream out;
  write_gp(out, gn);
  return emit(g, out.str());
}

int cmd_compile_hn(const GlobalOpts& g, const std::string& machine_path,
                   const std::string& stop_text, const std::string& profile_path) {
  MachineFile mf = read_smf_file(machine_path);
  AdmissibleWord stop = parse_adm_or_throw(mf.machine, stop_text);
  EmbeddingProfile prof = read_emb_file(profile_path);
  KappaParams p = pick_params(g, mf.machine, stop);
  GroupPresentation gn = compile_gn(mf.machine, stop, p, mf.name + "_gn");
  GroupPresentation hn = compile_hn(gn, mf.machine.hardware(), prof, mf.name + "_hn");
  std::ostringstream out;
  write_gp(out, hn);
  return emit(g, out.str());
}

int cmd_area(const GlobalOpts& g, const std::string& gp_path,
             const std::string& word_text) {
  GroupPresentation gp = read_gp_file(gp_path);
  Word w = parse_word(gp.generators(), word_text);
  SearchBudget b = make_budget(g, 2 * free_reduce(w).size() + 8);
  AreaResult r = min_area(gp, w, b);
  std::ostringstream out;
  if (g.format == "json") {
    json j;
    j["verdict"] = verdict_name(r.verdict);
    j["area"] = r.area;
    j["exact"] = r.exact;
    j["nodes_expanded"] = r.nodes_expanded;
    j["steps"] = r.derivation ? steps_json(*r.derivation) : json::array();
    out << j.dump(2) << "\n";
  } else if (r.verdict == TrivialVerdict::Trivial) {
    out << "area " << r.area << (r.exact ? " exact" : " upper-bound") << "\n";
  } else {
    out << verdict_name(r.verdict) << "\n";
  }
  int rc = emit(g, out.str());
  if (rc != kOk) return rc;
  if (r.verdict == TrivialVerdict::Trivial) return r.exact ? kOk : kBudget;
  return r.verdict == TrivialVerdict::NontrivialWithinCap ? kNegative : kBudget;
}

int cmd_geodesic(const GlobalOpts& g, const std::string& gp_path,
                 const std::string& word_text) {
  GroupPresentation gp = read_gp_file(gp_path);
  Word w = parse_word(gp.generators(), word_text);
  // candidate tests run on w v^-1; a tighter default cap keeps the many
  // negative decisions cheap
  SearchBudget b = make_budget(g, free_reduce(w).size() + 8);
  GeodesicResult r = geodesic_length(gp, w, b);
  std::ostringstream out;
  if (g.format == "json") {
    json j;
    j["budget_hit"] = r.budget_hit;
    j["length"] = r.length;
    j["exact"] = r.exact;
    out << j.dump(2) << "\n";
  } else if (r.budget_hit) {
    out << "budget-hit\n";
  } else {
    out << "length " << r.length << (r.exact ? " exact" : " upper-bound") << "\n";
  }
  int rc = emit(g, out.str());
  if (rc != kOk) return rc;
  if (r.budget_hit || !r.exact) return kBudget;
  return kOk;
}

int cmd_dehn(const GlobalOpts& g, const std::string& gp_path, std::size_t max_n) {
  GroupPresentation gp = read_gp_file(gp_path);
  SearchBudget b = make_budget(g, 2 * max_n + 8);
  DehnProfile p = dehn_profile(gp, max_n, b);
  std::ostringstream out;
  bool all_exact = true;
  if (g.format == "json") {
    json j = json::array();
    for (const auto& [n, e] : p.table) {
      j.push_back({{"n", n},
                   {"value", e.max_area},
                   {"exact", e.exact},
                   {"witness", e.witness}});
      all_exact = all_exact && e.exact;
    }
    out << j.dump(2) << "\n";
  } else {
    write_profile_csv(out, p);
    for (const auto& [n, e] : p.table) all_exact = all_exact && e.exact;
  }
  int rc = emit(g, out.str());
  if (rc != kOk) return rc;
  return all_exact ? kOk : kBudget;
}

int cmd_derive(const GlobalOpts& g, const std::string& machine_path,
               const std::string& stop_text, const std::string& word_text,
               const std::string& history_text) {
  MachineFile mf = read_smf_file(machine_path);
  AdmissibleWord stop = parse_adm_or_throw(mf.machine, stop_text);
  AdmissibleWord start = parse_adm_or_throw(mf.machine, word_text);
  std::vector<RuleRef> history = parse_history(mf.machine, history_text);
  RunResult rr = run_history(mf.machine, start, history);
  if (auto* err = std::get_if<RunError>(&rr)) {
    std::cerr << "step " << err->step + 1 << ": " << err->cause.message << "\n";
    return kInputError;
  }
  const Computation& comp = std::get<Computation>(rr);
  if (!(comp.trace.back() == stop)) {
    std::cerr << "computation ends at '" << format_word(comp.trace.back().word())
              << "', not at the stop word\n";
    return kInputError;
  }
  KappaParams p = pick_params(g, mf.machine, stop);
  GroupPresentation gn = compile_gn(mf.machine, stop, p, mf.name + "_gn");
  SynthesisResult s = derive_from_computation(gn, mf.machine, comp, stop, p);
  VerifyResult check = verify_derivation(gn, s.derivation);
  std::ostringstream out;
  if (g.format == "json") {
    json j;
    j["area"] = s.area;
    j["bound"] = s.bound_value;
    j["verified"] = check.ok;
    j["start"] = format_word(s.derivation.start);
    j["steps"] = steps_json(s.derivation);
    out << j.dump(2) << "\n";
  } else {
    write_drv(out, s.derivation);
  }
  int rc = emit(g, out.str());
  if (rc != kOk) return rc;
  return check.ok ? kOk : kNegative;
}

int cmd_distortion(const GlobalOpts& g, const std::string& machine_path,
                   const std::string& stop_text, const std::string& profile_path,
                   const std::string& g_path, const std::string& u_text,
                   std::size_t trials, std::size_t perturb) {
  MachineFile mf = read_smf_file(machine_path);
  AdmissibleWord stop = parse_adm_or_throw(mf.machine, stop_text);
  EmbeddingProfile prof = read_emb_file(profile_path);
  GroupPresentation g_over_a = read_gp_file(g_path);
  KappaParams p = pick_params(g, mf.machine, stop);
  GroupPresentation gn = compile_gn(mf.machine, stop, p, "gn");
  GroupPresentation hn = compile_hn(gn, mf.machine.hardware(), prof, "hn");
  GbPresentation gb = gb_presentation(g_over_a, prof);
  WeightScheme s = weight_scheme(hn);
  Word u = parse_word(hn.generators(), u_text);
  SearchBudget b = make_budget(g, 4 * (free_reduce(u).size() + 4));

  std::vector<TrialRecord> records;
  std::size_t violations = 0, completed = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    TrialRecord t = distortion_trial(gb, hn, s, u, perturb, g.seed + i, b);
    if (t.completed) {
      ++completed;
      if (!t.holds) ++violations;
    }
    records.push_back(std::move(t));
  }
  std::ostringstream out;
  if (g.format == "json") {
    json j;
    j["trials"] = trials;
    j["completed"] = completed;
    j["violations"] = violations;
    json rows = json::array();
    for (const auto& t : records) {
      if (!t.completed) continue;
      rows.push_back({{"seed", t.seed},
                      {"u", t.u},
                      {"v", t.v},
                      {"L", t.geodesic},
                      {"R", t.weighted},
                      {"holds", t.holds}});
    }
    j["records"] = rows;
    out << j.dump(2) << "\n";
  } else {
    write_trials_csv(out, records);
  }
  int rc = emit(g, out.str());
  if (rc != kOk) return rc;
  return violations == 0 ? kOk : kNegative;
}

int cmd_census(const GlobalOpts& g, const std::string& gp_path) {
  GroupPresentation gp = read_gp_file(gp_path);
  Census census = relation_census(gp);
  std::ostringstream out;
  if (g.format == "json") {
    json j;
    json rows = json::array();
    for (const auto& row : census.rows)
      rows.push_back({{"kind", relator_kind_name(row.kind)},
                      {"orbits", row.orbits},
                      {"expanded", row.expanded},
                      {"max_length", row.max_length}});
    j["relators"] = rows;
    j["total_orbits"] = census.total_orbits;
    j["generators_per_class"] = census.generators_per_class;
    out << j.dump(2) << "\n";
  } else {
    out << "kind,orbits,expanded,max_length\n";
    for (const auto& row : census.rows)
      out << relator_kind_name(row.kind) << ',' << row.orbits << ','
          << row.expanded << ',' << row.max_length << "\n";
    out << "total," << census.total_orbits << ",,\n";
  }
  return emit(g, out.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rewriting machines, their group presentations, and word measurements"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--budget-len", g.budget_len, "word length cap (0 = default)");
  app.add_option("--budget-nodes", g.budget_nodes, "search node budget");
  app.add_option("--budget-depth", g.budget_depth, "search depth budget");
  app.add_option("--N", g.n_param, "kappa parameter N (0 = machine default 9ck)");
  app.add_option("--seed", g.seed, "base random seed");
  app.add_option("--threads", g.threads, "worker cap for searches");
  app.add_option("--format", g.format, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--out", g.out_path, "write output to this file");

  std::vector<std::string> paths;
  std::string machine_path, gp_path, profile_path, g_path;
  std::string word_text, history_text, from_text, to_text, stop_text, u_text;
  std::size_t max_n = 4, trials = 100, perturb = 3;

  auto* validate = app.add_subcommand("validate", "check input files");
  validate->add_option("paths", paths, "files to check")->required();

  auto* run = app.add_subcommand("run", "apply a rule history to a word");
  run->add_option("machine", machine_path)->required();
  run->add_option("--word", word_text)->required();
  run->add_option("--history", history_text)->required();

  auto* search = app.add_subcommand("search", "breadth-first reachability");
  search->add_option("machine", machine_path)->required();
  search->add_option("--from", from_text)->required();
  search->add_option("--to", to_text)->required();

  auto* cgn = app.add_subcommand("compile-gn", "machine to group presentation");
  cgn->add_option("machine", machine_path)->required();
  cgn->add_option("--stop", stop_text)->required();

  auto* chn = app.add_subcommand("compile-hn", "extended presentation with rho, d, B");
  chn->add_option("machine", machine_path)->required();
  chn->add_option("--stop", stop_text)->required();
  chn->add_option("--profile", profile_path)->required();

  auto* area = app.add_subcommand("area", "minimal relator insertions to the identity");
  area->add_option("presentation", gp_path)->required();
  area->add_option("--word", word_text)->required();

  auto* geo = app.add_subcommand("geodesic", "word length in the group");
  geo->add_option("presentation", gp_path)->required();
  geo->add_option("--word", word_text)->required();

  auto* dehn = app.add_subcommand("dehn", "max area per word length");
  dehn->add_option("presentation", gp_path)->required();
  dehn->add_option("--max-n", max_n)->required();

  auto* derive = app.add_subcommand("derive", "certificate from a computation");
  derive->add_option("machine", machine_path)->required();
  derive->add_option("--stop", stop_text)->required();
  derive->add_option("--word", word_text)->required();
  derive->add_option("--history", history_text)->required();

  auto* dist = app.add_subcommand("distortion", "seeded length-distortion trials");
  dist->add_option("machine", machine_path)->required();
  dist->add_option("--stop", stop_text)->required();
  dist->add_option("--profile", profile_path)->required();
  dist->add_option("--g", g_path, "presentation of the embedded group over A")
      ->required();
  dist->add_option("--u", u_text, "word over B")->required();
  dist->add_option("--trials", trials);
  dist->add_option("--perturb", perturb);

  auto* census = app.add_subcommand("census", "relator statistics");
  census->add_option("presentation", gp_path)->required();

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough(true);

  CLI11_PARSE(app, argc, argv);
  set_thread_count(g.threads);

  try {
    if (*validate) return cmd_validate(g, paths);
    if (*run) return cmd_run(g, machine_path, word_text, history_text);
    if (*search) return cmd_search(g, machine_path, from_text, to_text);
    if (*cgn) return cmd_compile_gn(g, machine_path, stop_text);
    if (*chn) return cmd_compile_hn(g, machine_path, stop_text, profile_path);
    if (*area) return cmd_area(g, gp_path, word_text);
    if (*geo) return cmd_geodesic(g, gp_path, word_text);
    if (*dehn) return cmd_dehn(g, gp_path, max_n);
    if (*derive)
      return cmd_derive(g, machine_path, stop_text, word_text, history_text);
    if (*dist)
      return cmd_distortion(g, machine_path, stop_text, profile_path, g_path,
                            u_text, trials, perturb);
    if (*census) return cmd_census(g, gp_path);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
