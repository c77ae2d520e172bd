// Acceptance suite: one line per criterion, nonzero exit on any failure.
// argv[1] must point at the command line binary (used by criterion 9).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "smkit/gn_compiler.hpp"
#include "smkit/hn_extension.hpp"
#include "smkit/io.hpp"
#include "smkit/metrics.hpp"
#include "smkit/word_problem.hpp"

using namespace smkit;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, Clock::time_point t0,
            const std::string& detail = "") {
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", pass ? "PASS" : "FAIL", number,
              name.c_str(), secs, detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

GroupPresentation lattice2() {
  GroupPresentation g("z2", Alphabet::make({"a", "b"}));
  g.add_relator(parse_word(g.generators(), "a b ~a ~b"), RelatorKind::User);
  return g;
}

// 1. worked example, byte-exact
void criterion_1() {
  auto t0 = Clock::now();
  bool pass = true;
  auto mf = example_machine();
  ApplyResult r = mf.machine.apply(adm(mf.machine, "q1 a a q2 b q3 c c q4"),
                                   RuleRef{"rule1", +1});
  pass &= std::holds_alternative<AdmissibleWord>(r) &&
          format_word(std::get<AdmissibleWord>(r).word()) == "p1 p2 b' q3 c c c q4";
  SRule inv = invert_rule(mf.machine.hardware(), mf.machine.positive_rules()[0]);
  pass &= inv.parts.size() == 2 && format_word(inv.parts[0].lhs) == "p1" &&
          format_word(inv.parts[0].rhs) == "q1 a" &&
          format_word(inv.parts[1].lhs) == "p2 b' q3" &&
          format_word(inv.parts[1].rhs) == "a q2 b q3 ~c";
  report(1, "worked example, byte-exact application and rule inverse", pass, t0);
}

// 2. 1000 randomized rule-inverse round trips with admissibility closure
void criterion_2() {
  auto t0 = Clock::now();
  std::mt19937 rng(20240601);
  int trials = 0, failures = 0;
  while (trials < 1000) {
    Hardware h = random_hardware(rng);
    AdmissibleWord w = random_admissible(h, rng);
    SRule proto = random_applicable_rule(h, w, rng, "r1");
    if (!validate_rule(h, proto).ok()) continue;
    SMachine m(h, {proto});
    ApplyResult fwd = m.apply(w, RuleRef{"r1", +1});
    if (!std::holds_alternative<AdmissibleWord>(fwd)) {
      ++failures;
      ++trials;
      continue;
    }
    const AdmissibleWord& w2 = std::get<AdmissibleWord>(fwd);
    bool closed =
        std::holds_alternative<AdmissibleWord>(parse_admissible(h, w2.word()));
    ApplyResult back = m.apply(w2, RuleRef{"r1", -1});
    bool restored = std::holds_alternative<AdmissibleWord>(back) &&
                    std::get<AdmissibleWord>(back).word() == w.word();
    if (!closed || !restored) ++failures;
    ++trials;
  }
  report(2, "rule-inverse cancellation and closure, 1000 trials", failures == 0,
         t0, failures ? std::to_string(failures) + " failures" : "0 failures");
}

// 3. compiler census and kappa length formula
void criterion_3() {
  auto t0 = Clock::now();
  bool pass = true;
  auto mf = example_machine();
  AdmissibleWord stop = adm(mf.machine, "q1 a a q2 b q3 c c q4");
  std::mt19937 rng(33);
  for (std::size_t n : {1u, 2u, 9u}) {
    KappaParams p = KappaParams::standard(n);
    GroupPresentation g = compile_gn(mf.machine, stop, p);
    std::size_t aux = 0;
    for (const auto& row : relation_census(g).rows)
      if (row.kind == RelatorKind::AuxiliaryY ||
          row.kind == RelatorKind::AuxiliaryKappa)
        aux += row.orbits;
    pass &= aux == 1 * (4 + 4 * n);
    for (int t = 0; t < 50; ++t) {
      std::vector<LetterCode> ls;
      std::size_t len = rng() % 9;
      while (ls.size() < len) {
        LetterCode c = letter_code(rng() % 4, rng() % 2 ? +1 : -1);  // tape letters
        if (!ls.empty() && ls.back() == -c) continue;
        ls.push_back(c);
      }
      Word w(g.generators(), ls);
      pass &= kappa_word(w, p, g.generators()).size() == 4 * n * (w.size() + 1);
    }
  }
  report(3, "census counts and kappa length, N in {1,2,9}", pass, t0);
}

// 4. area oracle agreement on three presentations
void criterion_4() {
  auto t0 = Clock::now();
  bool pass = true;
  std::string detail;

  auto sweep = [&](const GroupPresentation& g, const ProductOracle& oracle,
                   TrivialitySearcher& searcher) {
    for (std::size_t len = 1; len <= 8 && pass; ++len)
      for_each_reduced_word(g.generators(), len, [&](const Word& w) {
        auto expect = oracle.min_area(w);
        AreaResult got = searcher.decide(w);
        bool ok = expect ? (got.verdict == TrivialVerdict::Trivial &&
                            got.exact && got.area == *expect)
                         : (got.verdict != TrivialVerdict::Trivial);
        if (!ok) {
          pass = false;
          detail = "disagreement on '" + format_word(w) + "' in " + g.name();
          return false;
        }
        return true;
      });
  };

  {
    GroupPresentation g("free2", Alphabet::make({"a", "b"}));
    ProductOracle oracle(g, 5, 2, 12);
    SearchBudget b{12, 1000000, 10000};
    TrivialitySearcher searcher(g, b);
    sweep(g, oracle, searcher);
  }
  {
    GroupPresentation g("a3", Alphabet::make({"a"}));
    g.add_relator(parse_word(g.generators(), "a a a"), RelatorKind::User);
    ProductOracle oracle(g, 5, 2, 12);
    SearchBudget b{12, 1000000, 10000};
    TrivialitySearcher searcher(g, b);
    sweep(g, oracle, searcher);
  }
  {
    GroupPresentation g = lattice2();
    ProductOracle oracle(g, 5, 3, 12);
    SearchBudget b{12, 1000000, 10000};
    TrivialitySearcher searcher(g, b);
    sweep(g, oracle, searcher);
    // the commutator powers with cap 4n+4
    for (std::size_t n = 1; n <= 3 && pass; ++n) {
      std::string as, bs, ai, bi;
      for (std::size_t i = 0; i < n; ++i) {
        as += "a ";
        bs += "b ";
        ai += "~a ";
        bi += "~b ";
      }
      Word w = parse_word(g.generators(), as + bs + ai + bi);
      SearchBudget bn{4 * n + 4, 10000000, 10000};
      AreaResult r = decide_trivial(g, w, bn);
      if (!(r.verdict == TrivialVerdict::Trivial && r.exact && r.area == n * n)) {
        pass = false;
        detail = "commutator power n=" + std::to_string(n);
      }
    }
  }
  report(4, "area agrees with the conjugated-product oracle, words up to 8", pass,
         t0, detail);
}

// 5. superlinear growth witness
void criterion_5() {
  auto t0 = Clock::now();
  GroupPresentation g("bs", Alphabet::make({"a", "t"}));
  g.add_relator(parse_word(g.generators(), "~t a t ~a ~a"), RelatorKind::User);
  ProductOracle oracle(g, 7, 3, 14);
  auto make_w = [&](int n) {
    std::string tn, tni;
    for (int i = 0; i < n; ++i) {
      tn += "t ";
      tni += "~t ";
    }
    return free_reduce(
        parse_word(g.generators(), tni + "a " + tn + "a " + tni + "~a " + tn + "~a"));
  };
  SearchBudget b{16, 6000000, 10000};
  AreaResult r1 = decide_trivial(g, make_w(1), b);
  AreaResult r2 = decide_trivial(g, make_w(2), b);
  auto o1 = oracle.min_area(make_w(1));
  auto o2 = oracle.min_area(make_w(2));
  bool pass = r1.verdict == TrivialVerdict::Trivial && r1.exact &&
              r2.verdict == TrivialVerdict::Trivial && r2.exact && o1 && o2 &&
              r1.area == *o1 && r2.area == *o2 && r2.area > 2 * r1.area;
  std::string detail = "areas " + std::to_string(r1.area) + ", " +
                       std::to_string(r2.area);
  report(5, "superlinear area growth on the exponential-growth presentation",
         pass, t0, detail);
}

// 6. constructive certificates from computations
void criterion_6() {
  auto t0 = Clock::now();
  bool pass = true;
  double worst_ratio = 0;
  const std::size_t C = 16;  // implementation constant for the area bound

  auto check = [&](const GroupPresentation& g, const SMachine& m,
                   const Computation& comp, const AdmissibleWord& stop,
                   const KappaParams& p) {
    SynthesisResult s = derive_from_computation(g, m, comp, stop, p);
    bool ok = s.derivation.end.empty() && verify_derivation(g, s.derivation).ok &&
              s.area <= C * s.bound_value;
    worst_ratio = std::max(worst_ratio, s.measured_ratio);
    pass &= ok;
  };

  // (a) empty computation: the stop word itself
  {
    std::istringstream in("machine step\nk = 0\nQ1: q q'\nrule r: q -> q'\nend\n");
    auto m = read_smf(in, "step.smf").machine;
    KappaParams p = KappaParams::standard(1);
    AdmissibleWord w0 = adm(m, "q'");
    GroupPresentation g = compile_gn(m, w0, p);
    check(g, m, Computation{w0, {}, {w0}}, w0, p);
  }
  // (b),(c) one forward step at N = 2 and N = 3
  for (std::size_t n : {2u, 3u}) {
    std::istringstream in("machine step\nk = 0\nQ1: q q'\nrule r: q -> q'\nend\n");
    auto m = read_smf(in, "step.smf").machine;
    KappaParams p = KappaParams::standard(n);
    AdmissibleWord w0 = adm(m, "q'");
    GroupPresentation g = compile_gn(m, w0, p);
    RunResult rr = run_history(m, adm(m, "q"), parse_history(m, "r"));
    check(g, m, std::get<Computation>(rr), w0, p);
  }
  // (d) the worked example machine, N = 1
  {
    auto mf = example_machine();
    KappaParams p = KappaParams::standard(1);
    AdmissibleWord w0 = adm(mf.machine, "p1 p2 b' q3 c c c q4");
    GroupPresentation g = compile_gn(mf.machine, w0, p);
    RunResult rr = run_history(mf.machine, adm(mf.machine, "q1 a a q2 b q3 c c q4"),
                               parse_history(mf.machine, "rule1"));
    check(g, mf.machine, std::get<Computation>(rr), w0, p);
  }
  // (e) a history with an inverse application, N = 1
  {
    std::istringstream in(
        "machine two\nk = 0\nQ1: q q' q''\nrule r1: q -> q'\nrule r2: q'' -> q'\nend\n");
    auto m = read_smf(in, "two.smf").machine;
    KappaParams p = KappaParams::standard(1);
    AdmissibleWord w0 = adm(m, "q''");
    GroupPresentation g = compile_gn(m, w0, p);
    RunResult rr = run_history(m, adm(m, "q"), parse_history(m, "r1 ~r2"));
    check(g, m, std::get<Computation>(rr), w0, p);
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "C = %zu, worst measured ratio %.3f", C,
                worst_ratio);
  report(6, "computations compile to verified certificates", pass, t0, buf);
}

// 7. distortion inequality harness
void criterion_7() {
  auto t0 = Clock::now();
  MachineFile mf = toy_machine();
  EmbeddingProfile prof = toy_profile();
  KappaParams p = KappaParams::standard(2);
  GroupPresentation gn = compile_gn(mf.machine, adm(mf.machine, "q1 q2 q3 q4 q5"), p);
  GroupPresentation hn = compile_hn(gn, mf.machine.hardware(), prof);
  WeightScheme s = weight_scheme(hn);
  GroupPresentation g_a("g", Alphabet::make({"a1"}));
  g_a.add_relator(parse_word(g_a.generators(), "a1 a1"), RelatorKind::User);
  GbPresentation gb = gb_presentation(g_a, prof);

  SearchBudget b{24, 100000, 10000};
  std::size_t completed = 0, violations = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    std::mt19937_64 pick(seed * 77);
    std::size_t ulen = pick() % 6;
    std::string utext;
    for (std::size_t i = 0; i < ulen; ++i) utext += (pick() % 2 ? "b1 " : "~b1 ");
    Word u = free_reduce(parse_word(hn.generators(), utext));
    TrialRecord t = distortion_trial(gb, hn, s, u, seed % 4, seed, b);
    if (!t.completed) continue;
    ++completed;
    if (!t.holds) ++violations;
  }
  bool pass = violations == 0 && completed >= 150;
  report(7, "distortion inequality holds in every completed trial", pass, t0,
         std::to_string(completed) + "/200 completed, " +
             std::to_string(violations) + " violations");
}

// 8. sigma round trip
void criterion_8() {
  auto t0 = Clock::now();
  auto mf = toy_machine();
  EmbeddingProfile prof = toy_profile();
  const AlphabetRef& al = mf.machine.hardware().alphabet();
  bool pass = format_word(sigma_word(prof, parse_word(al, "a1 a2"), al)) ==
              "q1 al al q2 a1 a2 q3 de de q4 om om q5";
  std::size_t count = 0;
  std::vector<LetterCode> cur;
  LetterCode a1 = letter_code(*al->index_of("a1"), +1);
  LetterCode a2 = letter_code(*al->index_of("a2"), +1);
  std::vector<LetterCode> pool{a1, -a1, a2, -a2};
  std::function<void()> rec = [&]() {
    Word u(al, cur);
    auto res = validate_sigma_shape(prof, sigma_word(prof, u, al));
    if (!std::holds_alternative<SigmaMatch>(res) ||
        !(std::get<SigmaMatch>(res).extracted == u))
      pass = false;
    ++count;
    if (cur.size() == 6 || !pass) return;
    for (LetterCode c : pool) {
      if (!cur.empty() && cur.back() == -c) continue;
      cur.push_back(c);
      rec();
      cur.pop_back();
    }
  };
  rec();
  report(8, "sigma words validate back to their input", pass, t0,
         std::to_string(count) + " words");
}

// 9. byte-identical CLI output across runs and thread counts
void criterion_9(const std::string& cli) {
  auto t0 = Clock::now();
  fs::path dir = fs::temp_directory_path() /
                 ("smkit-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::ofstream(dir / "example.smf") << kExampleSmf;
  std::ofstream(dir / "toy.smf") << kToySmf;
  std::ofstream(dir / "toy.emb") << kToyEmb;
  std::ofstream(dir / "z2.gp") << "presentation z2\ngens: a b\nrel[user]: a b ~a ~b\nend\n";
  std::ofstream(dir / "g_a.gp") << "presentation g\ngens: a1\nrel[user]: a1 a1\nend\n";

  const std::string ex = (dir / "example.smf").string();
  const std::string toy = (dir / "toy.smf").string();
  const std::string emb = (dir / "toy.emb").string();
  const std::string z2 = (dir / "z2.gp").string();
  const std::string ga = (dir / "g_a.gp").string();

  // every verb, with its expected exit code in the success scenario
  struct Verb {
    std::string name;
    std::string args;
    int expect_rc;
  };
  std::vector<Verb> verbs = {
      {"validate", "validate " + ex + " " + z2, 0},
      {"run", "run " + ex + " --word \"q1 a a q2 b q3 c c q4\" --history rule1", 0},
      {"search", "search " + ex + " --from \"q1 a a q2 b q3 c c q4\" --to"
                 " \"p1 p2 b' q3 c c c q4\"", 0},
      {"compile-gn", "compile-gn " + ex + " --stop \"p1 p2 b' q3 c c c q4\" --N 2", 0},
      {"compile-hn",
       "compile-hn " + toy + " --stop \"q1 q2 q3 q4 q5\" --profile " + emb + " --N 2", 0},
      {"area", "area " + z2 + " --word \"a a b b ~a ~a ~b ~b\" --budget-len 16"
               " --format json", 0},
      {"geodesic", "geodesic " + z2 + " --word \"a b a\" --budget-len 11 --format json", 0},
      {"dehn", "dehn " + z2 + " --max-n 4 --budget-len 10 --budget-nodes 400000", 0},
      {"derive", "derive " + ex + " --stop \"p1 p2 b' q3 c c c q4\" --word"
                 " \"q1 a a q2 b q3 c c q4\" --history rule1 --N 1 --format json", 0},
      {"distortion", "distortion " + toy + " --stop \"q1 q2 q3 q4 q5\" --profile " +
                     emb + " --g " + ga + " --u \"b1 b1 b1\" --trials 10"
                     " --perturb 3 --N 2 --seed 5", 0},
      {"census", "census " + z2 + " --format json", 0},
  };

  bool pass = true;
  std::string detail;
  auto run_cli = [&](const std::string& args, const fs::path& out) {
    std::string cmd =
        cli + " " + args + " > " + out.string() + " 2> /dev/null";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  for (const auto& verb : verbs) {
    std::string reference;
    bool first = true;
    for (int repeat = 0; repeat < 3 && pass; ++repeat) {
      for (int threads : {1, 4}) {
        fs::path out = dir / (verb.name + ".out");
        int rc = run_cli(verb.args + " --threads " + std::to_string(threads), out);
        if (rc != verb.expect_rc) {
          pass = false;
          detail = verb.name + " exit code " + std::to_string(rc);
          break;
        }
        std::ifstream f(out, std::ios::binary);
        std::stringstream buf;
        buf << f.rdbuf();
        if (first) {
          reference = buf.str();
          first = false;
          if (reference.empty()) {
            pass = false;
            detail = verb.name + " produced no output";
          }
        } else if (buf.str() != reference) {
          pass = false;
          detail = verb.name + " output varies";
        }
        if (!pass) break;
      }
    }
    if (!pass) break;
  }
  // negative and budget scenarios map to the documented exit codes
  if (pass) {
    fs::path out = dir / "rc.out";
    if (run_cli("area " + z2 + " --word \"a b\" --budget-len 12", out) != 1) {
      pass = false;
      detail = "negative verdict should exit 1";
    } else if (run_cli("area " + z2 + " --word \"a b\" --budget-len 12"
                       " --budget-nodes 10",
                       out) != 3) {
      pass = false;
      detail = "budget hit should exit 3";
    } else if (run_cli("validate " + (dir / "nope.smf").string(), out) != 2) {
      pass = false;
      detail = "unreadable input should exit 2";
    } else if (run_cli("search " + ex + " --from \"q1 q2 q3 q4\" --to"
                       " \"q1 a q2 q3 q4\"",
                       out) != 1) {
      pass = false;
      detail = "exhausted search should exit 1";
    }
  }
  fs::remove_all(dir);
  report(9, "every verb is byte-identical across runs and thread counts", pass,
         t0, detail);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <path-to-cli>\n");
    return 2;
  }
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9(argv[1]);
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
