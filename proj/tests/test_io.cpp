#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "smkit/gn_compiler.hpp"
#include "smkit/hn_extension.hpp"
#include "smkit/io.hpp"
#include "smkit/word_problem.hpp"

using namespace smkit;

TEST_CASE("machine files") {
  MachineFile mf = example_machine();
  CHECK(mf.name == "example");
  CHECK(mf.machine.hardware().k() == 3);
  CHECK(mf.machine.positive_rules().size() == 1);
  CHECK(mf.machine.positive_rules()[0].parts.size() == 2);

  // parse errors carry line numbers
  std::istringstream bad1("machine m\nk = 1\nY1: a\nQ1: q1\nQ1: q2\nend\n");
  try {
    read_smf(bad1, "bad.smf");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line_number == 5);
  }

  std::istringstream bad2(
      "machine m\nk = 1\nY1: a\nQ1: q1\nQ2: q2\nrule r: q1 -> a q1\nend\n");
  CHECK_THROWS_AS(read_smf(bad2, "bad2.smf"), ParseError);

  std::istringstream bad3("machine m\nk = 1\nY1: a\nQ1: q1\nQ2: q2\n");
  CHECK_THROWS_AS(read_smf(bad3, "bad3.smf"), ParseError);

  // comments and blank lines are ignored
  std::istringstream ok(
      "# header\nmachine m\n\nk = 1\nY1: a  # tape\nQ1: q1\nQ2: q2\nend\n");
  CHECK(read_smf(ok, "ok.smf").name == "m");
}

TEST_CASE("presentation files round trip") {
  auto mf = example_machine();
  GroupPresentation g = compile_gn(mf.machine, adm(mf.machine, "q1 a a q2 b q3 c c q4"),
                                   KappaParams::standard(2));
  std::ostringstream out;
  write_gp(out, g);
  std::istringstream in(out.str());
  GroupPresentation back = read_gp(in, "roundtrip.gp");

  CHECK(back.name() == g.name());
  CHECK(back.generators()->symbols() == g.generators()->symbols());
  REQUIRE(back.relators().size() == g.relators().size());
  for (std::size_t i = 0; i < g.relators().size(); ++i) {
    CHECK(back.relators()[i].orbit == g.relators()[i].orbit);
    CHECK(back.relators()[i].kind == g.relators()[i].kind);
  }
  for (const auto& [gen, tag] : g.partition().tags()) {
    auto t = back.partition().tag(gen);
    REQUIRE(t.has_value());
    CHECK(t->cls == tag.cls);
    CHECK(t->index == tag.index);
  }

  // writing twice is byte-identical
  std::ostringstream out2;
  write_gp(out2, back);
  CHECK(out.str() == out2.str());
}

TEST_CASE("profile files round trip") {
  EmbeddingProfile prof = toy_profile();
  std::ostringstream out;
  write_emb(out, prof);
  std::istringstream in(out.str());
  EmbeddingProfile back = read_emb(in, "roundtrip.emb");
  CHECK(back.a_letters == prof.a_letters);
  CHECK(back.b_letters == prof.b_letters);
  CHECK(back.alpha == prof.alpha);
  CHECK(back.zwords == prof.zwords);

  std::istringstream missing("profile p\nA: a\nB: b\nalpha: x\nend\n");
  CHECK_THROWS_AS(read_emb(missing, "missing.emb"), ParseError);
}

TEST_CASE("derivation files round trip") {
  GroupPresentation g("z2", Alphabet::make({"a", "b"}));
  g.add_relator(parse_word(g.generators(), "a b ~a ~b"), RelatorKind::User);
  SearchBudget b;
  b.max_word_len = 16;
  AreaResult r = min_area(g, parse_word(g.generators(), "a a b b ~a ~a ~b ~b"), b);
  REQUIRE(r.verdict == TrivialVerdict::Trivial);

  std::ostringstream out;
  write_drv(out, *r.derivation);
  std::istringstream in(out.str());
  Derivation back = read_drv(in, "roundtrip.drv", g.generators());
  CHECK(back.start == r.derivation->start);
  CHECK(back.end == r.derivation->end);
  REQUIRE(back.steps.size() == r.derivation->steps.size());
  CHECK(verify_derivation(g, back).ok);
}

TEST_CASE("csv output") {
  CHECK(csv_quote("plain") == "\"plain\"");
  CHECK(csv_quote("a \"q\" b") == "\"a \"\"q\"\" b\"");

  GrowthTable t;
  t.entries[1] = {0, true};
  t.entries[2] = {4, false};
  std::ostringstream out;
  write_growth_csv(out, t);
  CHECK(out.str() == "n,value,exact\n1,0,1\n2,4,0\n");

  std::vector<TrialRecord> trials(2);
  trials[0].seed = 7;
  trials[0].u = "b1 b1";
  trials[0].v = "b1 b1";
  trials[0].geodesic = 0;
  trials[0].weighted = 2;
  trials[0].holds = true;
  trials[0].completed = true;
  trials[1].completed = false;  // discarded, not exported
  std::ostringstream ts;
  write_trials_csv(ts, trials);
  CHECK(ts.str() == "seed,u,v,L,R,holds\n7,\"b1 b1\",\"b1 b1\",0,2,1\n");
}
