#pragma once

#include <random>
#include <sstream>
#include <string>

#include "smkit/io.hpp"

// The running example machine used across the suites: three tape components,
// two-state first and second components, and the two-part rewriting rule.
inline const char* kExampleSmf =
    "machine example\n"
    "k = 3\n"
    "Y1: a\n"
    "Y2: b b'\n"
    "Y3: c\n"
    "Q1: q1 p1\n"
    "Q2: q2 p2\n"
    "Q3: q3\n"
    "Q4: q4\n"
    "rule rule1: q1 -> p1 ~a ; q2 b q3 -> ~a p2 b' q3 c\n"
    "end\n";

inline smkit::MachineFile example_machine() {
  std::istringstream in(kExampleSmf);
  return smkit::read_smf(in, "example.smf");
}

// A small machine whose tape letters carry an embedded two-letter alphabet
// plus the three marker letters, one state letter per component.
inline const char* kToySmf =
    "machine toy\n"
    "k = 4\n"
    "Y1: al\n"
    "Y2: a1 a2\n"
    "Y3: de\n"
    "Y4: om\n"
    "Q1: q1\n"
    "Q2: q2\n"
    "Q3: q3\n"
    "Q4: q4\n"
    "Q5: q5\n"
    "rule grow: q1 -> q1 al\n"
    "end\n";

inline const char* kToyEmb =
    "profile toy\n"
    "A: a1 a2\n"
    "B: b1 b2\n"
    "alpha: al\n"
    "delta: de\n"
    "omega: om\n"
    "z0: q1\n"
    "z1: q2\n"
    "z2: q3\n"
    "z3: q4\n"
    "z4: q5\n"
    "end\n";

inline smkit::MachineFile toy_machine() {
  std::istringstream in(kToySmf);
  return smkit::read_smf(in, "toy.smf");
}

inline smkit::EmbeddingProfile toy_profile() {
  std::istringstream in(kToyEmb);
  return smkit::read_emb(in, "toy.emb");
}

inline smkit::AdmissibleWord adm(const smkit::SMachine& m, const std::string& text) {
  auto parsed = smkit::parse_admissible(
      m.hardware(), smkit::parse_word(m.hardware().alphabet(), text));
  if (auto* issue = std::get_if<smkit::AdmissibleIssue>(&parsed))
    throw std::runtime_error("fixture word not admissible: " + issue->message);
  return std::get<smkit::AdmissibleWord>(parsed);
}

// ---------------------------------------------------------------------------
// randomized machine/word/rule generation (deterministic per seed)
// ---------------------------------------------------------------------------

inline smkit::Hardware random_hardware(std::mt19937& rng) {
  std::uniform_int_distribution<std::size_t> kd(1, 3);
  std::uniform_int_distribution<int> coin(0, 1);
  std::size_t k = kd(rng);
  std::vector<std::vector<std::string>> tapes(k), states(k + 1);
  for (std::size_t i = 0; i < k; ++i) {
    tapes[i].push_back("y" + std::to_string(i + 1) + "a");
    if (coin(rng)) tapes[i].push_back("y" + std::to_string(i + 1) + "b");
    if (i > 0 && coin(rng)) tapes[i].push_back(tapes[i - 1][0]);  // overlap
  }
  for (std::size_t i = 0; i <= k; ++i) {
    states[i].push_back("s" + std::to_string(i + 1) + "a");
    if (coin(rng)) states[i].push_back("s" + std::to_string(i + 1) + "b");
  }
  return smkit::Hardware(std::move(tapes), std::move(states));
}

inline smkit::Word random_reduced_over(const smkit::Hardware& h, std::size_t segment,
                                       std::size_t max_len, std::mt19937& rng) {
  std::vector<smkit::LetterCode> pool;
  for (std::uint32_t i = 0; i < h.alphabet()->size(); ++i)
    if (h.tape_member(segment, i)) {
      pool.push_back(smkit::letter_code(i, +1));
      pool.push_back(smkit::letter_code(i, -1));
    }
  std::vector<smkit::LetterCode> out;
  if (pool.empty()) return smkit::Word(h.alphabet());
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::size_t n = len(rng);
  while (out.size() < n) {
    smkit::LetterCode c = pool[rng() % pool.size()];
    if (!out.empty() && out.back() == -c) continue;
    out.push_back(c);
  }
  return smkit::Word(h.alphabet(), std::move(out));
}

inline smkit::AdmissibleWord random_admissible(const smkit::Hardware& h,
                                               std::mt19937& rng) {
  std::vector<smkit::LetterCode> out;
  for (std::size_t i = 1; i <= h.k() + 1; ++i) {
    const auto& qs = h.state_symbols(i);
    const std::string& q = qs[rng() % qs.size()];
    out.push_back(smkit::letter_code(*h.alphabet()->index_of(q), +1));
    if (i <= h.k()) {
      smkit::Word seg = random_reduced_over(h, i, 3, rng);
      out.insert(out.end(), seg.letters().begin(), seg.letters().end());
    }
  }
  auto parsed = smkit::parse_admissible(h, smkit::Word(h.alphabet(), out));
  return std::get<smkit::AdmissibleWord>(parsed);
}

// Builds a rule that is applicable to w by cutting its left sides out of w.
inline smkit::SRule random_applicable_rule(const smkit::Hardware& h,
                                           const smkit::AdmissibleWord& w,
                                           std::mt19937& rng,
                                           const std::string& name) {
  std::size_t k = h.k();
  std::uniform_int_distribution<int> coin(0, 1);
  // pick one or two disjoint component spans in increasing order
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  std::size_t lo = 1 + rng() % (k + 1);
  std::size_t hi = lo + (lo <= k ? rng() % std::min<std::size_t>(2, k + 2 - lo) : 0);
  spans.emplace_back(lo, hi);
  if (hi + 2 <= k + 1 && coin(rng)) {
    std::size_t lo2 = hi + 1 + rng() % (k + 1 - hi);
    if (lo2 <= k + 1) spans.emplace_back(lo2, std::min(lo2 + rng() % 2, k + 1));
  }

  smkit::SRule rule;
  rule.name = name;
  for (auto [l, r] : spans) {
    smkit::RulePart part;
    std::size_t from = w.state_position(l);
    std::size_t to = w.state_position(r);
    std::vector<smkit::LetterCode> u(w.word().letters().begin() + from,
                                     w.word().letters().begin() + to + 1);
    part.lhs = smkit::Word(h.alphabet(), std::move(u));
    std::vector<smkit::LetterCode> v;
    if (l >= 2) {
      smkit::Word x = random_reduced_over(h, l - 1, 2, rng);
      v.insert(v.end(), x.letters().begin(), x.letters().end());
    }
    for (std::size_t j = l; j <= r; ++j) {
      const auto& qs = h.state_symbols(j);
      const std::string& q = qs[rng() % qs.size()];
      v.push_back(smkit::letter_code(*h.alphabet()->index_of(q), +1));
      if (j < r) {
        smkit::Word seg = random_reduced_over(h, j, 2, rng);
        v.insert(v.end(), seg.letters().begin(), seg.letters().end());
      }
    }
    if (r <= k) {
      smkit::Word y = random_reduced_over(h, r, 2, rng);
      v.insert(v.end(), y.letters().begin(), y.letters().end());
    }
    part.rhs = smkit::Word(h.alphabet(), std::move(v));
    rule.parts.push_back(std::move(part));
  }
  return rule;
}
