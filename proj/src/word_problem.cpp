#include "smkit/word_problem.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <unordered_map>

#include "smkit/parallel.hpp"

namespace smkit {

Word apply_insertion(const Word& w, std::size_t position, const Word& instance) {
  if (position > w.size()) throw WordError("insertion position out of range");
  std::vector<LetterCode> out;
  out.reserve(w.size() + instance.size());
  out.insert(out.end(), w.letters().begin(), w.letters().begin() + position);
  out.insert(out.end(), instance.letters().begin(), instance.letters().end());
  out.insert(out.end(), w.letters().begin() + position, w.letters().end());
  return free_reduce(Word(w.alphabet(), std::move(out)));
}

VerifyResult verify_derivation(const GroupPresentation& g, const Derivation& d) {
  Word cur = free_reduce(d.start);
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const Derivation::Step& s = d.steps[i];
    if (s.orbit >= g.relators().size())
      return {false, i + 1, "bad orbit reference"};
    if (s.position > cur.size())
      return {false, i + 1, "position out of range"};
    const Word& canon = g.relators()[s.orbit].orbit.canonical();
    if (s.shift >= canon.size()) return {false, i + 1, "shift out of range"};
    Word base = s.sign >= 0 ? canon : invert(canon);
    cur = apply_insertion(cur, s.position, rotate(base, s.shift));
  }
  if (cur != free_reduce(d.end))
    return {false, d.steps.size() + 1, "end mismatch"};
  return {};
}

// ---------------------------------------------------------------------------
// triviality search
// ---------------------------------------------------------------------------

namespace {
using Key = std::vector<LetterCode>;
}

// Insertion moves are directed: an insertion that collapses the whole word
// (a conjugated relator cancelling into its surroundings) has no single-move
// reverse. Minimal areas therefore come from a forward breadth-first search
// only. Negative verdicts are cached: when a search exhausts its capped
// reachable set without meeting the empty word, every visited word has a
// reachable set contained in the exhausted one and inherits the verdict.
struct TrivialitySearcher::Ball {
  std::unordered_map<Key, std::uint32_t, LetterVecHash> cannot_reach_empty;
};

TrivialitySearcher::TrivialitySearcher(const GroupPresentation& g,
                                       const SearchBudget& budget)
    : g_(g), budget_(budget) {
  budget_.check();
  eps_ = std::make_unique<Ball>();
}

TrivialitySearcher::~TrivialitySearcher() = default;

std::vector<std::pair<Word, Derivation::Step>> TrivialitySearcher::moves_from(
    const Word& w) const {
  std::vector<std::pair<Word, Derivation::Step>> out;
  for (std::size_t o = 0; o < g_.relators().size(); ++o) {
    for (const auto& inst : g_.instances(o)) {
      for (std::size_t pos = 0; pos <= w.size(); ++pos) {
        Word child = apply_insertion(w, pos, inst.word);
        if (child.size() <= budget_.max_word_len)
          out.emplace_back(std::move(child),
                           Derivation::Step{pos, o, inst.shift, inst.sign});
      }
    }
  }
  return out;
}

AreaResult TrivialitySearcher::decide(const Word& w_in) {
  Word w = free_reduce(w_in);
  AreaResult res{TrivialVerdict::BudgetHit, 0, std::nullopt, false, 0};
  if (w.empty()) {
    res.verdict = TrivialVerdict::Trivial;
    res.derivation = Derivation{w, {}, w};
    res.exact = true;
    return res;
  }
  if (w.size() > budget_.max_word_len) return res;  // cannot search under cap
  if (eps_->cannot_reach_empty.count(w.letters())) {
    res.verdict = TrivialVerdict::NontrivialWithinCap;
    res.exact = true;
    return res;
  }

  struct Node {
    std::uint32_t parent;
    std::uint32_t depth;
    Derivation::Step step;
  };
  // discovery order doubles as the breadth-first queue
  std::unordered_map<Key, std::uint32_t, LetterVecHash> index;
  std::vector<Node> nodes;
  std::vector<Key> words;
  index.emplace(w.letters(), 0);
  nodes.push_back(Node{0, 0, {}});
  words.push_back(w.letters());

  std::size_t cursor = 0;
  std::uint64_t nodes_left = budget_.max_nodes;
  std::optional<std::uint32_t> goal;
  bool budget_cut = false;

  while (cursor < nodes.size() && !goal) {
    std::size_t take = nodes.size() - cursor;
    if (std::uint64_t(take) > nodes_left) {
      take = std::size_t(nodes_left);
      budget_cut = true;
    }
    // queue depths are nondecreasing; stop in front of the depth cap
    while (take > 0 && nodes[cursor + take - 1].depth >= budget_.max_depth) {
      --take;
      budget_cut = true;
    }
    if (take == 0) break;
    using Out = std::vector<std::pair<Word, Derivation::Step>>;
    std::function<Out(std::size_t)> job = [&](std::size_t i) {
      return moves_from(Word(w.alphabet(), words[cursor + i]));
    };
    std::vector<Out> produced = ordered_parallel_map<Out>(take, job);
    nodes_left -= take;
    res.nodes_expanded += take;
    for (std::size_t i = 0; i < take && !goal; ++i) {
      std::uint32_t parent = std::uint32_t(cursor + i);
      for (auto& [child, step] : produced[i]) {
        auto [it, inserted] =
            index.emplace(child.letters(), std::uint32_t(nodes.size()));
        if (!inserted) continue;
        nodes.push_back(Node{parent, nodes[parent].depth + 1, step});
        words.push_back(child.letters());
        if (child.empty()) {
          goal = it->second;
          break;
        }
      }
    }
    cursor += take;
  }

  if (goal) {
    res.verdict = TrivialVerdict::Trivial;
    res.exact = true;  // breadth-first order explores all shorter counts first
    Derivation d{w, {}, Word(w.alphabet())};
    for (std::uint32_t at = *goal; at != 0; at = nodes[at].parent)
      d.steps.push_back(nodes[at].step);
    std::reverse(d.steps.begin(), d.steps.end());
    res.area = d.steps.size();
    res.derivation = std::move(d);
    VerifyResult check = verify_derivation(g_, *res.derivation);
    if (!check.ok)
      throw PresentationError("internal: derivation replay failed: " + check.message);
    return res;
  }

  if (!budget_cut) {
    // the capped reachable set of w is fully enumerated and misses the
    // empty word; every member inherits the verdict
    for (const Key& k : words) eps_->cannot_reach_empty.emplace(k, 0);
    res.verdict = TrivialVerdict::NontrivialWithinCap;
    res.exact = true;
    return res;
  }
  res.verdict = TrivialVerdict::BudgetHit;
  return res;
}

AreaResult decide_trivial(const GroupPresentation& g, const Word& w,
                          const SearchBudget& budget) {
  TrivialitySearcher searcher(g, budget);
  return searcher.decide(w);
}

AreaResult min_area(const GroupPresentation& g, const Word& w,
                    const SearchBudget& budget) {
  return decide_trivial(g, w, budget);
}

// ---------------------------------------------------------------------------
// geodesics, growth
// ---------------------------------------------------------------------------

void for_each_reduced_word(const AlphabetRef& alphabet, std::size_t length,
                           const std::function<bool(const Word&)>& fn) {
  std::vector<LetterCode> codes;
  for (std::uint32_t i = 0; i < alphabet->size(); ++i) {
    codes.push_back(letter_code(i, +1));
    codes.push_back(letter_code(i, -1));
  }
  std::vector<LetterCode> cur;
  std::function<bool()> rec = [&]() -> bool {
    if (cur.size() == length)
      return fn(Word(alphabet, cur));
    for (LetterCode c : codes) {
      if (!cur.empty() && cur.back() == -c) continue;
      cur.push_back(c);
      bool keep = rec();
      cur.pop_back();
      if (!keep) return false;
    }
    return true;
  };
  rec();
}

GeodesicResult geodesic_length(const GroupPresentation& g, const Word& w,
                               const SearchBudget& budget) {
  Word wr = free_reduce(translate(w, g.generators()));
  TrivialitySearcher searcher(g, budget);
  bool all_definitive = true;
  AreaResult at_zero = searcher.decide(wr);
  if (at_zero.verdict == TrivialVerdict::Trivial)
    return {false, 0, at_zero.exact};
  if (at_zero.verdict == TrivialVerdict::BudgetHit) all_definitive = false;

  for (std::size_t len = 1; len <= wr.size(); ++len) {
    std::optional<GeodesicResult> found;
    for_each_reduced_word(g.generators(), len, [&](const Word& v) {
      Word test = concat_reduce(wr, invert(v));
      AreaResult r = searcher.decide(test);
      if (r.verdict == TrivialVerdict::Trivial) {
        found = GeodesicResult{false, len, all_definitive && r.exact};
        return false;
      }
      if (r.verdict == TrivialVerdict::BudgetHit) all_definitive = false;
      return true;
    });
    if (found) return *found;
  }
  // unreachable: v = wr always succeeds
  return {true, 0, false};
}

DehnProfile dehn_profile(const GroupPresentation& g, std::size_t max_n,
                         const SearchBudget& budget) {
  DehnProfile out;
  TrivialitySearcher searcher(g, budget);
  DehnProfile::Entry carry;
  for (std::size_t n = 1; n <= max_n; ++n) {
    for_each_reduced_word(g.generators(), n, [&](const Word& w) {
      AreaResult r = searcher.decide(w);
      if (r.verdict == TrivialVerdict::Trivial) {
        if (!r.exact) carry.exact = false;
        if (r.area > carry.max_area) {
          carry.max_area = r.area;
          carry.witness = format_word(w);
        }
      } else if (r.verdict == TrivialVerdict::BudgetHit) {
        carry.exact = false;
      }
      return true;
    });
    out.table[n] = carry;
  }
  return out;
}

// ---------------------------------------------------------------------------
// derivations synthesized from machine computations
// ---------------------------------------------------------------------------

namespace {

// Locates the orbit of `relator` in g; the compilers built these, so a miss
// means the presentation and machine do not belong together.
std::size_t orbit_of(const GroupPresentation& g, const Word& relator) {
  CyclicWord orbit(translate(relator, g.generators()));
  for (std::size_t i = 0; i < g.relators().size(); ++i)
    if (g.relators()[i].orbit == orbit) return i;
  throw PresentationError("relator '" + format_word(relator) +
                          "' not present; presentation/machine mismatch");
}

struct StageToken {
  enum Kind { Plain, Part } kind;
  LetterCode letter = 0;   // Plain: the literal letter to sweep across
  std::size_t part = 0;    // Part: index into the rule's parts
  bool inverted = false;   // Part on an inverted copy
};

// Emits one derivation step and keeps the synthesizer's model of the current
// word in lock-step with what replay will compute.
class StepRecorder {
 public:
  StepRecorder(const GroupPresentation& g, Word start)
      : g_(g), cur_(std::move(start)) {
    derivation_.start = cur_;
  }

  const Word& current() const { return cur_; }
  std::size_t steps() const { return derivation_.steps.size(); }

  void emit(std::size_t orbit, const Word& instance, std::size_t position) {
    auto loc = g_.find_instance(orbit, instance);
    if (!loc)
      throw PresentationError("instance '" + format_word(instance) +
                              "' not in orbit " + std::to_string(orbit));
    derivation_.steps.push_back(
        Derivation::Step{position, orbit, loc->first, loc->second});
    cur_ = apply_insertion(cur_, position, instance);
  }

  Derivation finish() {
    derivation_.end = cur_;
    return derivation_;
  }

 private:
  const GroupPresentation& g_;
  Word cur_;
  Derivation derivation_;
};

}  // namespace

SynthesisResult derive_from_computation(const GroupPresentation& g,
                                        const SMachine& m, const Computation& comp,
                                        const AdmissibleWord& stop_word,
                                        const KappaParams& p) {
  if (comp.trace.empty() || !(comp.trace.back() == stop_word))
    throw PresentationError("computation does not end at the stop word");
  const AlphabetRef& gens = g.generators();
  const Hardware& hw = m.hardware();

  // orbit lookup helpers, reconstructing the compiler's relator words
  auto theta_code = [&](const std::string& name) {
    auto idx = gens->index_of(name);
    if (!idx) throw PresentationError("rule letter '" + name + "' missing");
    return letter_code(*idx, +1);
  };
  auto transition_orbit = [&](const SRule& rule, const RulePart& part) {
    LetterCode tau = theta_code(rule.name);
    std::vector<LetterCode> rel{-tau};
    Word lhs_g = translate(part.lhs, gens);
    for (LetterCode c : lhs_g.letters()) rel.push_back(c);
    rel.push_back(tau);
    Word rhs_gi = invert(translate(part.rhs, gens));
    for (LetterCode c : rhs_gi.letters()) rel.push_back(c);
    return orbit_of(g, Word(gens, std::move(rel)));
  };
  auto commutation_orbit = [&](LetterCode tau, LetterCode x) {
    return orbit_of(g, Word(gens, std::vector<LetterCode>{tau, x, -tau, -x}));
  };
  auto untouched_orbit = [&](LetterCode tau, LetterCode q) {
    return orbit_of(g, Word(gens, std::vector<LetterCode>{-tau, q, tau, -q}));
  };

  Word hub = kappa_word(stop_word.word(), p, gens);
  std::size_t hub_orbit = orbit_of(g, hub);

  std::vector<LetterCode> kappa_codes;
  for (const auto& s : p.kappa_symbols) {
    auto idx = gens->index_of(s);
    if (!idx) throw PresentationError("kappa letter '" + s + "' missing");
    kappa_codes.push_back(letter_code(*idx, +1));
  }

  StepRecorder rec(g, kappa_word(comp.trace.front().word(), p, gens));

  auto reduce_append = [](std::vector<LetterCode>& acc,
                          const std::vector<LetterCode>& tail) {
    for (LetterCode c : tail) {
      if (!acc.empty() && acc.back() == -c)
        acc.pop_back();
      else
        acc.push_back(c);
    }
  };

  // Sweeps one positive rule application W -> W2 across every copy in the
  // kappa chunk of `start` (= prefix ++ kappa(W) ++ suffix with the given
  // literal prefix length). Records steps via `emit`; returns the resulting
  // word, which equals prefix' kappa(W2) prefix'^-1 for prefix' = prefix tau.
  auto sweep_stage =
      [&](const SRule& rule, const AdmissibleWord& from, const AdmissibleWord& to,
          const Word& h_word,
          const std::function<void(std::size_t, const Word&, std::size_t)>& emit)
      -> Word {
    LetterCode tau = theta_code(rule.name);

    // plan for one forward copy of `from`
    std::vector<StageToken> plan;
    {
      std::vector<std::optional<std::size_t>> part_at(from.size());
      for (std::size_t j = 0; j < rule.parts.size(); ++j) {
        std::size_t anchor = from.state_position(rule.parts[j].span_lo);
        part_at[anchor] = j;
      }
      for (std::size_t pos = 0; pos < from.size();) {
        if (part_at[pos]) {
          plan.push_back(StageToken{StageToken::Part, 0, *part_at[pos], false});
          pos += rule.parts[*part_at[pos]].lhs.size();
        } else {
          plan.push_back(
              StageToken{StageToken::Plain, from.word().at(pos), 0, false});
          pos += 1;
        }
      }
    }
    std::vector<StageToken> plan_inv(plan.rbegin(), plan.rend());
    for (StageToken& t : plan_inv) {
      if (t.kind == StageToken::Plain)
        t.letter = -t.letter;
      else
        t.inverted = true;
    }

    // current word = prefix ++ [-tau] ++ suffix, kept in lock step with rec
    std::vector<LetterCode> prefix = h_word.letters();
    std::vector<LetterCode> suffix;

    // intro: turn  prefix kappa_1 ...  into  prefix tau kappa_1 tau^-1 ...
    {
      Word intro(gens, std::vector<LetterCode>{tau, kappa_codes[0], -tau,
                                               -kappa_codes[0]});
      std::size_t orbit = commutation_orbit(tau, kappa_codes[0]);
      emit(orbit, intro, prefix.size());
      Word chunk = kappa_word(from.word(), p, gens);
      suffix.assign(chunk.letters().begin() + 1, chunk.letters().end());
      Word h_inv = invert(h_word);
      for (const LetterCode c : h_inv.letters()) suffix.push_back(c);
      reduce_append(prefix, {tau, kappa_codes[0]});
    }

    auto consume_suffix = [&](std::size_t count) {
      suffix.erase(suffix.begin(), suffix.begin() + count);
    };

    for (std::size_t copy = 0; copy < 4 * p.n; ++copy) {
      const bool fwd_copy = copy % 2 == 0;
      for (const StageToken& tok : fwd_copy ? plan : plan_inv) {
        if (tok.kind == StageToken::Plain) {
          LetterCode x = tok.letter;
          std::uint32_t idx = letter_index(x);
          std::size_t orbit;
          if (hw.state_component(idx) != 0)
            orbit = untouched_orbit(tau, letter_code(idx, +1));
          else
            orbit = commutation_orbit(tau, letter_code(idx, +1));
          Word inst(gens, std::vector<LetterCode>{x, -tau, -x, tau});
          emit(orbit, inst, prefix.size());
          consume_suffix(1);
          reduce_append(prefix, {x});
        } else {
          const RulePart& part = rule.parts[tok.part];
          Word u = translate(part.lhs, gens);
          Word v = translate(part.rhs, gens);
          if (tok.inverted) {
            u = invert(u);
            v = invert(v);
          }
          std::vector<LetterCode> inst = v.letters();
          inst.push_back(-tau);
          Word u_inv = invert(u);
          for (LetterCode c : u_inv.letters()) inst.push_back(c);
          inst.push_back(tau);
          emit(transition_orbit(rule, part), Word(gens, std::move(inst)),
               prefix.size());
          consume_suffix(u.size());
          reduce_append(prefix, v.letters());
        }
      }
      if (copy + 1 < 4 * p.n) {
        LetterCode kc = kappa_codes[copy + 1];
        Word inst(gens, std::vector<LetterCode>{kc, -tau, -kc, tau});
        emit(commutation_orbit(tau, kc), inst, prefix.size());
        consume_suffix(1);
        reduce_append(prefix, {kc});
      }
    }

    std::vector<LetterCode> result = prefix;
    result.push_back(-tau);
    reduce_append(result, suffix);
    return Word(gens, result);
  };

  Word h_word(gens);  // product of the rules applied so far, reduced
  for (std::size_t i = 0; i < comp.history.size(); ++i) {
    const RuleRef& ref = comp.history[i];
    const SRule& rule = m.positive_rules()[m.rule_index(ref.name)];
    LetterCode tau = theta_code(ref.name);
    if (ref.sign >= 0) {
      Word expect = sweep_stage(
          rule, comp.trace[i], comp.trace[i + 1], h_word,
          [&](std::size_t orbit, const Word& inst, std::size_t pos) {
            rec.emit(orbit, inst, pos);
          });
      if (rec.current() != expect)
        throw PresentationError("internal: sweep drifted at step " +
                                std::to_string(i + 1));
      h_word = concat_reduce(h_word, Word(gens, std::vector<LetterCode>{tau}));
    } else {
      // Inverse application: simulate the positive sweep that would carry the
      // next word back to this one, then replay it backwards.
      Word h_next = concat_reduce(h_word, Word(gens, std::vector<LetterCode>{-tau}));
      struct SimStep {
        std::size_t orbit;
        Word instance;
        std::size_t position;
        Word after;
      };
      std::vector<SimStep> sim;
      Word sim_cur = concat_reduce(
          concat_reduce(h_next, kappa_word(comp.trace[i + 1].word(), p, gens)),
          invert(h_next));
      Word sim_start = sim_cur;
      Word expect = sweep_stage(
          rule, comp.trace[i + 1], comp.trace[i], h_next,
          [&](std::size_t orbit, const Word& inst, std::size_t pos) {
            sim_cur = apply_insertion(sim_cur, pos, inst);
            sim.push_back(SimStep{orbit, inst, pos, sim_cur});
          });
      if (sim_cur != expect || sim_cur != rec.current())
        throw PresentationError("internal: inverse-stage simulation drifted");
      for (std::size_t k = sim.size(); k-- > 0;) {
        const Word& from_word = sim[k].after;
        const Word& to_word = k > 0 ? sim[k - 1].after : sim_start;
        bool found = false;
        for (const auto& inst : g.instances(sim[k].orbit)) {
          for (std::size_t pos = 0; pos <= from_word.size() && !found; ++pos) {
            if (apply_insertion(from_word, pos, inst.word) == to_word) {
              rec.emit(sim[k].orbit, inst.word, pos);
              found = true;
            }
          }
          if (found) break;
        }
        if (!found)
          throw PresentationError("internal: could not reverse an insertion");
      }
      if (rec.current() != sim_start)
        throw PresentationError("internal: inverse stage did not land");
      h_word = h_next;
    }
  }

  // single hub insertion closes the derivation
  {
    Word expect = concat_reduce(concat_reduce(h_word, hub), invert(h_word));
    if (rec.current() != expect)
      throw PresentationError("internal: stages did not reach the hub shape");
    rec.emit(hub_orbit, invert(hub), h_word.size());
    if (!rec.current().empty())
      throw PresentationError("internal: hub insertion left a remainder");
  }

  SynthesisResult out{rec.finish(), 0, 0, 0.0};
  out.area = out.derivation.steps.size();
  std::size_t max_w = 0;
  for (const auto& tw : comp.trace) max_w = std::max(max_w, tw.size());
  out.bound_value =
      comp.area() + std::uint64_t(p.n) * comp.history.size() * max_w + 1;
  out.measured_ratio = double(out.area) / double(out.bound_value);

  VerifyResult check = verify_derivation(g, out.derivation);
  if (!check.ok)
    throw PresentationError("internal: synthesized derivation failed replay: " +
                            check.message);
  return out;
}

DiscResult disc_relator(const DiscOracle& oracle, const AdmissibleWord& w,
                        const AlphabetRef& generators) {
  ReachResult reach =
      search_reachable(oracle.machine, w, oracle.stop_word, oracle.budget);
  DiscResult out;
  out.search_status = reach.status;
  if (reach.status == ReachResult::Found) {
    out.accepted = true;
    out.relator = CyclicWord(kappa_word(w.word(), oracle.params, generators));
  }
  return out;
}

}  // namespace smkit
