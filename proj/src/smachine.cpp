#include "smkit/smachine.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "smkit/parallel.hpp"

namespace smkit {

std::string Report::joined() const {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v;
  }
  return out;
}

Hardware::Hardware(std::vector<std::vector<std::string>> tape_alphabets,
                   std::vector<std::vector<std::string>> state_alphabets)
    : tape_symbols_(std::move(tape_alphabets)),
      state_symbols_(std::move(state_alphabets)) {
  if (state_symbols_.size() != tape_symbols_.size() + 1)
    throw SMachineError("hardware needs k tape alphabets and k+1 state alphabets");
  if (tape_symbols_.size() > 63)
    throw SMachineError("too many components (limit 63)");

  std::vector<std::string> symbols;
  std::unordered_map<std::string, std::uint32_t> seen;
  auto intern = [&](const std::string& s) -> std::uint32_t {
    auto it = seen.find(s);
    if (it != seen.end()) return it->second;
    std::uint32_t idx = std::uint32_t(symbols.size());
    symbols.push_back(s);
    seen.emplace(s, idx);
    return idx;
  };
  for (const auto& ys : tape_symbols_)
    for (const auto& s : ys) intern(s);
  for (const auto& qs : state_symbols_)
    for (const auto& s : qs) intern(s);

  alphabet_ = Alphabet::make(symbols);
  component_.assign(alphabet_->size(), 0);
  tape_mask_.assign(alphabet_->size(), 0);
  for (std::size_t i = 0; i < tape_symbols_.size(); ++i)
    for (const auto& s : tape_symbols_[i])
      tape_mask_[*alphabet_->index_of(s)] |= (1ull << (i + 1));
  for (std::size_t i = 0; i < state_symbols_.size(); ++i)
    for (const auto& s : state_symbols_[i]) {
      std::uint32_t idx = *alphabet_->index_of(s);
      if (component_[idx] == 0) component_[idx] = i + 1;
      // duplicates across components are caught by validate()
    }
}

std::size_t Hardware::state_component(std::uint32_t letter_index) const {
  return letter_index < component_.size() ? component_[letter_index] : 0;
}

bool Hardware::tape_member(std::size_t i, std::uint32_t letter_index) const {
  return letter_index < tape_mask_.size() &&
         (tape_mask_[letter_index] & (1ull << i)) != 0;
}

bool Hardware::is_tape_letter(std::uint32_t letter_index) const {
  return letter_index < tape_mask_.size() && tape_mask_[letter_index] != 0;
}

Report Hardware::validate() const {
  Report rep;
  std::unordered_map<std::string, std::size_t> state_home;
  for (std::size_t i = 0; i < state_symbols_.size(); ++i) {
    std::unordered_set<std::string> in_this;
    for (const auto& s : state_symbols_[i]) {
      if (!in_this.insert(s).second) {
        rep.violations.push_back("'" + s + "' listed twice in Q" + std::to_string(i + 1));
        continue;
      }
      auto it = state_home.find(s);
      if (it != state_home.end())
        rep.violations.push_back("'" + s + "' in Q" + std::to_string(it->second + 1) +
                                 " and Q" + std::to_string(i + 1));
      else
        state_home.emplace(s, i);
    }
  }
  for (std::size_t i = 0; i < tape_symbols_.size(); ++i)
    for (const auto& s : tape_symbols_[i])
      if (state_home.count(s))
        rep.violations.push_back("'" + s + "' in Y" + std::to_string(i + 1) +
                                 " and in a state alphabet");
  return rep;
}

Word AdmissibleWord::segment(std::size_t i) const {
  std::size_t lo = state_pos_.at(i - 1) + 1;
  std::size_t hi = state_pos_.at(i);
  std::vector<LetterCode> ls(word_.letters().begin() + lo,
                             word_.letters().begin() + hi);
  return Word(word_.alphabet(), std::move(ls));
}

struct AdmissibleParser {
  static ParseAdmissibleResult run(const Hardware& h, const Word& w) {
    const std::size_t k = h.k();
    std::vector<std::size_t> pos;
    pos.reserve(k + 1);
    std::size_t expect = 1;  // next component we want to see
    for (std::size_t i = 0; i < w.size(); ++i) {
      LetterCode c = w.at(i);
      std::uint32_t idx = letter_index(c);
      std::size_t comp = h.state_component(idx);
      if (comp != 0) {
        if (letter_sign(c) < 0)
          return AdmissibleIssue{AdmissibleErrorKind::WrongOrder, comp,
                                 h.alphabet()->symbol(idx),
                                 "state letter '" + h.alphabet()->symbol(idx) +
                                     "' used with negative sign"};
        if (comp == expect) {
          pos.push_back(i);
          ++expect;
          continue;
        }
        if (comp > expect) {
          // distinguish a skipped component from a shuffled one
          for (std::size_t j = i + 1; j < w.size(); ++j)
            if (h.state_component(letter_index(w.at(j))) == expect)
              return AdmissibleIssue{AdmissibleErrorKind::WrongOrder, comp,
                                     h.alphabet()->symbol(idx),
                                     "component " + std::to_string(comp) +
                                         " appears before component " +
                                         std::to_string(expect)};
          return AdmissibleIssue{AdmissibleErrorKind::MissingComponent, expect, "",
                                 "no Q" + std::to_string(expect) + " letter"};
        }
        return AdmissibleIssue{AdmissibleErrorKind::WrongOrder, comp,
                               h.alphabet()->symbol(idx),
                               "second letter of component " + std::to_string(comp)};
      }
      // tape letter inside segment expect-1
      std::size_t seg = expect - 1;
      if (seg == 0)
        return AdmissibleIssue{AdmissibleErrorKind::WrongOrder, 1,
                               h.alphabet()->symbol(idx),
                               "tape letter before the Q1 letter"};
      if (seg > k || !h.tape_member(seg, idx))
        return AdmissibleIssue{
            AdmissibleErrorKind::ForeignTapeLetter, seg, h.alphabet()->symbol(idx),
            "'" + h.alphabet()->symbol(idx) + "' not in Y" + std::to_string(seg)};
    }
    if (expect <= k + 1)
      return AdmissibleIssue{AdmissibleErrorKind::MissingComponent, expect, "",
                             "no Q" + std::to_string(expect) + " letter"};
    AdmissibleWord aw(w, std::move(pos));
    for (std::size_t i = 1; i <= k; ++i)
      if (!is_freely_reduced(aw.segment(i)))
        return AdmissibleIssue{AdmissibleErrorKind::NonReducedSegment, i, "",
                               "segment " + std::to_string(i) + " is not reduced"};
    return aw;
  }
};

ParseAdmissibleResult parse_admissible(const Hardware& h, const Word& w) {
  return AdmissibleParser::run(h, w);
}

namespace {

// A fragment of an admissible word: optional tape flanks around a core that
// starts and ends with state letters of consecutive components lo..hi.
struct Fragment {
  std::size_t lo = 0, hi = 0;
  std::size_t lead = 0, tail = 0;  // flank lengths
  std::string error;               // nonempty on failure
  bool boundary = false;           // failure is a flank at component 1 or k+1
  bool ok() const { return error.empty(); }
};

Fragment parse_fragment(const Hardware& h, const Word& f) {
  Fragment out;
  if (!is_freely_reduced(f)) {
    out.error = "not freely reduced";
    return out;
  }
  std::vector<std::size_t> state_at;
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::uint32_t idx = letter_index(f.at(i));
    if (h.state_component(idx) != 0) {
      if (letter_sign(f.at(i)) < 0) {
        out.error = "state letter with negative sign";
        return out;
      }
      state_at.push_back(i);
    } else if (!h.is_tape_letter(idx)) {
      out.error = "unknown letter '" + f.symbol(i) + "'";
      return out;
    }
  }
  if (state_at.empty()) {
    out.error = "contains no state letter";
    return out;
  }
  out.lo = h.state_component(letter_index(f.at(state_at.front())));
  out.hi = h.state_component(letter_index(f.at(state_at.back())));
  std::size_t expect = out.lo;
  for (std::size_t p : state_at) {
    std::size_t comp = h.state_component(letter_index(f.at(p)));
    if (comp != expect) {
      out.error = "state letters not consecutive components";
      return out;
    }
    ++expect;
  }
  out.lead = state_at.front();
  out.tail = f.size() - state_at.back() - 1;
  // flank letters live on the neighbouring segments
  for (std::size_t i = 0; i < out.lead; ++i) {
    std::uint32_t idx = letter_index(f.at(i));
    if (out.lo < 2 || !h.tape_member(out.lo - 1, idx)) {
      out.boundary = out.lo < 2;
      out.error = "leading letter '" + f.symbol(i) + "' cannot precede a Q" +
                  std::to_string(out.lo) + " letter";
      return out;
    }
  }
  for (std::size_t i = f.size() - out.tail; i < f.size(); ++i) {
    std::uint32_t idx = letter_index(f.at(i));
    if (out.hi > h.k() || !h.tape_member(out.hi, idx)) {
      out.boundary = out.hi > h.k();
      out.error = "trailing letter '" + f.symbol(i) + "' cannot follow a Q" +
                  std::to_string(out.hi) + " letter";
      return out;
    }
  }
  // interior segments
  std::size_t last_state = state_at.front();
  for (std::size_t s = 1; s < state_at.size(); ++s) {
    std::size_t seg = out.lo + s - 1;
    for (std::size_t i = last_state + 1; i < state_at[s]; ++i) {
      std::uint32_t idx = letter_index(f.at(i));
      if (!h.tape_member(seg, idx)) {
        out.error = "'" + f.symbol(i) + "' not in Y" + std::to_string(seg);
        return out;
      }
    }
    last_state = state_at[s];
  }
  return out;
}

std::size_t part_anchor_component(const Hardware& h, const RulePart& part) {
  return h.state_component(letter_index(part.lhs.at(0)));
}

}  // namespace

Report validate_rule(const Hardware& h, const SRule& r) {
  Report rep;
  if (r.parts.empty()) {
    rep.violations.push_back("rule '" + r.name + "' has no parts");
    return rep;
  }
  std::vector<Fragment> lhs_frags, rhs_frags;
  for (std::size_t i = 0; i < r.parts.size(); ++i) {
    const RulePart& part = r.parts[i];
    std::string at = "rule '" + r.name + "' part " + std::to_string(i + 1);
    Fragment lf = parse_fragment(h, part.lhs);
    if (!lf.ok())
      rep.violations.push_back("condition 1: " + at + ": left side: " + lf.error);
    else if (lf.lead != 0 || lf.tail != 0)
      rep.violations.push_back("condition 1: " + at +
                               ": left side must start and end with state letters");
    Fragment rf = parse_fragment(h, part.rhs);
    if (!rf.ok())
      rep.violations.push_back(std::string(rf.boundary ? "condition 4: " : "condition 3: ") +
                               at + ": right side: " + rf.error);
    else if (lf.ok() && lf.lead == 0 && lf.tail == 0 &&
             (rf.lo != lf.lo || rf.hi != lf.hi))
      rep.violations.push_back("condition 3: " + at +
                               ": right side must span Q" + std::to_string(lf.lo) +
                               "..Q" + std::to_string(lf.hi));
    lhs_frags.push_back(lf);
    rhs_frags.push_back(rf);
  }
  if (!rep.ok()) return rep;
  for (std::size_t i = 0; i + 1 < r.parts.size(); ++i)
    if (lhs_frags[i].hi >= lhs_frags[i + 1].lo)
      rep.violations.push_back("condition 2: r(" + std::to_string(i + 1) +
                               ") >= l(" + std::to_string(i + 2) + ")");
  if (lhs_frags.front().lo == 1 && rhs_frags.front().lead != 0)
    rep.violations.push_back(
        "condition 4: first right side must start with a Q1 letter");
  if (lhs_frags.back().hi == h.k() + 1 && rhs_frags.back().tail != 0)
    rep.violations.push_back("condition 4: last right side must end with a Q" +
                             std::to_string(h.k() + 1) + " letter");
  return rep;
}

SRule invert_rule(const Hardware& h, const SRule& r) {
  SRule inv;
  inv.name = r.name;
  inv.polarity = -r.polarity;
  for (const RulePart& part : r.parts) {
    Fragment rf = parse_fragment(h, part.rhs);
    if (!rf.ok())
      throw SMachineError("cannot invert rule '" + r.name + "': " + rf.error);
    const auto& ls = part.rhs.letters();
    Word x(part.rhs.alphabet(),
           std::vector<LetterCode>(ls.begin(), ls.begin() + rf.lead));
    Word core(part.rhs.alphabet(),
              std::vector<LetterCode>(ls.begin() + rf.lead, ls.end() - rf.tail));
    Word y(part.rhs.alphabet(),
           std::vector<LetterCode>(ls.end() - rf.tail, ls.end()));
    RulePart out;
    out.lhs = core;
    out.rhs = concat_reduce(concat_reduce(invert(x), part.lhs), invert(y));
    out.span_lo = rf.lo;
    out.span_hi = rf.hi;
    inv.parts.push_back(std::move(out));
  }
  return inv;
}

ApplyResult apply_rule_parts(const Hardware& h, const AdmissibleWord& w,
                             const SRule& r) {
  struct Splice {
    std::size_t at, len;
    const Word* rhs;
  };
  std::vector<Splice> splices;
  for (std::size_t i = 0; i < r.parts.size(); ++i) {
    const RulePart& part = r.parts[i];
    std::size_t comp = part_anchor_component(h, part);
    std::size_t at = w.state_position(comp);
    const auto& wl = w.word().letters();
    const auto& ul = part.lhs.letters();
    bool match = at + ul.size() <= wl.size() &&
                 std::equal(ul.begin(), ul.end(), wl.begin() + at);
    if (!match)
      return ApplyError{ApplyError::NotApplicable, i + 1,
                        "part " + std::to_string(i + 1) + ": subword '" +
                            format_word(part.lhs) + "' absent"};
    splices.push_back({at, ul.size(), &part.rhs});
  }
  std::vector<LetterCode> out = w.word().letters();
  for (auto it = splices.rbegin(); it != splices.rend(); ++it) {
    out.erase(out.begin() + it->at, out.begin() + it->at + it->len);
    out.insert(out.begin() + it->at, it->rhs->letters().begin(),
               it->rhs->letters().end());
  }
  Word spliced = free_reduce(Word(w.word().alphabet(), std::move(out)));
  ParseAdmissibleResult parsed = parse_admissible(h, spliced);
  if (auto* issue = std::get_if<AdmissibleIssue>(&parsed))
    return ApplyError{ApplyError::ResultNotAdmissible, 0,
                      "result '" + format_word(spliced) +
                          "' not admissible: " + issue->message};
  return std::get<AdmissibleWord>(parsed);
}

SMachine::SMachine(Hardware hardware, std::vector<SRule> positive_rules)
    : hardware_(std::move(hardware)), positive_rules_(std::move(positive_rules)) {
  Report hw = hardware_.validate();
  if (!hw.ok()) throw SMachineError("invalid hardware: " + hw.joined());
  std::unordered_set<std::string> names;
  std::vector<std::string> name_list;
  for (SRule& r : positive_rules_) {
    if (!is_identifier(r.name))
      throw SMachineError("rule name '" + r.name + "' is not an identifier");
    if (!names.insert(r.name).second)
      throw SMachineError("duplicate rule name '" + r.name + "'");
    name_list.push_back(r.name);
    r.polarity = +1;
    Report rr = validate_rule(hardware_, r);
    if (!rr.ok()) throw SMachineError(rr.joined());
    for (RulePart& part : r.parts) {
      Fragment f = parse_fragment(hardware_, part.lhs);
      part.span_lo = f.lo;
      part.span_hi = f.hi;
    }
  }
  for (const SRule& r : positive_rules_)
    inverse_rules_.push_back(invert_rule(hardware_, r));
  rule_alphabet_ = Alphabet::make(std::move(name_list));
}

std::size_t SMachine::rule_index(const std::string& name) const {
  auto idx = rule_alphabet_->index_of(name);
  if (!idx) throw SMachineError("no rule named '" + name + "'");
  return *idx;
}

bool SMachine::has_rule(const std::string& name) const {
  return rule_alphabet_->index_of(name).has_value();
}

const SRule& SMachine::rule(const RuleRef& ref) const {
  std::size_t i = rule_index(ref.name);
  return ref.sign >= 0 ? positive_rules_[i] : inverse_rules_[i];
}

ApplyResult SMachine::apply(const AdmissibleWord& w, const RuleRef& ref) const {
  return apply_rule_parts(hardware_, w, rule(ref));
}

std::uint64_t Computation::area() const {
  std::uint64_t total = 0;
  for (const auto& w : trace) total += w.size();
  return total;
}

bool Computation::reduced_history() const {
  for (std::size_t i = 1; i < history.size(); ++i)
    if (history[i].name == history[i - 1].name &&
        history[i].sign == -history[i - 1].sign)
      return false;
  return true;
}

RunResult run_history(const SMachine& m, const AdmissibleWord& start,
                      const std::vector<RuleRef>& history) {
  Computation comp{start, history, {start}};
  for (std::size_t i = 0; i < history.size(); ++i) {
    ApplyResult r = m.apply(comp.trace.back(), history[i]);
    if (auto* err = std::get_if<ApplyError>(&r)) return RunError{i, *err};
    comp.trace.push_back(std::get<AdmissibleWord>(r));
  }
  return comp;
}

std::vector<RuleRef> parse_history(const SMachine& m, std::string_view text) {
  Word w = parse_word(m.rule_alphabet(), text);
  std::vector<RuleRef> out;
  for (std::size_t i = 0; i < w.size(); ++i)
    out.push_back(RuleRef{w.symbol(i), letter_sign(w.at(i))});
  return out;
}

std::string format_history(const std::vector<RuleRef>& history) {
  std::string out;
  for (const auto& ref : history) {
    if (!out.empty()) out += ' ';
    if (ref.sign < 0) out += '~';
    out += ref.name;
  }
  return out;
}

ReachResult search_reachable(const SMachine& m, const AdmissibleWord& from,
                             const AdmissibleWord& to, const SearchBudget& budget) {
  budget.check();
  ReachResult res{ReachResult::Exhausted, std::nullopt, 0};
  if (from.word() == to.word()) {
    res.status = ReachResult::Found;
    res.computation = Computation{from, {}, {from}};
    return res;
  }

  struct Node {
    std::uint32_t parent;
    RuleRef move;
  };
  using Key = std::vector<LetterCode>;
  std::unordered_map<Key, std::uint32_t, LetterVecHash> seen;
  std::vector<Node> nodes;
  std::vector<Key> words;

  auto intern = [&](const Key& k, std::uint32_t parent, RuleRef move) -> std::int64_t {
    auto [it, inserted] = seen.emplace(k, std::uint32_t(nodes.size()));
    if (!inserted) return -1;
    nodes.push_back(Node{parent, std::move(move)});
    words.push_back(k);
    return it->second;
  };

  const Key target = to.word().letters();
  intern(from.word().letters(), 0, RuleRef{});
  std::vector<std::uint32_t> level{0};

  const std::size_t n_rules = m.positive_rules().size();
  std::uint64_t depth = 0;
  bool budget_hit = false;
  std::optional<std::uint32_t> goal;

  using Expansion = std::vector<std::pair<Key, RuleRef>>;
  while (!level.empty() && !goal) {
    if (depth >= budget.max_depth) {
      budget_hit = true;
      break;
    }
    std::size_t to_expand = level.size();
    if (res.nodes_expanded + to_expand > budget.max_nodes) {
      to_expand = std::size_t(budget.max_nodes - res.nodes_expanded);
      budget_hit = true;
    }
    std::function<Expansion(std::size_t)> expand = [&](std::size_t i) {
      Expansion out;
      Word w(from.word().alphabet(), words[level[i]]);
      auto parsed = parse_admissible(m.hardware(), w);
      const auto& aw = std::get<AdmissibleWord>(parsed);
      for (std::size_t r = 0; r < n_rules; ++r) {
        for (int sign : {+1, -1}) {
          RuleRef ref{m.positive_rules()[r].name, sign};
          ApplyResult ar = m.apply(aw, ref);
          if (auto* ok = std::get_if<AdmissibleWord>(&ar)) {
            if (ok->size() <= budget.max_word_len)
              out.emplace_back(ok->word().letters(), ref);
          }
        }
      }
      return out;
    };
    std::vector<Expansion> expanded = ordered_parallel_map<Expansion>(to_expand, expand);
    res.nodes_expanded += to_expand;
    std::vector<std::uint32_t> next;
    for (std::size_t i = 0; i < expanded.size() && !goal; ++i) {
      for (auto& [key, ref] : expanded[i]) {
        std::int64_t id = intern(key, level[i], ref);
        if (id < 0) continue;
        if (key == target) {
          goal = std::uint32_t(id);
          break;
        }
        next.push_back(std::uint32_t(id));
      }
    }
    level = std::move(next);
    ++depth;
  }

  if (goal) {
    std::vector<RuleRef> history;
    for (std::uint32_t at = *goal; at != 0; at = nodes[at].parent)
      history.push_back(nodes[at].move);
    std::reverse(history.begin(), history.end());
    RunResult rr = run_history(m, from, history);
    res.status = ReachResult::Found;
    res.computation = std::get<Computation>(rr);
    return res;
  }
  res.status = budget_hit ? ReachResult::BudgetHit : ReachResult::Exhausted;
  return res;
}

}  // namespace smkit
