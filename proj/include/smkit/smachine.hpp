#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "smkit/budget.hpp"
#include "smkit/word.hpp"

namespace smkit {

/// Validation outcome with one message per violation.
struct Report {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string joined() const;
};

/// Machine hardware: k tape alphabets Y_1..Y_k (possibly overlapping) and
/// k+1 pairwise disjoint state alphabets Q_1..Q_{k+1}, all interned into one
/// shared alphabet (tape symbols first, then state symbols, in declaration
/// order).
class Hardware {
 public:
  Hardware(std::vector<std::vector<std::string>> tape_alphabets,
           std::vector<std::vector<std::string>> state_alphabets);

  std::size_t k() const { return tape_symbols_.size(); }
  const AlphabetRef& alphabet() const { return alphabet_; }

  const std::vector<std::string>& tape_symbols(std::size_t i) const {
    return tape_symbols_.at(i - 1);  // components are 1-based
  }
  const std::vector<std::string>& state_symbols(std::size_t i) const {
    return state_symbols_.at(i - 1);
  }

  /// 1-based component of a state letter, or 0 for non-state symbols.
  std::size_t state_component(std::uint32_t letter_index) const;
  /// True if the symbol may appear on tape segment i (1-based).
  bool tape_member(std::size_t i, std::uint32_t letter_index) const;
  bool is_tape_letter(std::uint32_t letter_index) const;

  /// Disjointness report: Q_i pairwise disjoint, states disjoint from tapes.
  Report validate() const;

 private:
  std::vector<std::vector<std::string>> tape_symbols_;
  std::vector<std::vector<std::string>> state_symbols_;
  AlphabetRef alphabet_;
  std::vector<std::size_t> component_;        // letter index -> component or 0
  std::vector<std::uint64_t> tape_mask_;      // letter index -> segment bitmask
};

enum class AdmissibleErrorKind {
  MissingComponent,
  WrongOrder,
  ForeignTapeLetter,
  NonReducedSegment,
};

struct AdmissibleIssue {
  AdmissibleErrorKind kind;
  std::size_t component = 0;  // component or segment index, 1-based
  std::string symbol;
  std::string message;
};

/// A word of shape q_1 u_1 q_2 ... u_k q_{k+1}: exactly one positive state
/// letter per component in index order, each u_i reduced and over Y_i.
class AdmissibleWord {
 public:
  const Word& word() const { return word_; }
  std::size_t size() const { return word_.size(); }
  /// Position of the component-i state letter inside word() (1-based i).
  std::size_t state_position(std::size_t i) const { return state_pos_.at(i - 1); }
  /// Tape segment between q_i and q_{i+1} (1-based i in 1..k).
  Word segment(std::size_t i) const;

  bool operator==(const AdmissibleWord& o) const { return word_ == o.word_; }

 private:
  friend struct AdmissibleParser;
  AdmissibleWord(Word w, std::vector<std::size_t> pos)
      : word_(std::move(w)), state_pos_(std::move(pos)) {}
  Word word_;
  std::vector<std::size_t> state_pos_;
};

using ParseAdmissibleResult = std::variant<AdmissibleWord, AdmissibleIssue>;

ParseAdmissibleResult parse_admissible(const Hardware& h, const Word& w);

/// One clause U -> V of a rule, with the component span covered by U.
struct RulePart {
  Word lhs;  // starts with a Q_l letter, ends with a Q_r letter
  Word rhs;  // subword of an admissible word covering the same span
  std::size_t span_lo = 0;  // l, 1-based
  std::size_t span_hi = 0;  // r, 1-based
};

/// A rewriting rule [U_1 -> V_1, ..., U_m -> V_m].
struct SRule {
  std::string name;
  int polarity = +1;  // +1 positive, -1 auto-generated inverse
  std::vector<RulePart> parts;
};

/// Checks the rule's shape against the hardware; each violation names the
/// condition it breaks.
Report validate_rule(const Hardware& h, const SRule& r);

/// The inverse rule: if V_i = x_i V_i' y_i with V_i' anchored at state
/// letters, the inverse has parts V_i' -> x_i^{-1} U_i y_i^{-1}.
SRule invert_rule(const Hardware& h, const SRule& r);

struct RuleRef {
  std::string name;
  int sign = +1;  // +1 applies the declared rule, -1 its inverse
  bool operator==(const RuleRef& o) const { return name == o.name && sign == o.sign; }
};

struct ApplyError {
  enum Kind { NotApplicable, ResultNotAdmissible } kind;
  std::size_t part = 0;  // 1-based failing part for NotApplicable
  std::string message;
};

using ApplyResult = std::variant<AdmissibleWord, ApplyError>;

/// Splices every V_i in place of the matched U_i (right to left), freely
/// reduces, and re-segments. U_i matches iff it occurs literally, anchored at
/// the unique occurrences of its state letters.
ApplyResult apply_rule_parts(const Hardware& h, const AdmissibleWord& w,
                             const SRule& r);

class SMachineError : public std::runtime_error {
 public:
  explicit SMachineError(const std::string& what) : std::runtime_error(what) {}
};

/// A symmetric rewriting machine: hardware plus positive rules; inverses are
/// generated, so the rule set is closed under inversion.
class SMachine {
 public:
  SMachine(Hardware hardware, std::vector<SRule> positive_rules);

  const Hardware& hardware() const { return hardware_; }
  const std::vector<SRule>& positive_rules() const { return positive_rules_; }
  const std::vector<SRule>& inverse_rules() const { return inverse_rules_; }

  const SRule& rule(const RuleRef& ref) const;
  std::size_t rule_index(const std::string& name) const;
  bool has_rule(const std::string& name) const;

  /// Rule names interned as an alphabet, so histories parse as words.
  const AlphabetRef& rule_alphabet() const { return rule_alphabet_; }

  ApplyResult apply(const AdmissibleWord& w, const RuleRef& ref) const;

 private:
  Hardware hardware_;
  std::vector<SRule> positive_rules_;
  std::vector<SRule> inverse_rules_;
  AlphabetRef rule_alphabet_;
};

/// A run of the machine: start word, rule history, and the trace it induces.
struct Computation {
  AdmissibleWord start;
  std::vector<RuleRef> history;
  std::vector<AdmissibleWord> trace;  // trace.front() == start

  std::size_t length() const { return trace.size(); }
  /// Sum of the lengths of all trace words.
  std::uint64_t area() const;
  /// True when no two adjacent history entries are mutually inverse.
  bool reduced_history() const;
};

struct RunError {
  std::size_t step = 0;  // 0-based index of the failing history entry
  ApplyError cause;
};

using RunResult = std::variant<Computation, RunError>;

RunResult run_history(const SMachine& m, const AdmissibleWord& start,
                      const std::vector<RuleRef>& history);

/// History text uses word syntax over rule names: `rule1 ~rule2 ...`.
std::vector<RuleRef> parse_history(const SMachine& m, std::string_view text);
std::string format_history(const std::vector<RuleRef>& history);

struct ReachResult {
  enum Status { Found, Exhausted, BudgetHit } status;
  std::optional<Computation> computation;  // set iff Found; shortest in cap
  std::uint64_t nodes_expanded = 0;
};

/// Breadth-first search over admissible words under the budget caps. Moves
/// are ordered by (rule declaration index, sign +1 before -1), so the result
/// is deterministic for any worker count.
ReachResult search_reachable(const SMachine& m, const AdmissibleWord& from,
                             const AdmissibleWord& to, const SearchBudget& budget);

}  // namespace smkit
