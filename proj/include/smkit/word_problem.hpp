#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "smkit/budget.hpp"
#include "smkit/gn_compiler.hpp"
#include "smkit/presentation.hpp"
#include "smkit/smachine.hpp"

namespace smkit {

/// A certificate that start equals end modulo the relators: an ordered list
/// of relator-instance insertions, each freely reduced in place. The number
/// of steps is the area of the certificate.
struct Derivation {
  struct Step {
    std::size_t position;   // insertion point in the current word
    std::size_t orbit;      // index into the presentation's relator list
    std::uint32_t shift;    // rotation applied to the orbit representative
    int sign;               // +1 canonical, -1 its inverse
  };
  Word start;
  std::vector<Step> steps;
  Word end;

  std::size_t area() const { return steps.size(); }
};

struct VerifyResult {
  bool ok = true;
  std::size_t fail_step = 0;  // 1-based; steps.size()+1 marks an end mismatch
  std::string message;
};

/// Replays every step; ok iff the replay ends exactly at d.end.
VerifyResult verify_derivation(const GroupPresentation& g, const Derivation& d);

/// One insertion applied to a reduced word; result is reduced.
Word apply_insertion(const Word& w, std::size_t position, const Word& instance);

enum class TrivialVerdict { Trivial, NontrivialWithinCap, BudgetHit };

struct AreaResult {
  TrivialVerdict verdict;
  std::size_t area = 0;               // meaningful iff Trivial
  std::optional<Derivation> derivation;
  bool exact = false;                 // verdict definitive within the caps
  std::uint64_t nodes_expanded = 0;
};

/// Breadth-first search over reduced words toward the empty word; a move
/// inserts one relator instance at one position and reduces. Insertions are
/// directed moves, so the search runs forward only; that makes a found area
/// minimal within the length cap. Exhausted searches feed a negative cache
/// shared across queries to the same searcher: every word visited by an
/// exhausted search has its capped reachable set inside the exhausted one.
class TrivialitySearcher {
 public:
  TrivialitySearcher(const GroupPresentation& g, const SearchBudget& budget);
  ~TrivialitySearcher();

  AreaResult decide(const Word& w);

  const SearchBudget& budget() const { return budget_; }

 private:
  struct Ball;  // the negative cache
  std::vector<std::pair<Word, Derivation::Step>> moves_from(const Word& w) const;

  const GroupPresentation& g_;
  SearchBudget budget_;
  std::unique_ptr<Ball> eps_;
};

/// decide_trivial with a fresh searcher; BFS from free_reduce(w) toward the
/// empty word.
AreaResult decide_trivial(const GroupPresentation& g, const Word& w,
                          const SearchBudget& budget);

/// Same search; the name stresses the exactness flag on the result.
AreaResult min_area(const GroupPresentation& g, const Word& w,
                    const SearchBudget& budget);

struct GeodesicResult {
  bool budget_hit = false;
  std::size_t length = 0;
  bool exact = false;
};

/// Distance from the identity to w in the Cayley graph: the least |v| with
/// v = w in g, found by shortlex enumeration of candidates with a triviality
/// test of w v^-1 for each.
GeodesicResult geodesic_length(const GroupPresentation& g, const Word& w,
                               const SearchBudget& budget);

struct DehnProfile {
  struct Entry {
    std::size_t max_area = 0;
    bool exact = true;
    std::string witness;  // a word attaining max_area, if any
  };
  std::map<std::size_t, Entry> table;  // n -> entry, n = 1..max_n
};

/// n -> max area over all trivial words of length <= n. Monotone by
/// construction; an entry is inexact if any constituent search hit a budget.
DehnProfile dehn_profile(const GroupPresentation& g, std::size_t max_n,
                         const SearchBudget& budget);

/// Calls fn for every freely reduced word of exactly the given length, in
/// lexicographic letter order; fn returns false to stop early.
void for_each_reduced_word(const AlphabetRef& alphabet, std::size_t length,
                           const std::function<bool(const Word&)>& fn);

/// Synthesizes a derivation showing kappa(start of comp) = 1 from a machine
/// computation that ends at the stop word the presentation was compiled
/// with. The certificate replays the computation rule by rule across all 4N
/// copies and closes with a single hub insertion.
struct SynthesisResult {
  Derivation derivation;
  std::size_t area = 0;
  // area <= bound_constant * (comp area + N * n * max |W_i| + 1)
  std::uint64_t bound_value = 0;
  double measured_ratio = 0.0;
};

SynthesisResult derive_from_computation(const GroupPresentation& g,
                                        const SMachine& m, const Computation& comp,
                                        const AdmissibleWord& stop_word,
                                        const KappaParams& p);

/// On-demand relators of the infinite disc family: kappa(W) for every W the
/// machine can take to the stop word.
struct DiscOracle {
  const SMachine& machine;
  AdmissibleWord stop_word;
  KappaParams params;
  SearchBudget budget;
};

struct DiscResult {
  bool accepted = false;
  std::optional<CyclicWord> relator;  // orbit of kappa(W) when accepted
  ReachResult::Status search_status = ReachResult::Exhausted;
};

DiscResult disc_relator(const DiscOracle& oracle, const AdmissibleWord& w,
                        const AlphabetRef& generators);

}  // namespace smkit
