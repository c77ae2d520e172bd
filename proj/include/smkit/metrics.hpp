#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smkit/hn_extension.hpp"
#include "smkit/presentation.hpp"
#include "smkit/word_problem.hpp"

namespace smkit {

/// Letter weights for the measured lengths: tape and B letters count 1,
/// rule letters count 4c, everything else 0.
struct WeightScheme {
  std::size_t c = 0;  // twice the largest tape-letter count in a state/rule relator
  bool degenerate = false;  // c == 0: no tape letters in any such relator
  const GeneratorPartition* classes = nullptr;

  std::size_t theta_weight() const { return 4 * c; }
};

struct Constants {
  std::size_t c = 0;
  std::size_t k = 0;          // tape components of the source machine
  std::size_t n_default = 0;  // 9ck, or 9k when c degenerates to 0
  bool degenerate = false;
};

/// Scans the relators containing both a state letter and a rule letter for
/// their tape-letter counts; c is twice the maximum.
Constants compute_constants(const GroupPresentation& g);

WeightScheme weight_scheme(const GroupPresentation& g);

enum class LengthVariant { Y, YTheta, YBTheta };

/// |w| under the chosen variant: tape letters (plus B letters for YBTheta)
/// count 1 and rule letters count 4c (dropped for Y). Throws on letters
/// missing from the partition.
std::size_t weighted_length(const Word& w, const WeightScheme& s, LengthVariant v);

/// Sampled growth values with per-entry exactness.
struct GrowthTable {
  std::map<std::size_t, std::pair<std::uint64_t, bool>> entries;  // n -> (value, exact)

  std::size_t min_n() const;
  std::size_t max_n() const;
  std::optional<std::uint64_t> at(std::size_t n) const;
};

struct PreceqBounds {
  std::uint64_t max_a = 16, max_b = 16, max_c = 64, max_d = 64;
};

struct PreceqResult {
  bool holds = false;
  std::uint64_t a = 0, b = 0, c = 0, d = 0;
};

/// Searches nonnegative integer constants with f(n) <= a g(bn) + c n + d on
/// the whole sampled domain of f (b must keep bn inside g's domain). This is
/// a witness over the samples, nothing asymptotic. Candidates are tried in
/// ascending (c, d, a, b) order, so the first witness is minimal in that
/// order.
PreceqResult preceq_check(const GrowthTable& f, const GrowthTable& g,
                          const PreceqBounds& bounds);

/// One distortion measurement: u over B, a perturbed equal word v, the
/// geodesic length of u in the copy group and the weighted length of v.
struct TrialRecord {
  std::uint64_t seed = 0;
  std::string u;
  std::string v;
  std::size_t geodesic = 0;        // L
  std::size_t weighted = 0;        // R
  bool holds = false;              // L <= R
  bool completed = false;          // geodesic computed exactly
};

/// Perturbs u by `perturbations` random relator insertions of h (seeded),
/// then compares geodesic_length(gb.copy, u) against |v| in the YBTheta
/// variant. Incomplete geodesics mark the trial discarded.
TrialRecord distortion_trial(const GbPresentation& gb, const GroupPresentation& h,
                             const WeightScheme& s, const Word& u,
                             std::size_t perturbations, std::uint64_t seed,
                             const SearchBudget& budget);

}  // namespace smkit
