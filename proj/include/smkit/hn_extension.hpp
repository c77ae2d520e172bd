#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "smkit/presentation.hpp"
#include "smkit/smachine.hpp"

namespace smkit {

/// Data describing how a group over A sits inside the machine alphabet:
/// the A letters, their B partners, the three marker letters and the five
/// state-letter blocks z0..z4 framing an input word.
struct EmbeddingProfile {
  std::string name;
  std::vector<std::string> a_letters;
  std::vector<std::string> b_letters;  // positionally paired with a_letters
  std::string alpha, delta, omega;
  std::vector<std::vector<std::string>> zwords;  // z0..z4, state letters only

  std::string b_for(const std::string& a) const;

  /// Intrinsic checks: sizes, identifiers, pairwise distinctness of contents.
  Report validate() const;
  /// Checks against compiled machine structure: A inside the tape letters,
  /// markers tape letters outside A, z letters state letters covering every
  /// component exactly once in index order.
  Report validate_against(const Hardware& h) const;
};

/// Extends a compiled presentation with rho, d and the B letters plus their
/// defining relators:
///   rho x = x rho  for x in {alpha,delta,omega} + A + z letters + kappa_3..4N
///   rho^-1 kappa_1 rho = kappa_1 d^-1,   rho^-1 kappa_2 rho = d kappa_2
///   d x = x d      for x in {alpha,delta,omega} + z letters
///   d^-1 a d = a b for every pair (a, b)
///   a b = b a      for all a in A, b in B
/// z-block commutation is emitted letter by letter.
GroupPresentation compile_hn(const GroupPresentation& gn, const Hardware& h,
                             const EmbeddingProfile& prof,
                             const std::string& name = "hn");

/// A group over A together with its letter-for-letter copy over B.
struct GbPresentation {
  GroupPresentation base;
  GroupPresentation copy;
};

/// Transliterates every relator a_i -> b_i (signs preserved). Every
/// generator of the input must be an A letter of the profile.
GbPresentation gb_presentation(const GroupPresentation& g_over_a,
                               const EmbeddingProfile& prof);

/// z0 alpha^n z1 u z2 delta^n z3 omega^n z4 with n = |u|, over the given
/// alphabet. Requires u reduced and over A.
Word sigma_word(const EmbeddingProfile& prof, const Word& u,
                const AlphabetRef& alphabet);

struct SigmaMatch {
  Word extracted;  // the u with w == sigma_word(prof, u)
};
struct SigmaNoMatch {
  std::string reason;
};
using SigmaShapeResult = std::variant<SigmaMatch, SigmaNoMatch>;

/// Decides whether w has the exact sigma shape for some u over A with all
/// three powers equal to |u|, and extracts that u.
SigmaShapeResult validate_sigma_shape(const EmbeddingProfile& prof, const Word& w);

}  // namespace smkit
