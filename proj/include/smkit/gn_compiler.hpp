#pragma once

#include <string>
#include <vector>

#include "smkit/presentation.hpp"
#include "smkit/smachine.hpp"

namespace smkit {

/// The kappa letters kappa_1..kappa_{4N} and the parameter N.
struct KappaParams {
  std::size_t n = 1;
  std::vector<std::string> kappa_symbols;  // size 4N

  /// Auto-generated symbols kappa1..kappa{4N}. Requires N >= 1.
  static KappaParams standard(std::size_t n);
};

/// The alternating word kappa_1 W kappa_2 W^-1 ... kappa_{4N-1} W kappa_4N W^-1
/// over the given presentation alphabet. For reduced W free of kappa letters
/// the result is reduced, of length 4N(|W|+1).
Word kappa_word(const Word& w, const KappaParams& p, const AlphabetRef& generators);

class CompileError : public std::runtime_error {
 public:
  explicit CompileError(const std::string& what) : std::runtime_error(what) {}
};

/// Compiles a machine, a stop word and the kappa parameters into a group
/// presentation:
///   - per positive rule tau and part U -> V, the relator tau^-1 U tau V^-1,
///     plus tau^-1 q tau q^-1 for every state letter of each component that
///     no part of tau touches;
///   - commutation relators of tau with every tape letter and every kappa;
///   - the hub relator kappa(W0).
/// Generators are the machine alphabet (indices preserved) + rule names +
/// kappa letters; closure of relators under shifts and inversion is implicit
/// in the stored orbits.
GroupPresentation compile_gn(const SMachine& m, const AdmissibleWord& stop_word,
                             const KappaParams& p,
                             const std::string& name = "gn");

}  // namespace smkit
