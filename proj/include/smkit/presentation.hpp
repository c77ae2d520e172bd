#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "smkit/word.hpp"

namespace smkit {

/// Partition classes for generators of the compiled groups.
enum class GenClass : std::uint8_t {
  Theta,   // positive rule letters
  State,   // Q_i, with component index attached
  Tape,    // the tape letters
  Kappa,   // kappa_i, with index attached
  Rho,
  D,
  B,
};

struct GenTag {
  GenClass cls;
  std::uint32_t index = 0;  // component for State, 1-based i for Kappa
  bool in_a = false;        // marks the A subset inside the tape class
};

/// Map from generator to partition class. The A subset is carried as a flag
/// on tape letters rather than a class of its own.
class GeneratorPartition {
 public:
  void assign(std::uint32_t gen, GenTag tag) { tags_[gen] = tag; }
  std::optional<GenTag> tag(std::uint32_t gen) const;
  void mark_a(std::uint32_t gen);

  bool is_theta(std::uint32_t gen) const;
  bool is_state(std::uint32_t gen) const;
  bool is_tape(std::uint32_t gen) const;
  bool is_b(std::uint32_t gen) const;
  bool is_a(std::uint32_t gen) const;

  std::size_t state_components() const;  // number of distinct Q classes

  const std::map<std::uint32_t, GenTag>& tags() const { return tags_; }

 private:
  std::map<std::uint32_t, GenTag> tags_;
};

enum class RelatorKind : std::uint8_t {
  Transition,
  AuxiliaryY,
  AuxiliaryKappa,
  Hub,
  Rho,
  DLetter,
  ABComm,
  Gb,
  User,
};

const char* relator_kind_name(RelatorKind k);
std::optional<RelatorKind> relator_kind_from_name(std::string_view s);

/// A defining relator stored as its canonical cyclic orbit; all cyclic shifts
/// and inverses are implied.
struct RelatorOrbit {
  CyclicWord orbit;
  RelatorKind kind;
};

class PresentationError : public std::runtime_error {
 public:
  explicit PresentationError(const std::string& what) : std::runtime_error(what) {}
};

/// A group presentation: generators, partition tags, relator orbits.
class GroupPresentation {
 public:
  GroupPresentation(std::string name, AlphabetRef generators)
      : name_(std::move(name)), generators_(std::move(generators)) {}

  const std::string& name() const { return name_; }
  const AlphabetRef& generators() const { return generators_; }
  GeneratorPartition& partition() { return partition_; }
  const GeneratorPartition& partition() const { return partition_; }
  const std::vector<RelatorOrbit>& relators() const { return relators_; }

  /// Adds the orbit of w unless an equal orbit is already present.
  /// Returns true if the orbit is new. Throws on letters outside the
  /// generator alphabet or words that reduce to the empty word.
  bool add_relator(const Word& w, RelatorKind kind);

  /// All distinct shift/inversion instances of one orbit, each cyclically
  /// reduced. Order: sign +1 shifts 0..L-1, then sign -1 shifts 0..L-1,
  /// first occurrence kept.
  struct Instance {
    Word word;
    std::uint32_t shift;
    int sign;
  };
  const std::vector<Instance>& instances(std::size_t orbit_index) const;

  /// Locates (shift, sign) with instance == w, if w lies in the orbit.
  std::optional<std::pair<std::uint32_t, int>> find_instance(
      std::size_t orbit_index, const Word& w) const;

 private:
  std::string name_;
  AlphabetRef generators_;
  GeneratorPartition partition_;
  std::vector<RelatorOrbit> relators_;
  mutable std::vector<std::vector<Instance>> instance_cache_;
};

/// Per-kind relator statistics.
struct Census {
  struct Row {
    RelatorKind kind;
    std::size_t orbits = 0;
    std::size_t expanded = 0;  // sum over orbits of 2 * orbit length
    std::size_t max_length = 0;
  };
  std::vector<Row> rows;                      // only kinds that occur
  std::map<std::string, std::size_t> generators_per_class;
  std::size_t total_orbits = 0;
};

Census relation_census(const GroupPresentation& g);

}  // namespace smkit
