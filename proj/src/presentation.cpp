#include "smkit/presentation.hpp"

#include <algorithm>
#include <set>

namespace smkit {

std::optional<GenTag> GeneratorPartition::tag(std::uint32_t gen) const {
  auto it = tags_.find(gen);
  if (it == tags_.end()) return std::nullopt;
  return it->second;
}

void GeneratorPartition::mark_a(std::uint32_t gen) {
  auto it = tags_.find(gen);
  if (it == tags_.end() || it->second.cls != GenClass::Tape)
    throw PresentationError("A letters must be tape letters");
  it->second.in_a = true;
}

bool GeneratorPartition::is_theta(std::uint32_t gen) const {
  auto t = tag(gen);
  return t && t->cls == GenClass::Theta;
}
bool GeneratorPartition::is_state(std::uint32_t gen) const {
  auto t = tag(gen);
  return t && t->cls == GenClass::State;
}
bool GeneratorPartition::is_tape(std::uint32_t gen) const {
  auto t = tag(gen);
  return t && t->cls == GenClass::Tape;
}
bool GeneratorPartition::is_b(std::uint32_t gen) const {
  auto t = tag(gen);
  return t && t->cls == GenClass::B;
}
bool GeneratorPartition::is_a(std::uint32_t gen) const {
  auto t = tag(gen);
  return t && t->cls == GenClass::Tape && t->in_a;
}

std::size_t GeneratorPartition::state_components() const {
  std::set<std::uint32_t> comps;
  for (const auto& [gen, tag] : tags_)
    if (tag.cls == GenClass::State) comps.insert(tag.index);
  return comps.size();
}

const char* relator_kind_name(RelatorKind k) {
  switch (k) {
    case RelatorKind::Transition: return "transition";
    case RelatorKind::AuxiliaryY: return "auxiliary-y";
    case RelatorKind::AuxiliaryKappa: return "auxiliary-kappa";
    case RelatorKind::Hub: return "hub";
    case RelatorKind::Rho: return "rho";
    case RelatorKind::DLetter: return "d";
    case RelatorKind::ABComm: return "ab-comm";
    case RelatorKind::Gb: return "gb";
    case RelatorKind::User: return "user";
  }
  return "?";
}

std::optional<RelatorKind> relator_kind_from_name(std::string_view s) {
  static const std::pair<const char*, RelatorKind> table[] = {
      {"transition", RelatorKind::Transition},
      {"auxiliary-y", RelatorKind::AuxiliaryY},
      {"auxiliary-kappa", RelatorKind::AuxiliaryKappa},
      {"hub", RelatorKind::Hub},
      {"rho", RelatorKind::Rho},
      {"d", RelatorKind::DLetter},
      {"ab-comm", RelatorKind::ABComm},
      {"gb", RelatorKind::Gb},
      {"user", RelatorKind::User},
  };
  for (const auto& [name, kind] : table)
    if (s == name) return kind;
  return std::nullopt;
}

bool GroupPresentation::add_relator(const Word& w, RelatorKind kind) {
  if (!alphabets_compatible(*w.alphabet(), *generators_) ||
      !generators_->extends(*w.alphabet()))
    throw PresentationError("relator uses letters outside the generator set");
  CyclicWord orbit(translate(w, generators_));
  for (const RelatorOrbit& r : relators_)
    if (r.orbit == orbit) return false;
  relators_.push_back(RelatorOrbit{std::move(orbit), kind});
  instance_cache_.clear();
  return true;
}

const std::vector<GroupPresentation::Instance>& GroupPresentation::instances(
    std::size_t orbit_index) const {
  if (instance_cache_.empty()) instance_cache_.resize(relators_.size());
  auto& slot = instance_cache_.at(orbit_index);
  if (!slot.empty()) return slot;
  const Word& canon = relators_[orbit_index].orbit.canonical();
  Word inv = invert(canon);
  std::vector<Instance> out;
  auto push = [&out](Word w, std::uint32_t shift, int sign) {
    for (const Instance& have : out)
      if (have.word == w) return;
    out.push_back(Instance{std::move(w), shift, sign});
  };
  for (std::uint32_t k = 0; k < canon.size(); ++k) push(rotate(canon, k), k, +1);
  for (std::uint32_t k = 0; k < canon.size(); ++k) push(rotate(inv, k), k, -1);
  slot = std::move(out);
  return slot;
}

std::optional<std::pair<std::uint32_t, int>> GroupPresentation::find_instance(
    std::size_t orbit_index, const Word& w) const {
  for (const Instance& inst : instances(orbit_index))
    if (inst.word.letters() == w.letters())
      return std::make_pair(inst.shift, inst.sign);
  return std::nullopt;
}

Census relation_census(const GroupPresentation& g) {
  Census census;
  std::map<RelatorKind, Census::Row> rows;
  for (const RelatorOrbit& r : g.relators()) {
    Census::Row& row = rows[r.kind];
    row.kind = r.kind;
    row.orbits += 1;
    row.expanded += 2 * r.orbit.size();
    row.max_length = std::max(row.max_length, r.orbit.size());
  }
  for (auto& [kind, row] : rows) census.rows.push_back(row);
  census.total_orbits = g.relators().size();
  for (const auto& [gen, tag] : g.partition().tags()) {
    std::string key;
    switch (tag.cls) {
      case GenClass::Theta: key = "theta"; break;
      case GenClass::State: key = "q" + std::to_string(tag.index); break;
      case GenClass::Tape: key = "y"; break;
      case GenClass::Kappa: key = "kappa"; break;
      case GenClass::Rho: key = "rho"; break;
      case GenClass::D: key = "d"; break;
      case GenClass::B: key = "b"; break;
    }
    census.generators_per_class[key] += 1;
    if (tag.cls == GenClass::Tape && tag.in_a) census.generators_per_class["a"] += 1;
  }
  return census;
}

}  // namespace smkit
