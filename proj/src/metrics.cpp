#include "smkit/metrics.hpp"

#include <algorithm>
#include <random>

namespace smkit {

Constants compute_constants(const GroupPresentation& g) {
  const GeneratorPartition& part = g.partition();
  if (part.tags().empty())
    throw PresentationError("presentation carries no partition tags");
  Constants out;
  out.k = part.state_components() == 0 ? 0 : part.state_components() - 1;
  std::size_t max_tape = 0;
  for (const RelatorOrbit& r : g.relators()) {
    bool has_state = false, has_theta = false;
    std::size_t tape = 0;
    for (LetterCode c : r.orbit.canonical().letters()) {
      std::uint32_t idx = letter_index(c);
      if (part.is_state(idx)) has_state = true;
      if (part.is_theta(idx)) has_theta = true;
      if (part.is_tape(idx)) ++tape;
    }
    if (has_state && has_theta) max_tape = std::max(max_tape, tape);
  }
  out.c = 2 * max_tape;
  out.degenerate = out.c == 0;
  out.n_default = out.degenerate ? 9 * out.k : 9 * out.c * out.k;
  return out;
}

WeightScheme weight_scheme(const GroupPresentation& g) {
  Constants cs = compute_constants(g);
  return WeightScheme{cs.c, cs.degenerate, &g.partition()};
}

std::size_t weighted_length(const Word& w, const WeightScheme& s, LengthVariant v) {
  if (!s.classes) throw PresentationError("weight scheme has no partition");
  std::size_t total = 0;
  for (LetterCode c : w.letters()) {
    std::uint32_t idx = letter_index(c);
    auto tag = s.classes->tag(idx);
    if (!tag)
      throw PresentationError("letter index " + std::to_string(idx) +
                              " is not classified");
    switch (tag->cls) {
      case GenClass::Tape:
        total += 1;
        break;
      case GenClass::B:
        if (v == LengthVariant::YBTheta) total += 1;
        break;
      case GenClass::Theta:
        if (v != LengthVariant::Y) total += s.theta_weight();
        break;
      default:
        break;
    }
  }
  return total;
}

std::size_t GrowthTable::min_n() const {
  return entries.empty() ? 0 : entries.begin()->first;
}
std::size_t GrowthTable::max_n() const {
  return entries.empty() ? 0 : entries.rbegin()->first;
}
std::optional<std::uint64_t> GrowthTable::at(std::size_t n) const {
  auto it = entries.find(n);
  if (it == entries.end()) return std::nullopt;
  return it->second.first;
}

PreceqResult preceq_check(const GrowthTable& f, const GrowthTable& g,
                          const PreceqBounds& bounds) {
  if (f.entries.empty() || g.entries.empty())
    throw PresentationError("preceq needs nonempty tables");
  auto witness = [&](std::uint64_t a, std::uint64_t b, std::uint64_t c,
                     std::uint64_t d) -> bool {
    for (const auto& [n, val] : f.entries) {
      std::uint64_t rhs = c * n + d;
      if (a != 0) {
        auto gv = g.at(n * b);
        if (!gv) return false;  // bn must stay inside g's domain
        rhs += a * *gv;
      }
      if (val.first > rhs) return false;
    }
    return true;
  };
  for (std::uint64_t c = 0; c <= bounds.max_c; ++c)
    for (std::uint64_t d = 0; d <= bounds.max_d; ++d)
      for (std::uint64_t a = 0; a <= bounds.max_a; ++a) {
        std::uint64_t b_hi = a == 0 ? 1 : bounds.max_b;
        for (std::uint64_t b = 1; b <= b_hi; ++b)
          if (witness(a, b, c, d)) return {true, a, b, c, d};
      }
  return {};
}

TrialRecord distortion_trial(const GbPresentation& gb, const GroupPresentation& h,
                             const WeightScheme& s, const Word& u,
                             std::size_t perturbations, std::uint64_t seed,
                             const SearchBudget& budget) {
  TrialRecord rec;
  rec.seed = seed;
  Word u_h = free_reduce(translate(u, h.generators()));
  rec.u = format_word(u_h);

  std::mt19937_64 rng(seed);
  Word v = u_h;
  for (std::size_t i = 0; i < perturbations; ++i) {
    if (h.relators().empty()) break;
    std::size_t orbit = rng() % h.relators().size();
    const auto& instances = h.instances(orbit);
    const auto& inst = instances[rng() % instances.size()];
    std::size_t pos = rng() % (v.size() + 1);
    v = apply_insertion(v, pos, inst.word);
  }
  rec.v = format_word(v);
  rec.weighted = weighted_length(v, s, LengthVariant::YBTheta);

  GeodesicResult geo = geodesic_length(gb.copy, u, budget);
  if (geo.budget_hit || !geo.exact) {
    rec.completed = false;
    return rec;
  }
  rec.geodesic = geo.length;
  rec.completed = true;
  rec.holds = rec.geodesic <= rec.weighted;
  return rec;
}

}  // namespace smkit
