#include "smkit/gn_compiler.hpp"

namespace smkit {

KappaParams KappaParams::standard(std::size_t n) {
  if (n < 1) throw CompileError("N must be at least 1");
  KappaParams p;
  p.n = n;
  for (std::size_t i = 1; i <= 4 * n; ++i)
    p.kappa_symbols.push_back("kappa" + std::to_string(i));
  return p;
}

Word kappa_word(const Word& w, const KappaParams& p, const AlphabetRef& generators) {
  if (p.kappa_symbols.size() != 4 * p.n || p.n < 1)
    throw CompileError("kappa parameters need exactly 4N symbols, N >= 1");
  Word reduced = free_reduce(translate(w, generators));
  Word inv = invert(reduced);
  std::vector<LetterCode> out;
  out.reserve(4 * p.n * (reduced.size() + 1));
  for (std::size_t i = 0; i < 4 * p.n; ++i) {
    auto idx = generators->index_of(p.kappa_symbols[i]);
    if (!idx)
      throw CompileError("kappa symbol '" + p.kappa_symbols[i] +
                         "' missing from generators");
    out.push_back(letter_code(*idx, +1));
    const Word& copy = (i % 2 == 0) ? reduced : inv;
    out.insert(out.end(), copy.letters().begin(), copy.letters().end());
  }
  return Word(generators, std::move(out));
}

GroupPresentation compile_gn(const SMachine& m, const AdmissibleWord& stop_word,
                             const KappaParams& p, const std::string& name) {
  if (p.kappa_symbols.size() != 4 * p.n || p.n < 1)
    throw CompileError("kappa parameters need exactly 4N symbols, N >= 1");

  const Hardware& h = m.hardware();
  std::vector<std::string> fresh;
  for (const SRule& r : m.positive_rules()) fresh.push_back(r.name);
  fresh.insert(fresh.end(), p.kappa_symbols.begin(), p.kappa_symbols.end());
  for (const std::string& s : fresh)
    if (h.alphabet()->contains(s))
      throw CompileError("fresh symbol clash: '" + s +
                         "' is already a machine letter");
  AlphabetRef gens = Alphabet::extend(h.alphabet(), fresh);

  GroupPresentation g(name, gens);

  // partition tags
  for (std::uint32_t i = 0; i < h.alphabet()->size(); ++i) {
    std::size_t comp = h.state_component(i);
    if (comp != 0)
      g.partition().assign(i, GenTag{GenClass::State, std::uint32_t(comp), false});
    else
      g.partition().assign(i, GenTag{GenClass::Tape, 0, false});
  }
  for (const SRule& r : m.positive_rules())
    g.partition().assign(*gens->index_of(r.name), GenTag{GenClass::Theta, 0, false});
  for (std::size_t i = 0; i < p.kappa_symbols.size(); ++i)
    g.partition().assign(*gens->index_of(p.kappa_symbols[i]),
                         GenTag{GenClass::Kappa, std::uint32_t(i + 1), false});

  auto gen_word = [&gens](std::initializer_list<LetterCode> ls) {
    return Word(gens, std::vector<LetterCode>(ls));
  };

  // transition relators
  for (const SRule& r : m.positive_rules()) {
    LetterCode tau = letter_code(*gens->index_of(r.name), +1);
    std::vector<bool> touched(h.k() + 2, false);
    for (const RulePart& part : r.parts) {
      for (std::size_t j = part.span_lo; j <= part.span_hi; ++j) touched[j] = true;
      std::vector<LetterCode> rel;
      rel.push_back(-tau);
      for (LetterCode c : part.lhs.letters()) rel.push_back(c);
      rel.push_back(tau);
      Word vinv = invert(part.rhs);
      for (LetterCode c : vinv.letters()) rel.push_back(c);
      g.add_relator(Word(gens, std::move(rel)), RelatorKind::Transition);
    }
    for (std::size_t j = 1; j <= h.k() + 1; ++j) {
      if (touched[j]) continue;
      for (const std::string& q : h.state_symbols(j)) {
        LetterCode qc = letter_code(*gens->index_of(q), +1);
        g.add_relator(gen_word({-tau, qc, tau, -qc}), RelatorKind::Transition);
      }
    }
  }

  // commutation relators: every rule with every tape letter and every kappa
  for (const SRule& r : m.positive_rules()) {
    LetterCode tau = letter_code(*gens->index_of(r.name), +1);
    for (std::uint32_t i = 0; i < h.alphabet()->size(); ++i) {
      if (!h.is_tape_letter(i)) continue;
      LetterCode x = letter_code(i, +1);
      g.add_relator(gen_word({tau, x, -tau, -x}), RelatorKind::AuxiliaryY);
    }
    for (const std::string& ks : p.kappa_symbols) {
      LetterCode kc = letter_code(*gens->index_of(ks), +1);
      g.add_relator(gen_word({tau, kc, -tau, -kc}), RelatorKind::AuxiliaryKappa);
    }
  }

  g.add_relator(kappa_word(stop_word.word(), p, gens), RelatorKind::Hub);
  return g;
}

}  // namespace smkit
