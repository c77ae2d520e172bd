#include "smkit/hn_extension.hpp"

#include <algorithm>
#include <set>

#include "smkit/gn_compiler.hpp"

namespace smkit {

namespace {

std::vector<std::string> profile_z_letters(const EmbeddingProfile& prof) {
  std::vector<std::string> out;
  for (const auto& z : prof.zwords)
    for (const auto& s : z) out.push_back(s);
  return out;
}

}  // namespace

std::string EmbeddingProfile::b_for(const std::string& a) const {
  for (std::size_t i = 0; i < a_letters.size(); ++i)
    if (a_letters[i] == a) return b_letters.at(i);
  throw PresentationError("'" + a + "' is not an A letter of profile " + name);
}

Report EmbeddingProfile::validate() const {
  Report rep;
  if (a_letters.empty()) rep.violations.push_back("A is empty");
  if (a_letters.size() != b_letters.size())
    rep.violations.push_back("A and B have different sizes");
  if (zwords.size() != 5) rep.violations.push_back("need exactly z0..z4");
  std::set<std::string> seen;
  auto claim = [&](const std::string& s, const char* where) {
    if (!is_identifier(s))
      rep.violations.push_back(std::string("bad token '") + s + "' in " + where);
    else if (!seen.insert(s).second)
      rep.violations.push_back("'" + s + "' reused in " + where);
  };
  for (const auto& s : a_letters) claim(s, "A");
  for (const auto& s : b_letters) claim(s, "B");
  claim(alpha, "alpha");
  claim(delta, "delta");
  claim(omega, "omega");
  for (const auto& z : zwords)
    for (const auto& s : z) claim(s, "z words");
  return rep;
}

Report EmbeddingProfile::validate_against(const Hardware& h) const {
  Report rep = validate();
  auto tape_letter = [&](const std::string& s) {
    auto idx = h.alphabet()->index_of(s);
    return idx && h.is_tape_letter(*idx);
  };
  for (const auto& a : a_letters)
    if (!tape_letter(a))
      rep.violations.push_back("A letter '" + a + "' is not a machine tape letter");
  for (const std::string& s : {alpha, delta, omega})
    if (!tape_letter(s))
      rep.violations.push_back("marker '" + s + "' is not a machine tape letter");
  std::size_t expect = 1;
  for (std::size_t zi = 0; zi < zwords.size(); ++zi) {
    for (const auto& s : zwords[zi]) {
      auto idx = h.alphabet()->index_of(s);
      std::size_t comp = idx ? h.state_component(*idx) : 0;
      if (comp == 0) {
        rep.violations.push_back("z" + std::to_string(zi) + " letter '" + s +
                                 "' is not a state letter");
      } else if (comp != expect) {
        rep.violations.push_back("z" + std::to_string(zi) + " letter '" + s +
                                 "' breaks component order (expected Q" +
                                 std::to_string(expect) + ")");
      } else {
        ++expect;
      }
    }
  }
  if (rep.ok() && expect != h.k() + 2)
    rep.violations.push_back("z words cover components 1.." +
                             std::to_string(expect - 1) + " of " +
                             std::to_string(h.k() + 1));
  return rep;
}

GroupPresentation compile_hn(const GroupPresentation& gn, const Hardware& h,
                             const EmbeddingProfile& prof, const std::string& name) {
  Report pr = prof.validate_against(h);
  if (!pr.ok()) throw CompileError("invalid profile: " + pr.joined());

  std::vector<std::string> fresh{"rho", "d"};
  fresh.insert(fresh.end(), prof.b_letters.begin(), prof.b_letters.end());
  for (const auto& s : fresh)
    if (gn.generators()->contains(s))
      throw CompileError("fresh symbol clash: '" + s + "'");
  AlphabetRef gens = Alphabet::extend(gn.generators(), fresh);

  GroupPresentation out(name, gens);
  out.partition() = gn.partition();
  for (const RelatorOrbit& r : gn.relators())
    out.add_relator(r.orbit.canonical(), r.kind);

  LetterCode rho = letter_code(*gens->index_of("rho"), +1);
  LetterCode d = letter_code(*gens->index_of("d"), +1);
  out.partition().assign(letter_index(rho), GenTag{GenClass::Rho, 0, false});
  out.partition().assign(letter_index(d), GenTag{GenClass::D, 0, false});
  for (const auto& b : prof.b_letters)
    out.partition().assign(*gens->index_of(b), GenTag{GenClass::B, 0, false});
  for (const auto& a : prof.a_letters)
    out.partition().mark_a(*gens->index_of(a));

  auto code = [&](const std::string& s) {
    return letter_code(*gens->index_of(s), +1);
  };
  auto commutator = [&](LetterCode u, LetterCode v) {
    return Word(gens, std::vector<LetterCode>{u, v, -u, -v});
  };

  // rho commutes with the markers, A, the z letters and kappa_3..kappa_4N
  std::vector<std::string> rho_friends{prof.alpha, prof.delta, prof.omega};
  for (const auto& a : prof.a_letters) rho_friends.push_back(a);
  for (const auto& z : profile_z_letters(prof)) rho_friends.push_back(z);
  for (const auto& s : rho_friends)
    out.add_relator(commutator(rho, code(s)), RelatorKind::Rho);

  constexpr std::uint32_t kNone = 0xffffffffu;
  std::vector<std::uint32_t> kappas;  // generator index per kappa, 1-based order
  for (const auto& [gen, tag] : out.partition().tags())
    if (tag.cls == GenClass::Kappa) {
      if (kappas.size() < tag.index) kappas.resize(tag.index, kNone);
      kappas[tag.index - 1] = gen;
    }
  if (kappas.size() < 2 ||
      std::find(kappas.begin(), kappas.end(), kNone) != kappas.end())
    throw CompileError("presentation does not carry kappa_1..kappa_4N tags");
  for (std::size_t i = 2; i < kappas.size(); ++i)
    out.add_relator(commutator(rho, letter_code(kappas[i], +1)), RelatorKind::Rho);

  // rho^-1 kappa_1 rho = kappa_1 d^-1  and  rho^-1 kappa_2 rho = d kappa_2
  LetterCode k1 = letter_code(kappas[0], +1);
  LetterCode k2 = letter_code(kappas[1], +1);
  out.add_relator(Word(gens, {-rho, k1, rho, d, -k1}), RelatorKind::Rho);
  out.add_relator(Word(gens, {-rho, k2, rho, -k2, -d}), RelatorKind::Rho);

  // d commutes with the markers and the z letters
  std::vector<std::string> d_friends{prof.alpha, prof.delta, prof.omega};
  for (const auto& z : profile_z_letters(prof)) d_friends.push_back(z);
  for (const auto& s : d_friends)
    out.add_relator(commutator(d, code(s)), RelatorKind::DLetter);

  // d^-1 a d = a b
  for (std::size_t i = 0; i < prof.a_letters.size(); ++i) {
    LetterCode a = code(prof.a_letters[i]);
    LetterCode b = code(prof.b_letters[i]);
    out.add_relator(Word(gens, {-d, a, d, -b, -a}), RelatorKind::DLetter);
  }

  // every A letter commutes with every B letter
  for (const auto& as : prof.a_letters)
    for (const auto& bs : prof.b_letters)
      out.add_relator(commutator(code(as), code(bs)), RelatorKind::ABComm);

  return out;
}

GbPresentation gb_presentation(const GroupPresentation& g_over_a,
                               const EmbeddingProfile& prof) {
  Report pr = prof.validate();
  if (!pr.ok()) throw CompileError("invalid profile: " + pr.joined());
  for (const auto& s : g_over_a.generators()->symbols())
    if (std::find(prof.a_letters.begin(), prof.a_letters.end(), s) ==
        prof.a_letters.end())
      throw CompileError("generator '" + s + "' is not an A letter");

  std::vector<std::string> b_gens;
  for (const auto& s : g_over_a.generators()->symbols()) b_gens.push_back(prof.b_for(s));
  AlphabetRef b_alpha = Alphabet::make(b_gens);

  GroupPresentation copy(g_over_a.name() + "_b", b_alpha);
  for (const RelatorOrbit& r : g_over_a.relators()) {
    const Word& w = r.orbit.canonical();
    std::vector<LetterCode> ls = w.letters();  // same indices by construction
    copy.add_relator(Word(b_alpha, std::move(ls)), RelatorKind::Gb);
  }
  return GbPresentation{g_over_a, std::move(copy)};
}

Word sigma_word(const EmbeddingProfile& prof, const Word& u,
                const AlphabetRef& alphabet) {
  if (!is_freely_reduced(u)) throw PresentationError("sigma input must be reduced");
  for (std::size_t i = 0; i < u.size(); ++i) {
    const std::string& s = u.symbol(i);
    if (std::find(prof.a_letters.begin(), prof.a_letters.end(), s) ==
        prof.a_letters.end())
      throw PresentationError("letter '" + s + "' of u is not an A letter");
  }
  auto code = [&](const std::string& s) {
    auto idx = alphabet->index_of(s);
    if (!idx) throw PresentationError("profile letter '" + s + "' missing");
    return letter_code(*idx, +1);
  };
  std::size_t n = u.size();
  std::vector<LetterCode> out;
  auto block = [&](std::size_t zi) {
    for (const auto& s : prof.zwords[zi]) out.push_back(code(s));
  };
  auto power = [&](const std::string& s) {
    LetterCode c = code(s);
    for (std::size_t i = 0; i < n; ++i) out.push_back(c);
  };
  block(0);
  power(prof.alpha);
  block(1);
  for (std::size_t i = 0; i < u.size(); ++i)
    out.push_back(letter_code(*alphabet->index_of(u.symbol(i)), letter_sign(u.at(i))));
  block(2);
  power(prof.delta);
  block(3);
  power(prof.omega);
  block(4);
  return Word(alphabet, std::move(out));
}

SigmaShapeResult validate_sigma_shape(const EmbeddingProfile& prof, const Word& w) {
  const AlphabetRef& alphabet = w.alphabet();
  std::size_t pos = 0;
  auto expect_block = [&](std::size_t zi) -> std::optional<std::string> {
    for (const auto& s : prof.zwords[zi]) {
      auto idx = alphabet->index_of(s);
      if (pos >= w.size() || !idx || w.at(pos) != letter_code(*idx, +1))
        return "z" + std::to_string(zi) + " absent at position " + std::to_string(pos);
      ++pos;
    }
    return std::nullopt;
  };
  auto count_power = [&](const std::string& s) -> std::size_t {
    auto idx = alphabet->index_of(s);
    std::size_t n = 0;
    if (!idx) return 0;
    while (pos < w.size() && w.at(pos) == letter_code(*idx, +1)) {
      ++pos;
      ++n;
    }
    return n;
  };
  auto is_a_letter = [&](std::size_t i) {
    return std::find(prof.a_letters.begin(), prof.a_letters.end(), w.symbol(i)) !=
           prof.a_letters.end();
  };

  if (auto err = expect_block(0)) return SigmaNoMatch{*err};
  std::size_t n_alpha = count_power(prof.alpha);
  if (auto err = expect_block(1)) return SigmaNoMatch{*err};
  std::vector<LetterCode> u_letters;
  while (pos < w.size() && is_a_letter(pos)) {
    u_letters.push_back(w.at(pos));
    ++pos;
  }
  if (auto err = expect_block(2)) return SigmaNoMatch{*err};
  std::size_t n_delta = count_power(prof.delta);
  if (auto err = expect_block(3)) return SigmaNoMatch{*err};
  std::size_t n_omega = count_power(prof.omega);
  if (auto err = expect_block(4)) return SigmaNoMatch{*err};
  if (pos != w.size()) return SigmaNoMatch{"trailing letters after z4"};

  Word u(alphabet, std::move(u_letters));
  if (!is_freely_reduced(u)) return SigmaNoMatch{"extracted u is not reduced"};
  if (n_alpha != u.size() || n_delta != u.size() || n_omega != u.size())
    return SigmaNoMatch{"power mismatch: alpha^" + std::to_string(n_alpha) +
                        " delta^" + std::to_string(n_delta) + " omega^" +
                        std::to_string(n_omega) + " vs |u| = " +
                        std::to_string(u.size())};
  return SigmaMatch{std::move(u)};
}

}  // namespace smkit
