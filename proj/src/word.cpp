#include "smkit/word.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace smkit {

AlphabetRef Alphabet::make(std::vector<std::string> symbols) {
  auto a = std::shared_ptr<Alphabet>(new Alphabet());
  a->symbols_ = std::move(symbols);
  for (std::uint32_t i = 0; i < a->symbols_.size(); ++i) {
    const std::string& s = a->symbols_[i];
    if (!is_identifier(s)) throw WordError("bad symbol token: '" + s + "'");
    if (!a->index_.emplace(s, i).second)
      throw WordError("duplicate symbol: '" + s + "'");
  }
  return a;
}

AlphabetRef Alphabet::extend(const AlphabetRef& base,
                             const std::vector<std::string>& more) {
  std::vector<std::string> symbols = base ? base->symbols_ : std::vector<std::string>{};
  symbols.insert(symbols.end(), more.begin(), more.end());
  return make(std::move(symbols));
}

std::optional<std::uint32_t> Alphabet::index_of(std::string_view s) const {
  auto it = index_.find(std::string(s));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool Alphabet::extends(const Alphabet& base) const {
  if (base.symbols_.size() > symbols_.size()) return false;
  return std::equal(base.symbols_.begin(), base.symbols_.end(), symbols_.begin());
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char ch : s.substr(1)) {
    unsigned char u = static_cast<unsigned char>(ch);
    if (!std::isalnum(u) && ch != '_' && ch != '\'') return false;
  }
  return true;
}

Word::Word() {
  static const AlphabetRef empty = Alphabet::make({});
  alphabet_ = empty;
}

Word::Word(AlphabetRef alphabet, std::vector<LetterCode> letters)
    : alphabet_(std::move(alphabet)), letters_(std::move(letters)) {
  if (!alphabet_) throw WordError("word requires an alphabet");
  for (LetterCode c : letters_) {
    if (c == 0 || letter_index(c) >= alphabet_->size())
      throw WordError("letter code out of range for alphabet");
  }
}

bool alphabets_compatible(const Alphabet& a, const Alphabet& b) {
  if (&a == &b) return true;
  return a.extends(b) || b.extends(a);
}

Word free_reduce(const Word& w) {
  std::vector<LetterCode> out;
  out.reserve(w.size());
  for (LetterCode c : w.letters()) {
    if (!out.empty() && out.back() == -c)
      out.pop_back();
    else
      out.push_back(c);
  }
  return Word(w.alphabet(), std::move(out));
}

bool is_freely_reduced(const Word& w) {
  const auto& ls = w.letters();
  for (std::size_t i = 1; i < ls.size(); ++i)
    if (ls[i] == -ls[i - 1]) return false;
  return true;
}

Word invert(const Word& w) {
  std::vector<LetterCode> out(w.letters().rbegin(), w.letters().rend());
  for (LetterCode& c : out) c = -c;
  return Word(w.alphabet(), std::move(out));
}

Word concat_reduce(const Word& w1, const Word& w2) {
  if (!alphabets_compatible(*w1.alphabet(), *w2.alphabet()))
    throw WordError("alphabet mismatch in concat_reduce");
  const AlphabetRef& big =
      w1.alphabet()->size() >= w2.alphabet()->size() ? w1.alphabet() : w2.alphabet();
  std::vector<LetterCode> out;
  out.reserve(w1.size() + w2.size());
  for (LetterCode c : w1.letters()) {
    if (!out.empty() && out.back() == -c)
      out.pop_back();
    else
      out.push_back(c);
  }
  for (LetterCode c : w2.letters()) {
    if (!out.empty() && out.back() == -c)
      out.pop_back();
    else
      out.push_back(c);
  }
  return Word(big, std::move(out));
}

Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  const auto& ls = r.letters();
  while (hi - lo >= 2 && ls[lo] == -ls[hi - 1]) {
    ++lo;
    --hi;
  }
  std::vector<LetterCode> out(ls.begin() + lo, ls.begin() + hi);
  return Word(r.alphabet(), std::move(out));
}

bool is_cyclically_reduced(const Word& w) {
  if (!is_freely_reduced(w)) return false;
  if (w.size() >= 2 && w.letters().front() == -w.letters().back()) return false;
  return true;
}

Word rotate(const Word& w, std::size_t k) {
  if (w.empty()) return w;
  k %= w.size();
  std::vector<LetterCode> out;
  out.reserve(w.size());
  out.insert(out.end(), w.letters().begin() + k, w.letters().end());
  out.insert(out.end(), w.letters().begin(), w.letters().begin() + k);
  return Word(w.alphabet(), std::move(out));
}

namespace {
// Lexicographic on (index, sign) keys; used inside shortlex and orbit picks.
bool lex_less(const std::vector<LetterCode>& a, const std::vector<LetterCode>& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == b[i]) continue;
    return letter_less(a[i], b[i]);
  }
  return a.size() < b.size();
}
}  // namespace

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return lex_less(a.letters(), b.letters());
}

CyclicWord::CyclicWord(const Word& w) : canonical_(cyclic_reduce(w)) {
  if (canonical_.empty())
    throw WordError("cyclic word is empty after reduction");
  Word best = canonical_;
  Word inv = invert(canonical_);
  for (std::size_t k = 0; k < canonical_.size(); ++k) {
    Word r1 = rotate(canonical_, k);
    if (lex_less(r1.letters(), best.letters())) best = r1;
    Word r2 = rotate(inv, k);
    if (lex_less(r2.letters(), best.letters())) best = r2;
  }
  canonical_ = best;
}

Word parse_word(const AlphabetRef& alphabet, std::string_view text) {
  std::vector<LetterCode> out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    int sign = +1;
    std::string_view sym = tok;
    if (!sym.empty() && sym[0] == '~') {
      sign = -1;
      sym.remove_prefix(1);
    }
    if (!is_identifier(sym))
      throw WordError("bad word token: '" + tok + "'");
    auto idx = alphabet->index_of(sym);
    if (!idx)
      throw WordError("unknown letter '" + std::string(sym) + "'");
    out.push_back(letter_code(*idx, sign));
  }
  return Word(alphabet, std::move(out));
}

std::string format_word(const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    if (letter_sign(w.at(i)) < 0) out += '~';
    out += w.symbol(i);
  }
  return out;
}

Word translate(const Word& w, const AlphabetRef& target) {
  std::vector<LetterCode> out;
  out.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto idx = target->index_of(w.symbol(i));
    if (!idx)
      throw WordError("letter '" + w.symbol(i) + "' missing from target alphabet");
    out.push_back(letter_code(*idx, letter_sign(w.at(i))));
  }
  return Word(target, std::move(out));
}

}  // namespace smkit
