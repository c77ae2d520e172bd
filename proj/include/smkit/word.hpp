#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace smkit {

class Alphabet;
using AlphabetRef = std::shared_ptr<const Alphabet>;

/// An immutable, ordered set of distinct identifier tokens.
/// Declaration order defines letter ordering everywhere (shifts, canonical
/// orbit representatives, search tie-breaking).
class Alphabet {
 public:
  static AlphabetRef make(std::vector<std::string> symbols);
  /// New alphabet containing all of `base` (same indices) plus `more`.
  static AlphabetRef extend(const AlphabetRef& base,
                            const std::vector<std::string>& more);

  std::size_t size() const { return symbols_.size(); }
  const std::string& symbol(std::uint32_t idx) const { return symbols_.at(idx); }
  std::optional<std::uint32_t> index_of(std::string_view s) const;
  bool contains(std::string_view s) const { return index_of(s).has_value(); }

  /// True if `base` is an index-preserving prefix of this alphabet.
  bool extends(const Alphabet& base) const;

  const std::vector<std::string>& symbols() const { return symbols_; }

 private:
  Alphabet() = default;
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

/// Identifier tokens: [A-Za-z][A-Za-z0-9_']*
bool is_identifier(std::string_view s);

// A letter is a signed alphabet index packed into one int:
//   +(idx+1)  positive letter,  -(idx+1)  its inverse.
using LetterCode = std::int32_t;

inline LetterCode letter_code(std::uint32_t index, int sign) {
  return sign >= 0 ? LetterCode(index + 1) : -LetterCode(index + 1);
}
inline std::uint32_t letter_index(LetterCode c) {
  return std::uint32_t(c < 0 ? -c : c) - 1;
}
inline int letter_sign(LetterCode c) { return c < 0 ? -1 : +1; }

/// Letter order: by (alphabet index, sign) with +1 before -1.
inline bool letter_less(LetterCode a, LetterCode b) {
  std::uint32_t ia = letter_index(a), ib = letter_index(b);
  if (ia != ib) return ia < ib;
  return a > 0 && b < 0;
}

struct Letter {
  std::uint32_t index;
  int sign;
};

class WordError : public std::runtime_error {
 public:
  explicit WordError(const std::string& what) : std::runtime_error(what) {}
};

/// A finite sequence of signed letters over an alphabet. Words are plain
/// values; reducedness is a property, not an invariant. A default word is
/// empty, over the empty alphabet (a prefix of every alphabet).
class Word {
 public:
  Word();
  explicit Word(AlphabetRef alphabet) : alphabet_(std::move(alphabet)) {
    if (!alphabet_) throw WordError("word requires an alphabet");
  }
  Word(AlphabetRef alphabet, std::vector<LetterCode> letters);

  const AlphabetRef& alphabet() const { return alphabet_; }
  const std::vector<LetterCode>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  LetterCode at(std::size_t i) const { return letters_.at(i); }

  Letter letter(std::size_t i) const {
    LetterCode c = letters_.at(i);
    return Letter{letter_index(c), letter_sign(c)};
  }
  const std::string& symbol(std::size_t i) const {
    return alphabet_->symbol(letter_index(letters_.at(i)));
  }

  bool operator==(const Word& other) const { return letters_ == other.letters_; }
  bool operator!=(const Word& other) const { return !(*this == other); }

 private:
  AlphabetRef alphabet_;
  std::vector<LetterCode> letters_;
};

/// Two alphabets are compatible if one is an index-preserving prefix of the
/// other; letter codes then mean the same thing in both.
bool alphabets_compatible(const Alphabet& a, const Alphabet& b);

/// Unique freely reduced word equal to w in the free group. Linear-time,
/// stack-based; idempotent.
Word free_reduce(const Word& w);
bool is_freely_reduced(const Word& w);

/// Reverse the letters and flip every sign.
Word invert(const Word& w);

/// free_reduce(w1 w2). Throws WordError on alphabet mismatch; the result is
/// over the larger of the two alphabets.
Word concat_reduce(const Word& w1, const Word& w2);

/// Strip mutually inverse first/last letters until none remain.
Word cyclic_reduce(const Word& w);
bool is_cyclically_reduced(const Word& w);

/// Left rotation by k positions.
Word rotate(const Word& w, std::size_t k);

/// Shortlex order driven by letter_less.
bool shortlex_less(const Word& a, const Word& b);

/// Canonical representative of a word's orbit under cyclic shifts and
/// inversion: cyclically reduced and least among all rotations of itself and
/// of its inverse. Construction rejects words that reduce to the empty word.
class CyclicWord {
 public:
  explicit CyclicWord(const Word& w);

  const Word& canonical() const { return canonical_; }
  std::size_t size() const { return canonical_.size(); }

  bool operator==(const CyclicWord& other) const {
    return canonical_ == other.canonical_;
  }
  bool operator!=(const CyclicWord& other) const { return !(*this == other); }

 private:
  Word canonical_;
};

// Text syntax: whitespace-separated tokens; `tok` is a +1 letter and `~tok`
// its inverse; the empty string is the empty word.
Word parse_word(const AlphabetRef& alphabet, std::string_view text);
std::string format_word(const Word& w);

/// Same word over a different alphabet, translating letters by symbol name.
/// Throws WordError if a symbol is missing from the target.
Word translate(const Word& w, const AlphabetRef& target);

struct LetterVecHash {
  std::size_t operator()(const std::vector<LetterCode>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (LetterCode c : v) {
      h ^= std::size_t(std::uint32_t(c));
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace smkit
