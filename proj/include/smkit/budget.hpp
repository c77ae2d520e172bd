#pragma once

#include <cstdint>
#include <stdexcept>

namespace smkit {

/// Caps for the bounded searches. All fields must stay positive.
struct SearchBudget {
  std::size_t max_word_len = 64;
  std::uint64_t max_nodes = 1000000;
  std::uint64_t max_depth = 10000;

  void check() const {
    if (max_word_len == 0 || max_nodes == 0 || max_depth == 0)
      throw std::invalid_argument("search budget fields must be positive");
  }

  /// Default length cap for a search between two words: 2*max(|a|,|b|)+8.
  static SearchBudget for_pair(std::size_t len_a, std::size_t len_b) {
    SearchBudget b;
    b.max_word_len = 2 * (len_a > len_b ? len_a : len_b) + 8;
    return b;
  }
};

}  // namespace smkit
