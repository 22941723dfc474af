#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cgt/error.hpp"

namespace cgt {

/// A signed generator letter. `gen` indexes into a GenAlphabet.
struct Letter {
  std::uint32_t gen = 0;
  std::int8_t sign = 1;

  Letter inverse() const { return {gen, static_cast<std::int8_t>(-sign)}; }

  // Shortlex letter key: (gen, +) < (gen, -) < (gen + 1, +) ...
  std::uint32_t key() const { return 2 * gen + (sign < 0 ? 1u : 0u); }

  friend bool operator==(const Letter&, const Letter&) = default;
  friend bool operator<(const Letter& a, const Letter& b) { return a.key() < b.key(); }
};

inline bool is_inverse_pair(Letter a, Letter b) {
  return a.gen == b.gen && a.sign == -b.sign;
}

/// A finite sequence of letters. Not necessarily reduced.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}

  static Word generator(std::uint32_t gen, int sign = 1) {
    return Word({Letter{gen, static_cast<std::int8_t>(sign)}});
  }
  /// g^e as |e| copies of g or g^-1.
  static Word power(std::uint32_t gen, long long e);

  const std::vector<Letter>& letters() const { return letters_; }
  std::vector<Letter>& letters() { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  void push_back(Letter l) { letters_.push_back(l); }
  Word inverse() const;
  Word& operator*=(const Word& rhs);
  friend Word operator*(Word lhs, const Word& rhs) { return lhs *= rhs; }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

/// Total shortlex order on words using the letter key.
bool shortlex_less(const Word& a, const Word& b);

struct ShortlexLess {
  bool operator()(const Word& a, const Word& b) const { return shortlex_less(a, b); }
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

/// Ordered list of distinct generator symbols.
class GenAlphabet {
 public:
  GenAlphabet() = default;
  explicit GenAlphabet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::uint32_t gen) const { return names_.at(gen); }
  std::optional<std::uint32_t> find(std::string_view name) const;

  /// Parses `a b^-1 c`, `x^5`, or `1` for the identity. Tokens are separated
  /// by whitespace; `^k` accepts any nonzero integer exponent.
  Word parse(std::string_view text) const;
  std::string format(const Word& w) const;

  /// Throws MalformedWord if some letter is out of range.
  void check(const Word& w) const;

  friend bool operator==(const GenAlphabet& a, const GenAlphabet& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

/// Cancels adjacent inverse pairs until none remain.
Word free_reduce(const Word& w);

bool is_freely_reduced(const Word& w);

struct CyclicReduction {
  Word core;
  Word conjugator;  // w = conjugator * core * conjugator^-1
};

/// Requires a freely reduced word.
CyclicReduction cyclically_reduce(const Word& w);

/// Sum of signs per generator.
std::vector<long long> exponent_sums(const Word& w, std::size_t alphabet_size);

/// Emits every freely reduced word of length <= max_length over an alphabet
/// of `alphabet_size` generators, once each, in shortlex order.
class ReducedWordEnumerator {
 public:
  ReducedWordEnumerator(std::size_t alphabet_size, std::size_t max_length);

  std::optional<Word> next();
  void restart();

 private:
  bool advance_from(std::size_t pos);
  bool first_at_length(std::size_t length);

  std::size_t alphabet_size_;
  std::size_t max_length_;
  std::size_t length_ = 0;
  std::vector<std::uint32_t> keys_;
  bool started_ = false;
  bool done_ = false;
};

std::vector<Word> enumerate_reduced_words(std::size_t alphabet_size, std::size_t max_length);

/// Closed-form count 1 + sum_{l=1..L} 2k(2k-1)^{l-1} of reduced words.
std::uint64_t reduced_word_count(std::size_t alphabet_size, std::size_t max_length);

}  // namespace cgt
