#include "cgt/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace cgt {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedWord: return "malformed-word";
    case ErrorKind::MalformedInput: return "malformed-input";
    case ErrorKind::DegenerateEdge: return "degenerate-edge";
    case ErrorKind::NotInClosure: return "not-in-closure";
    case ErrorKind::UnsupportedParameters: return "unsupported-parameters";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Budget: return "budget";
    case ErrorKind::ConstructionUnavailable: return "construction-unavailable";
  }
  return "unknown";
}

Word Word::power(std::uint32_t gen, long long e) {
  Word w;
  Letter l{gen, static_cast<std::int8_t>(e < 0 ? -1 : 1)};
  for (long long i = 0; i < (e < 0 ? -e : e); ++i) w.push_back(l);
  return w;
}

Word Word::inverse() const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverse());
  return w;
}

Word& Word::operator*=(const Word& rhs) {
  letters_.insert(letters_.end(), rhs.letters_.begin(), rhs.letters_.end());
  return *this;
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].key() != b[i].key()) return a[i].key() < b[i].key();
  }
  return false;
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (const auto& l : w) {
    h ^= l.key() + 1;
    h *= 1099511628211ull;
  }
  return h;
}

GenAlphabet::GenAlphabet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw Error(ErrorKind::MalformedInput, "alphabet must be non-empty");
  for (std::uint32_t i = 0; i < names_.size(); ++i) {
    const auto& n = names_[i];
    if (n.empty() || n == "1" || n.find_first_of(" \t\n^,") != std::string::npos) {
      throw Error(ErrorKind::MalformedInput, "invalid generator symbol '" + n + "'");
    }
    if (!index_.emplace(n, i).second) {
      throw Error(ErrorKind::MalformedInput, "duplicate generator symbol '" + n + "'");
    }
  }
}

std::optional<std::uint32_t> GenAlphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Word GenAlphabet::parse(std::string_view text) const {
  Word w;
  std::istringstream in{std::string(text)};
  std::string token;
  std::vector<std::string> tokens;
  while (in >> token) tokens.push_back(token);
  if (tokens.size() == 1 && tokens[0] == "1") return w;
  for (const auto& tok : tokens) {
    auto caret = tok.find('^');
    std::string sym = tok.substr(0, caret);
    long long exp = 1;
    if (caret != std::string::npos) {
      std::string_view e(tok);
      e.remove_prefix(caret + 1);
      auto [ptr, ec] = std::from_chars(e.data(), e.data() + e.size(), exp);
      if (ec != std::errc() || ptr != e.data() + e.size() || exp == 0) {
        throw Error(ErrorKind::MalformedWord, "bad exponent in token '" + tok + "'");
      }
    }
    auto gen = find(sym);
    if (!gen) throw Error(ErrorKind::MalformedWord, "unknown generator '" + sym + "'");
    w *= Word::power(*gen, exp);
  }
  return w;
}

std::string GenAlphabet::format(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += name(w[i].gen);
    if (w[i].sign < 0) out += "^-1";
  }
  return out;
}

void GenAlphabet::check(const Word& w) const {
  for (const auto& l : w) {
    if (l.gen >= names_.size() || (l.sign != 1 && l.sign != -1)) {
      throw Error(ErrorKind::MalformedWord, "letter index out of range");
    }
  }
}

Word free_reduce(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (const auto& l : w) {
    if (!out.empty() && is_inverse_pair(out.back(), l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return Word(std::move(out));
}

bool is_freely_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (is_inverse_pair(w[i - 1], w[i])) return false;
  }
  return true;
}

CyclicReduction cyclically_reduce(const Word& w) {
  std::size_t lo = 0, hi = w.size();
  while (hi - lo >= 2 && is_inverse_pair(w[lo], w[hi - 1])) {
    ++lo;
    --hi;
  }
  CyclicReduction r;
  r.conjugator = Word(std::vector<Letter>(w.begin(), w.begin() + lo));
  r.core = Word(std::vector<Letter>(w.begin() + lo, w.begin() + hi));
  return r;
}

std::vector<long long> exponent_sums(const Word& w, std::size_t alphabet_size) {
  std::vector<long long> sums(alphabet_size, 0);
  for (const auto& l : w) sums.at(l.gen) += l.sign;
  return sums;
}

ReducedWordEnumerator::ReducedWordEnumerator(std::size_t alphabet_size, std::size_t max_length)
    : alphabet_size_(alphabet_size), max_length_(max_length) {}

void ReducedWordEnumerator::restart() {
  started_ = false;
  done_ = false;
  length_ = 0;
  keys_.clear();
}

// Keys k and k^1 are mutually inverse letters.
bool ReducedWordEnumerator::advance_from(std::size_t pos) {
  const std::uint32_t limit = static_cast<std::uint32_t>(2 * alphabet_size_);
  for (std::size_t p = pos + 1; p-- > 0;) {
    std::uint32_t k = keys_[p] + 1;
    if (p > 0 && k == (keys_[p - 1] ^ 1u)) ++k;
    if (k >= limit) continue;
    keys_[p] = k;
    for (std::size_t q = p + 1; q < keys_.size(); ++q) {
      keys_[q] = (keys_[q - 1] ^ 1u) == 0 ? 1 : 0;
    }
    return true;
  }
  return false;
}

bool ReducedWordEnumerator::first_at_length(std::size_t length) {
  if (length > max_length_ || (length > 0 && alphabet_size_ == 0)) return false;
  keys_.assign(length, 0);
  for (std::size_t q = 1; q < length; ++q) keys_[q] = (keys_[q - 1] ^ 1u) == 0 ? 1 : 0;
  length_ = length;
  return true;
}

std::optional<Word> ReducedWordEnumerator::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    first_at_length(0);
  } else if (length_ == 0 || !advance_from(length_ - 1)) {
    if (!first_at_length(length_ + 1)) {
      done_ = true;
      return std::nullopt;
    }
  }
  Word w;
  w.letters().reserve(keys_.size());
  for (auto k : keys_) w.push_back(Letter{k / 2, static_cast<std::int8_t>(k % 2 ? -1 : 1)});
  return w;
}

std::vector<Word> enumerate_reduced_words(std::size_t alphabet_size, std::size_t max_length) {
  std::vector<Word> out;
  ReducedWordEnumerator e(alphabet_size, max_length);
  while (auto w = e.next()) out.push_back(std::move(*w));
  return out;
}

std::uint64_t reduced_word_count(std::size_t alphabet_size, std::size_t max_length) {
  std::uint64_t total = 1, layer = 2 * alphabet_size;
  for (std::size_t l = 1; l <= max_length; ++l) {
    total += layer;
    layer *= (2 * alphabet_size - 1);
  }
  return total;
}

}  // namespace cgt
