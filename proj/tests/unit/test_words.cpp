#include <algorithm>
#include <set>

#include "doctest.h"
#include "test_util.hpp"

#include "cgt/words.hpp"

using namespace cgt;
using cgt::testing::random_word;

namespace {
const GenAlphabet abc({"a", "b", "c"});
Word w(const char* s) { return abc.parse(s); }
}  // namespace

TEST_CASE("alphabet parse and format") {
  CHECK(abc.format(w("a b^-1 c")) == "a b^-1 c");
  CHECK(w("1").empty());
  CHECK(w("a^3").size() == 3);
  CHECK(abc.format(w("b^-2")) == "b^-1 b^-1");
  CHECK(abc.format(Word{}) == "1");
  CHECK_THROWS_AS(w("z"), Error);
  CHECK_THROWS_AS(abc.check(Word::generator(7)), Error);
  try {
    abc.check(Word::generator(3));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MalformedWord);
  }
  CHECK_THROWS(GenAlphabet({"a", "a"}));
}

TEST_CASE("free_reduce examples") {
  CHECK(free_reduce(w("a a^-1")).empty());
  CHECK(free_reduce(w("a b b^-1 c")) == w("a c"));
  CHECK(free_reduce(w("a b c")) == w("a b c"));
  CHECK(free_reduce(w("a b c c^-1 b^-1 a^-1")).empty());
}

TEST_CASE("cyclically_reduce examples") {
  auto r = cyclically_reduce(w("a b a^-1"));
  CHECK(r.core == w("b"));
  CHECK(r.conjugator == w("a"));
  r = cyclically_reduce(w("b c"));
  CHECK(r.core == w("b c"));
  CHECK(r.conjugator.empty());
  r = cyclically_reduce(Word{});
  CHECK(r.core.empty());
  CHECK(r.conjugator.empty());
}

TEST_CASE("cyclic reduction reassembles") {
  for (int i = 0; i < 2000; ++i) {
    const Word x = free_reduce(random_word(3, 12));
    const auto r = cyclically_reduce(x);
    CHECK(free_reduce(r.conjugator * r.core * r.conjugator.inverse()) == x);
    if (r.core.size() >= 2) CHECK_FALSE(is_inverse_pair(r.core.letters().front(), r.core.letters().back()));
  }
}

TEST_CASE("free_reduce properties") {
  for (int i = 0; i < 10000; ++i) {
    const Word x = random_word(3, 20);
    const Word r = free_reduce(x);
    CHECK(is_freely_reduced(r));
    CHECK(r.size() <= x.size());
    CHECK(free_reduce(r) == r);
    CHECK(free_reduce(x * x.inverse()).empty());
  }
}

TEST_CASE("exponent sums") {
  const auto s = exponent_sums(w("a b^-1 a c^3 b^-1"), 3);
  CHECK(s == std::vector<long long>{2, -2, 3});
}

TEST_CASE("reduced word enumeration examples") {
  auto e0 = enumerate_reduced_words(2, 0);
  REQUIRE(e0.size() == 1);
  CHECK(e0[0].empty());
  CHECK(enumerate_reduced_words(2, 2).size() == 17);
  const GenAlphabet a1({"a"});
  const auto e1 = enumerate_reduced_words(1, 3);
  std::vector<Word> expect;
  for (const char* s : {"1", "a", "a^-1", "a^2", "a^-2", "a^3", "a^-3"}) expect.push_back(a1.parse(s));
  CHECK(e1 == expect);
}

TEST_CASE("reduced word enumeration matches brute force and closed form") {
  for (std::size_t k = 1; k <= 3; ++k) {
    for (std::size_t len = 0; len <= 5; ++len) {
      const auto words = enumerate_reduced_words(k, len);
      CHECK(words.size() == reduced_word_count(k, len));
      CHECK(std::is_sorted(words.begin(), words.end(), ShortlexLess{}));
      std::set<Word, ShortlexLess> seen(words.begin(), words.end());
      CHECK(seen.size() == words.size());
      for (const auto& x : words) {
        CHECK(is_freely_reduced(x));
        CHECK(seen.count(x.inverse()) == 1);
      }
      // Brute force: all words of length <= len, reduced, deduplicated.
      std::set<Word, ShortlexLess> brute{Word{}};
      std::vector<Word> layer{Word{}};
      for (std::size_t l = 0; l < len; ++l) {
        std::vector<Word> next;
        for (const auto& x : layer) {
          for (std::uint32_t g = 0; g < k; ++g) {
            for (int s : {1, -1}) {
              Word y = x;
              y.push_back(Letter{g, static_cast<std::int8_t>(s)});
              next.push_back(y);
              if (is_freely_reduced(y)) brute.insert(y);
            }
          }
        }
        layer = std::move(next);
      }
      CHECK(brute == seen);
    }
  }
  CHECK(reduced_word_count(2, 2) == 17);
  CHECK(reduced_word_count(3, 4) == 1 + 6 + 30 + 150 + 750);
}

TEST_CASE("enumerator restarts") {
  ReducedWordEnumerator e(2, 2);
  std::size_t first = 0;
  while (e.next()) ++first;
  e.restart();
  std::size_t second = 0;
  while (e.next()) ++second;
  CHECK(first == 17);
  CHECK(second == 17);
}

TEST_CASE("shortlex order puts sign +1 before -1") {
  CHECK(shortlex_less(w("a"), w("a^-1")));
  CHECK(shortlex_less(w("a^-1"), w("b")));
  CHECK(shortlex_less(w("c"), w("a a")));
  CHECK_FALSE(shortlex_less(w("a"), w("a")));
}
