#pragma once

// Independent word-problem oracle for RAAGs. It never calls the library's
// normal form: it closes a word under commuting swaps of adjacent letters
// and deletions of adjacent inverse pairs, then takes the shortlex-least
// word of minimal length. Two words give the same result exactly when they
// are equal in the group.

#include <algorithm>
#include <deque>
#include <set>

#include "cgt/raag.hpp"

namespace cgt::oracle {

inline Word rewrite_canonical(const RaagPresentation& p, const Word& start) {
  std::set<Word, ShortlexLess> seen{start};
  std::deque<Word> queue{start};
  Word best = start;
  while (!queue.empty()) {
    Word w = std::move(queue.front());
    queue.pop_front();
    if (shortlex_less(w, best)) best = w;
    const auto& ls = w.letters();
    for (std::size_t i = 0; i + 1 < ls.size(); ++i) {
      Word next;
      if (is_inverse_pair(ls[i], ls[i + 1])) {
        std::vector<Letter> shorter(ls.begin(), ls.begin() + i);
        shorter.insert(shorter.end(), ls.begin() + i + 2, ls.end());
        next = Word(std::move(shorter));
      } else if (ls[i].gen != ls[i + 1].gen && p.commutes(ls[i].gen, ls[i + 1].gen)) {
        next = w;
        std::swap(next.letters()[i], next.letters()[i + 1]);
      } else {
        continue;
      }
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return best;
}

}  // namespace cgt::oracle
