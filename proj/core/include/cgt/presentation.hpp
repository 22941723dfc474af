#pragma once

#include <string>
#include <vector>

#include "cgt/words.hpp"

namespace cgt {

/// A finite presentation <alphabet | relators>. Relators are kept freely
/// reduced; empty relators are dropped.
struct FinitePresentation {
  GenAlphabet alphabet;
  std::vector<Word> relators;

  FinitePresentation() = default;
  FinitePresentation(GenAlphabet a, std::vector<Word> rels);

  /// Same presentation with extra relators adjoined.
  FinitePresentation with_relators(const std::vector<Word>& extra) const;

  std::string to_json() const;
  static FinitePresentation from_json(const std::string& text);
};

/// Commutator [u, v] = u v u^-1 v^-1.
Word commutator(const Word& u, const Word& v);

}  // namespace cgt
