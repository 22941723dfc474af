#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cgt/intlattice.hpp"
#include "cgt/presentation.hpp"
#include "cgt/words.hpp"

namespace cgt {

/// Finite simplicial graph: no loops, no repeated edges.
class SimplicialGraph {
 public:
  SimplicialGraph() = default;
  SimplicialGraph(std::size_t vertex_count,
                  const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  static SimplicialGraph path(std::size_t n);
  static SimplicialGraph cycle(std::size_t n);
  static SimplicialGraph complete(std::size_t n);

  std::size_t vertex_count() const { return n_; }
  bool adjacent(std::size_t u, std::size_t v) const { return adj_[u * n_ + v] != 0; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }

 private:
  std::size_t n_ = 0;
  std::vector<char> adj_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

/// No induced cycle of length >= 4 (chordality, via a perfect elimination
/// ordering from maximum cardinality search).
bool check_droms_coherent(const SimplicialGraph& g);

/// Size of the largest clique; 0 for the empty graph.
std::size_t dimension(const SimplicialGraph& g);

class RaagPresentation {
 public:
  RaagPresentation(SimplicialGraph graph, GenAlphabet alphabet);

  /// {"vertices": [...], "edges": [[u, v], ...]}
  static RaagPresentation from_json(const std::string& text);
  std::string to_json() const;

  const SimplicialGraph& graph() const { return graph_; }
  const GenAlphabet& alphabet() const { return alphabet_; }
  bool commutes(std::uint32_t a, std::uint32_t b) const { return graph_.adjacent(a, b); }

  /// Commutator relators, one per edge.
  FinitePresentation presentation() const;

  /// Canonical form: reduced modulo commutation, then the shortlex-least
  /// rearrangement.
  Word normal_form(const Word& w) const;
  bool word_problem(const Word& w) const { return normal_form(w).empty(); }
  bool equal(const Word& u, const Word& v) const { return normal_form(u * v.inverse()).empty(); }

  /// Cyclically reduced core and conjugator (w = c * core * c^-1 in the group).
  CyclicReduction cyclic_normal_form(const Word& w) const;
  bool conjugacy_problem(const Word& u, const Word& v) const;

  /// Positions of letters that can be commuted to the front of a reduced word.
  std::vector<std::size_t> front_movable(const Word& w) const;
  std::vector<std::size_t> back_movable(const Word& w) const;

 private:
  Word reduce(const Word& w) const;
  Word lex_least(Word w) const;

  SimplicialGraph graph_;
  GenAlphabet alphabet_;
};

/// The path a - b - c - d.
RaagPresentation p4();

/// Homomorphism to Z^n given by one image vector per generator.
struct HomToZn {
  std::size_t target_rank = 0;
  std::vector<std::vector<long long>> images;
};

std::vector<long long> eval_hom(const HomToZn& h, const Word& w);
bool in_kernel(const HomToZn& h, const Word& w);

struct BallResult {
  std::vector<Word> elements;  // normal forms, shortlex sorted
  bool overflow = false;
};

/// All elements of normal-form length <= radius, unless more than
/// max_elements would be produced.
BallResult enumerate_ball(const RaagPresentation& p, std::size_t radius,
                          std::size_t max_elements = 5'000'000);

enum class Verdict { Yes, No, Unknown };
const char* to_string(Verdict v);

struct MultiConjugacyResult {
  Verdict verdict = Verdict::Unknown;
  Word witness;  // for Yes: g with g u_i g^-1 = v_i
  std::size_t failing_pair = 0;
  std::string obstruction;  // for No
  std::size_t candidates_checked = 0;
};

MultiConjugacyResult multiple_conjugacy(const RaagPresentation& p,
                                        const std::vector<std::pair<Word, Word>>& pairs,
                                        std::size_t radius);

}  // namespace cgt
