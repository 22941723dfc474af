#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cgt/presentation.hpp"

namespace cgt {

/// Permutation of {0, ..., n-1}; p[i] is the image of i. Words act on the
/// right, so the image of u v is "apply u, then v".
using Perm = std::vector<std::uint32_t>;

Perm perm_identity(std::size_t n);
Perm perm_then(const Perm& first, const Perm& second);
Perm perm_inverse(const Perm& p);
bool perm_is_identity(const Perm& p);
/// Cycle notation on 1..n, "()" for the identity.
std::string perm_cycles(const Perm& p);

/// Brute-force closure; throws Budget when the group exceeds `max_order`.
bool perm_group_contains(const std::vector<Perm>& gens, const Perm& g, std::size_t n,
                         std::size_t max_order = 1u << 20);
std::size_t perm_group_order(const std::vector<Perm>& gens, std::size_t n,
                             std::size_t max_order = 1u << 20);

struct CosetTable {
  enum class Status { Closed, Overflow };

  Status status = Status::Overflow;
  std::size_t num_gens = 0;
  /// Closed tables only: rows[c][2*g] = c.g, rows[c][2*g+1] = c.g^-1.
  std::vector<std::vector<std::uint32_t>> rows;
  std::size_t cosets_defined = 0;

  bool closed() const { return status == Status::Closed; }
  std::size_t index() const { return rows.size(); }
  std::uint32_t act(std::uint32_t coset, const Letter& l) const {
    return rows[coset][l.key()];
  }
  std::uint32_t act(std::uint32_t coset, const Word& w) const;
  /// The permutation of cosets induced by a generator.
  Perm generator_perm(std::uint32_t gen) const;

  std::string to_csv(const GenAlphabet& alphabet) const;
  std::string to_json() const;
  static CosetTable from_json(const std::string& text);
};

/// HLT enumeration without lookahead. Overflow once more than `max_cosets`
/// cosets are live, or after 64 * max_cosets definitions in total. The
/// closed table is renumbered in breadth-first order.
CosetTable todd_coxeter(const FinitePresentation& p, const std::vector<Word>& subgens,
                        std::size_t max_cosets);

/// Empty string if the table is a valid closed table for (p, subgens),
/// otherwise a description of the first failure.
std::string validate_coset_table(const FinitePresentation& p, const std::vector<Word>& subgens,
                                 const CosetTable& table);

struct SchreierData {
  FinitePresentation presentation;
  /// Transversal word for each coset.
  std::vector<Word> transversal;
  /// (coset, generator) -> Schreier generator index, or -1 on tree edges.
  std::vector<std::vector<long>> generator_of;
};

/// Schreier generators named "<gen>_<coset>"; relators are the rewrites of
/// every relator at every coset, freely reduced, empties dropped.
SchreierData reidemeister_schreier(const FinitePresentation& p, const CosetTable& table);
/// Rewrites a word representing a subgroup element into Schreier generators.
Word schreier_rewrite(const SchreierData& s, const CosetTable& table, const Word& w);

struct PermAssignment {
  std::size_t degree = 0;
  std::vector<Perm> images;  // one per generator

  Perm evaluate(const Word& w) const;
  std::string to_json() const;
  static PermAssignment from_json(const std::string& text);
};

/// Every relator evaluates to the identity.
bool is_homomorphism(const FinitePresentation& p, const PermAssignment& a);

/// Backtracking over generator images in lexicographic order of permutations
/// (as image lists), checking each relator as soon as all of its generators
/// are assigned. `budget` bounds the number of partial assignments tried;
/// when it runs out, next() returns nothing until add_budget() is called.
class HomEnumerator {
 public:
  HomEnumerator(const FinitePresentation& p, std::size_t degree, std::size_t budget);

  std::optional<PermAssignment> next();
  bool budget_exhausted() const { return exhausted_; }
  bool finished() const { return done_; }
  void add_budget(std::size_t extra) {
    budget_ += extra;
    exhausted_ = false;
  }
  std::size_t nodes() const { return nodes_; }

 private:
  bool consistent_at(std::size_t level) const;

  const FinitePresentation& p_;
  std::size_t degree_, budget_;
  std::vector<Perm> perms_;
  std::vector<std::vector<std::size_t>> relators_at_;  // level -> relators closing there
  std::vector<std::size_t> choice_;
  std::size_t level_ = 0;
  std::size_t nodes_ = 0;
  bool done_ = false, exhausted_ = false;
};

struct HomEnumeration {
  std::vector<PermAssignment> homs;
  bool budget_exhausted = false;
  std::size_t nodes = 0;
};
HomEnumeration enumerate_homs(const FinitePresentation& p, std::size_t degree, std::size_t budget);

struct SeparationCertificate {
  PermAssignment assignment;
  std::vector<Perm> subgroup_images;
  Perm g_image;
  std::size_t subgroup_order = 0;
};

struct SeparationResult {
  std::optional<SeparationCertificate> certificate;
  std::size_t nodes = 0;
  bool budget_exhausted = false;
};

/// First assignment of degree 1..n_max (in enumeration order) sending g
/// outside the image of <subgens>.
SeparationResult separate(const FinitePresentation& p, const std::vector<Word>& subgens,
                          const Word& g, std::size_t n_max, std::size_t budget);
bool verify_separation(const FinitePresentation& p, const std::vector<Word>& subgens,
                       const Word& g, const SeparationCertificate& cert);

}  // namespace cgt
