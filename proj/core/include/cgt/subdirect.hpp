#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cgt/gog.hpp"
#include "cgt/intlattice.hpp"
#include "cgt/quotients.hpp"
#include "cgt/raag.hpp"

namespace cgt {

/// A group with a solvable word problem: a RAAG, a graph of groups, or the
/// direct product of two such groups over the union of their alphabets.
class GroupModel {
 public:
  enum class Kind { Raag, Gog, Product };

  static GroupModel raag(RaagPresentation p);
  static GroupModel gog(GraphOfGroups g);
  /// Alphabets must be disjoint.
  static GroupModel product(GroupModel first, GroupModel second);

  /// {"raag": {...}} | {"gog": {...}} | {"product": [A, B]}
  static GroupModel from_json(const std::string& text);
  std::string to_json() const;

  Kind kind() const { return kind_; }
  const GenAlphabet& alphabet() const { return alphabet_; }
  const FinitePresentation& presentation() const { return presentation_; }
  const RaagPresentation* as_raag() const { return raag_.get(); }
  const GraphOfGroups* as_gog() const { return gog_.get(); }
  const GroupModel& factor(int side) const;

  Word normal_form(const Word& w) const;
  bool word_problem(const Word& w) const;
  bool equal(const Word& u, const Word& v) const { return word_problem(u * v.inverse()); }

  /// For products: the letters of w on one side, re-indexed to that factor.
  Word side_part(const Word& w, int side) const;
  /// Embeds a factor word into the product alphabet.
  Word embed(const Word& w, int side) const;

  /// Exact membership of g in <gens> when one is available: free-abelian
  /// RAAGs (lattice membership) and subgroups of a RAAG generated by
  /// vertices (normal-form support). Unavailable otherwise.
  bool has_membership_decision(const std::vector<Word>& gens) const;
  std::optional<bool> decide_membership(const std::vector<Word>& gens, const Word& g) const;

 private:
  GroupModel() = default;

  Kind kind_ = Kind::Raag;
  std::shared_ptr<const RaagPresentation> raag_;
  std::shared_ptr<const GraphOfGroups> gog_;
  std::shared_ptr<const GroupModel> first_, second_;
  GenAlphabet alphabet_;
  FinitePresentation presentation_;
};

struct PairWord {
  Word first, second;
  friend bool operator==(const PairWord&, const PairWord&) = default;
};

/// S <= G1 x G2 generated by pairs; abstract generator i is named names[i].
struct SubdirectInput {
  GroupModel g1, g2;
  std::vector<PairWord> generators;
  GenAlphabet names;
  std::vector<Word> relators;  // over `names`

  SubdirectInput(GroupModel a, GroupModel b, std::vector<PairWord> gens,
                 std::vector<Word> rels = {});

  /// {"ambient": {"G1": model, "G2": model}, "generators": [["w1","w2"],...],
  ///  "relators": [...]}. Generators are named s1, s2, ...
  static SubdirectInput from_json(const std::string& text);
  std::string to_json() const;

  const GroupModel& factor(int side) const { return side == 1 ? g1 : g2; }
  GroupModel ambient() const { return GroupModel::product(g1, g2); }
  /// Generators as words in the product alphabet.
  std::vector<Word> product_generators() const;
};

/// Substitutes the side-th coordinates of the generators and freely reduces.
Word project(const SubdirectInput& s, int side, const Word& abstract_word);

struct FiberWitness {
  Word abstract_word;
  PairWord element;  // trivial off-side
};

struct FiberReport {
  int side = 1;
  std::vector<FiberWitness> found;
  std::size_t radius_searched = 0;
  std::size_t words_checked = 0;
};

/// Abstract words up to `radius` whose off-side projection is trivial and
/// on-side projection nontrivial, deduplicated by on-side normal form.
FiberReport fiber_search(const SubdirectInput& s, int side, std::size_t radius);

struct SearchBudget {
  std::size_t max_length = 8;
  std::size_t max_degree = 4;
  std::size_t max_steps = 1'000'000;
};

struct MembershipResult {
  Verdict verdict = Verdict::Unknown;
  Word witness_abstract;  // over the H-generator indices
  Word witness;           // the product in G
  std::optional<SeparationCertificate> separation;
  std::size_t positive_steps = 0, negative_steps = 0;
  bool positive_exhausted = false, negative_exhausted = false;
};

/// Interleaves, in 1:1 slices of the step budget, a shortlex search for a
/// product w of H-generators with g^-1 w = 1 and an enumeration of
/// permutation representations separating g from H.
MembershipResult membership_semidecide(const GroupModel& d, const std::vector<Word>& h_gens,
                                       const Word& g, const SearchBudget& budget);
bool verify_membership_witness(const GroupModel& d, const std::vector<Word>& h_gens,
                               const Word& g, const Word& witness_abstract);

struct CoverResult {
  enum class Kind { Covered, Uncovered, Unknown } kind = Kind::Unknown;
  std::size_t radius = 0;
  Word witness;  // first element without a factorisation
  bool decidable = false;
  std::size_t elements_checked = 0;
  struct Factorisation {
    Word g;
    std::size_t coset = 0;
    long power = 0;
    Word h;  // product of subgroup generators, or g c^-i z^-1 when decided
  };
  std::vector<Factorisation> factorisations;
};
const char* to_string(CoverResult::Kind k);

/// Checks G = U_j H z_j <c> on the ball of the given radius, where
/// H = <subgens, extra>, looking for g = h z_j c^i with h a product of at
/// most witness_budget generators of H and |i| <= witness_budget.
CoverResult coset_cover_check(const GroupModel& g, const std::vector<Word>& subgens,
                              const std::vector<Word>& extra, const std::vector<Word>& cosets,
                              const Word& c, std::size_t radius, std::size_t witness_budget);

/// G's presentation with the given words adjoined as relators.
FinitePresentation quotient_presentation(const GroupModel& g, const std::vector<Word>& words);

struct ClassifyBudget {
  std::size_t fiber_radius = 3;
  std::size_t max_cosets = 2000;
};

struct StructureReport {
  FiberReport fiber1, fiber2;
  FinitePresentation quotient1, quotient2;
  AbelianInvariants ab1, ab2;
  CosetTable index_table;  // S in G1 x G2
  std::optional<std::size_t> index;
  std::string bucket;  // finite-index | Z-kernel | Z2-kernel | unknown
  std::vector<std::string> notes;

  std::string to_json(const SubdirectInput& s) const;
};

StructureReport classify_structure(const SubdirectInput& s, const ClassifyBudget& budget);

}  // namespace cgt
