#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cgt/intlattice.hpp"
#include "cgt/presentation.hpp"
#include "cgt/words.hpp"

namespace cgt {

struct GogVertex {
  std::string name;
  std::size_t rank = 1;
  std::vector<std::string> generators;  // one symbol per basis vector
};

/// Cyclic edge group: generator maps to attach_tail in the tail vertex group
/// and to attach_head in the head vertex group. For a non-tree edge with
/// stable letter t the relation is t^-1 attach_tail t = attach_head.
struct GogEdge {
  std::size_t tail = 0, head = 0;
  IntVec attach_tail, attach_head;
  bool tree = false;
  std::string stable_letter;  // non-tree edges only
};

struct Crossing {
  std::size_t edge = 0;
  bool forward = true;  // tail -> head

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

/// Path in the graph of groups: g_0 e_1 g_1 ... e_k g_k with g_i in the
/// vertex group at the i-th vertex visited. Group elements are loops at the
/// base vertex.
struct GogElement {
  std::size_t start = 0;
  std::vector<IntVec> vertex_elems;  // crossings.size() + 1 entries
  std::vector<Crossing> crossings;

  bool is_vertex_element() const { return crossings.empty(); }
  friend bool operator==(const GogElement&, const GogElement&) = default;
};

enum class Isometry { Elliptic, Hyperbolic };
const char* to_string(Isometry i);

struct LoopReport {
  std::size_t edge = 0;
  Int m, n;
  bool comparable = true;
  bool unimodular = false;  // |m| == |n|
};

struct KernelOfAction {
  enum class Kind { Trivial, Cyclic, Unknown } kind = Kind::Unknown;
  Word generator;     // c^k as a word, for Cyclic
  IntVec base_vector;  // c^k in the base vertex group
  Int k;              // the power of the intersection generator c
  std::string note;
  std::vector<LoopReport> stable_letter_ratios;
};
const char* to_string(KernelOfAction::Kind k);

struct WpdCheck {
  enum class Kind { Verified, Counterexample, Unknown } kind = Kind::Unknown;
  std::size_t radius = 0;
  std::size_t vertex = 0;  // for Counterexample / Unknown
  IntVec h;
  std::size_t candidates_checked = 0;
  std::string note;
};
const char* to_string(WpdCheck::Kind k);

class GraphOfGroups {
 public:
  GraphOfGroups(std::vector<GogVertex> vertices, std::vector<GogEdge> edges);

  /// {"vertices":[{"name","rank",["generators"]}],
  ///  "edges":[{"tail","head","attach_tail","attach_head","tree",["stable"]}]}
  static GraphOfGroups from_json(const std::string& text);
  std::string to_json() const;

  const std::vector<GogVertex>& vertices() const { return vertices_; }
  const std::vector<GogEdge>& edges() const { return edges_; }
  const GenAlphabet& alphabet() const { return alphabet_; }
  std::size_t base() const { return 0; }

  /// Vertex generators plus stable letters; commutators inside vertex groups
  /// and one relation per edge.
  FinitePresentation presentation() const;

  GogElement identity(std::size_t vertex) const;
  GogElement vertex_element(std::size_t vertex, IntVec v) const;
  GogElement from_word(const Word& w) const;
  /// Requires a loop at the base vertex.
  Word to_word(const GogElement& g) const;

  GogElement multiply(const GogElement& a, const GogElement& b) const;
  GogElement inverse(const GogElement& g) const;
  /// Tree path from the base vertex to v.
  GogElement tree_path(std::size_t v) const;
  /// Loop at v: tree_path(v)^-1 * g * tree_path(v).
  GogElement rebase(const GogElement& g, std::size_t v) const;

  /// Pinch-free with canonical coset representatives; equal elements give
  /// equal results.
  GogElement britton_reduce(const GogElement& g) const;
  Word normal_form(const Word& w) const { return to_word(britton_reduce(from_word(w))); }
  bool word_problem(const Word& w) const;
  bool is_trivial(const GogElement& g) const;

  /// Number of crossings left after cyclic reduction (0 iff elliptic).
  std::size_t cyclic_length(const GogElement& g) const;
  Isometry classify_isometry(const GogElement& g) const;
  Isometry classify_isometry(const Word& w) const { return classify_isometry(from_word(w)); }

  /// Moves a vertex-group vector from `from` to `to` across the tree when it
  /// lies in every edge image along the way.
  std::optional<IntVec> transport(const IntVec& v, std::size_t from, std::size_t to) const;

  std::vector<LoopReport> unimodular_loop_check() const;
  bool has_isolated_edge_groups() const;

  struct WpdCandidate {
    Word word;
    std::vector<IntVec> vertex_choices;  // a_v per vertex
  };
  WpdCandidate wpd_candidate() const;

  KernelOfAction kernel_of_action() const;
  WpdCheck check_relative_wpd(const Word& g, std::size_t radius) const;

  Word vertex_word(std::size_t vertex, const IntVec& v) const;

 private:
  const IntVec& side_vector(const Crossing& c, bool at_start) const;
  const IntVec& other_side_vector(const Crossing& c, bool at_start) const;
  std::size_t crossing_start(const Crossing& c) const;
  std::size_t crossing_end(const Crossing& c) const;
  std::size_t end_vertex(const GogElement& g) const;
  std::vector<Crossing> tree_route(std::size_t from, std::size_t to) const;

  std::vector<GogVertex> vertices_;
  std::vector<GogEdge> edges_;
  GenAlphabet alphabet_;
  // generator index -> (vertex, coordinate) or stable-letter edge
  struct GenInfo {
    bool stable = false;
    std::size_t vertex = 0, coord = 0, edge = 0;
  };
  std::vector<GenInfo> gen_info_;
  std::vector<std::size_t> first_gen_;  // per vertex
  std::vector<std::optional<Crossing>> parent_;  // crossing from parent to vertex
  std::vector<std::size_t> depth_;
};

GraphOfGroups baumslag_solitar_gog(long m, long n);
/// <a,b> *_<b> <b2,c> *_<c> <c2,d>, identifying b = b2 and c = c2.
GraphOfGroups p4_splitting();
/// One Z^2 vertex <a,b> with t^-1 a t = b.
GraphOfGroups tubular_ab();
/// Two Z^2 vertices <a,b>, <c,d> glued along a = c, plus t^-1 b t = d.
GraphOfGroups tubular_two_vertex();

}  // namespace cgt
