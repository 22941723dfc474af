#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "cgt/presentation.hpp"

namespace cgt {

using Int = mpz_class;
using IntVec = std::vector<Int>;

IntVec make_vec(std::initializer_list<long long> xs);
std::string to_string(const IntVec& v);

/// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  IntMatrix operator*(const IntMatrix& rhs) const;
  IntVec operator*(const IntVec& v) const;
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  /// Exact determinant of a square matrix (fraction-free elimination).
  Int determinant() const;

  /// JSON array of arrays; entries beyond 64 bits are decimal strings.
  std::string to_json() const;
  static IntMatrix from_json(const std::string& text);

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& k);
  void add_col_multiple(std::size_t dst, std::size_t src, const Int& k);
  void negate_row(std::size_t r);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> entries_;
};

/// U * A * V = D with U, V unimodular and D diagonal, nonnegative, and each
/// nonzero diagonal entry dividing the next.
struct SmithDecomposition {
  IntMatrix U, D, V;

  std::vector<Int> diagonal() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

/// k with u = k * v, if any. Throws DegenerateEdge on v = 0.
std::optional<Int> cyclic_membership(const IntVec& v, const IntVec& u);

/// gcd of the entries (nonnegative).
Int content(const IntVec& v);

/// True iff gcd of entries is 1. Throws DegenerateEdge on v = 0.
bool is_primitive(const IntVec& v);

/// Unimodular change of basis taking v to d * e_1, d = content(v) > 0.
struct CyclicBasis {
  Int d;
  IntMatrix U;     // U * v = d e_1
  IntMatrix Uinv;  // U^-1
};

/// Computed once per vector value; the memo is shared and thread-safe.
const CyclicBasis& cyclic_basis(const IntVec& v);

/// Canonical representative of u + <v>: in the basis of cyclic_basis(v) the
/// first coordinate is reduced into [0, d).
IntVec coset_representative(const IntVec& v, const IntVec& u);

/// Representative plus the multiple: u = rep + k * v.
struct CosetSplit {
  IntVec rep;
  Int k;
};
CosetSplit coset_split(const IntVec& v, const IntVec& u);

/// <a> ∩ <b> for nonzero a, b of equal length: generator, or nullopt if the
/// intersection is trivial. The generator is the positive multiple of a.
std::optional<Int> cyclic_intersection_multiplier(const IntVec& a, const IntVec& b);

struct AbelianInvariants {
  std::size_t rank = 0;
  std::vector<Int> torsion;  // entries > 1, in divisibility order

  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

/// Relation matrix of exponent sums (one row per relator).
IntMatrix relation_matrix(const FinitePresentation& p);

AbelianInvariants abelianization_invariants(const FinitePresentation& p);

/// Membership of `target` in the integer span of `gens` (lattice membership).
/// Returns integer coefficients when it lies in the span.
std::optional<std::vector<Int>> lattice_membership(const std::vector<IntVec>& gens,
                                                   const IntVec& target);

}  // namespace cgt
