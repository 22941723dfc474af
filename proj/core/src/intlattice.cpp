#include "cgt/intlattice.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>

#include <nlohmann/json.hpp>

namespace cgt {

IntVec make_vec(std::initializer_list<long long> xs) {
  IntVec v;
  v.reserve(xs.size());
  for (long long x : xs) v.emplace_back(static_cast<long>(x));
  return v;
}

std::string to_string(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::MalformedInput, "ragged matrix");
    for (long long x : r) entries_.emplace_back(static_cast<long>(x));
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error(ErrorKind::Precondition, "matrix dimension mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if ((*this)(i, k) == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += (*this)(i, k) * rhs(k, j);
    }
  return out;
}

IntVec IntMatrix::operator*(const IntVec& v) const {
  if (cols_ != v.size()) throw Error(ErrorKind::Precondition, "matrix/vector dimension mismatch");
  IntVec out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) out[i] += (*this)(i, k) * v[k];
  return out;
}

Int IntMatrix::determinant() const {
  if (rows_ != cols_) throw Error(ErrorKind::Precondition, "determinant of non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix m = *this;
  Int sign = 1, prev = 1;
  // Bareiss fraction-free elimination.
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Int& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Int& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
}

std::string IntMatrix::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (std::size_t r = 0; r < rows_; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < cols_; ++c) {
      const Int& x = (*this)(r, c);
      if (x.fits_slong_p()) {
        row.push_back(x.get_si());
      } else {
        row.push_back(x.get_str());
      }
    }
    j.push_back(std::move(row));
  }
  return j.dump();
}

IntMatrix IntMatrix::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedInput, std::string("matrix JSON: ") + e.what());
  }
  if (!j.is_array()) throw Error(ErrorKind::MalformedInput, "matrix JSON must be an array");
  IntMatrix m(j.size(), j.empty() ? 0 : j[0].size());
  for (std::size_t r = 0; r < m.rows_; ++r) {
    if (!j[r].is_array() || j[r].size() != m.cols_) {
      throw Error(ErrorKind::MalformedInput, "matrix JSON rows must have equal length");
    }
    for (std::size_t c = 0; c < m.cols_; ++c) {
      const auto& e = j[r][c];
      if (e.is_number_integer()) {
        m(r, c) = Int(std::to_string(e.get<long long>()));
      } else if (e.is_string()) {
        try {
          m(r, c) = Int(e.get<std::string>());
        } catch (const std::invalid_argument&) {
          throw Error(ErrorKind::MalformedInput, "bad integer string in matrix JSON");
        }
      } else {
        throw Error(ErrorKind::MalformedInput, "matrix entries must be integers");
      }
    }
  }
  return m;
}

std::vector<Int> SmithDecomposition::diagonal() const {
  std::vector<Int> d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

namespace {

// Smallest nonzero |entry| in the trailing submatrix; ties by row-major order.
bool find_pivot(const IntMatrix& d, std::size_t t, std::size_t& pr, std::size_t& pc) {
  bool found = false;
  Int best;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      if (d(i, j) == 0) continue;
      Int a = abs(d(i, j));
      if (!found || a < best) {
        found = true;
        best = a;
        pr = i;
        pc = j;
      }
    }
  return found;
}

Int tdiv(const Int& a, const Int& b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a) {
  SmithDecomposition s{IntMatrix::identity(a.rows()), a, IntMatrix::identity(a.cols())};
  IntMatrix& d = s.D;
  const std::size_t n = std::min(a.rows(), a.cols());
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t pr = 0, pc = 0;
    if (!find_pivot(d, t, pr, pc)) break;
    for (;;) {
      d.swap_rows(t, pr);
      s.U.swap_rows(t, pr);
      d.swap_cols(t, pc);
      s.V.swap_cols(t, pc);
      bool clean = true;
      for (std::size_t i = t + 1; i < d.rows(); ++i) {
        if (d(i, t) == 0) continue;
        Int q = tdiv(d(i, t), d(t, t));
        d.add_row_multiple(i, t, -q);
        s.U.add_row_multiple(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < d.cols(); ++j) {
        if (d(t, j) == 0) continue;
        Int q = tdiv(d(t, j), d(t, t));
        d.add_col_multiple(j, t, -q);
        s.V.add_col_multiple(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (clean) {
        // Divisibility: fold a non-divisible row into the pivot row.
        bool divisible = true;
        for (std::size_t i = t + 1; i < d.rows() && divisible; ++i)
          for (std::size_t j = t + 1; j < d.cols(); ++j) {
            if (d(i, j) % d(t, t) != 0) {
              d.add_row_multiple(t, i, 1);
              s.U.add_row_multiple(t, i, 1);
              divisible = false;
              break;
            }
          }
        if (divisible) break;
      }
      find_pivot(d, t, pr, pc);
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      s.U.negate_row(t);
    }
  }
  return s;
}

namespace {

void require_nonzero(const IntVec& v) {
  for (const auto& x : v)
    if (x != 0) return;
  throw Error(ErrorKind::DegenerateEdge, "zero vector where a nonzero edge vector is required");
}

void require_same_dim(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::Precondition, "vector dimension mismatch");
}

}  // namespace

std::optional<Int> cyclic_membership(const IntVec& v, const IntVec& u) {
  require_nonzero(v);
  require_same_dim(v, u);
  std::size_t p = 0;
  while (v[p] == 0) ++p;
  if (u[p] % v[p] != 0) return std::nullopt;
  Int k = u[p] / v[p];
  for (std::size_t i = 0; i < v.size(); ++i)
    if (u[i] != k * v[i]) return std::nullopt;
  return k;
}

Int content(const IntVec& v) {
  Int g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

bool is_primitive(const IntVec& v) {
  require_nonzero(v);
  return content(v) == 1;
}

namespace {

CyclicBasis compute_cyclic_basis(const IntVec& v) {
  const std::size_t r = v.size();
  CyclicBasis b{0, IntMatrix::identity(r), IntMatrix::identity(r)};
  IntVec x = v;
  for (;;) {
    std::size_t p = r;
    for (std::size_t i = 0; i < r; ++i) {
      if (x[i] == 0) continue;
      if (p == r || abs(x[i]) < abs(x[p])) p = i;
    }
    bool others = false;
    for (std::size_t i = 0; i < r; ++i) {
      if (i == p || x[i] == 0) continue;
      Int q = tdiv(x[i], x[p]);
      x[i] -= q * x[p];
      b.U.add_row_multiple(i, p, -q);
      b.Uinv.add_col_multiple(p, i, q);
      if (x[i] != 0) others = true;
    }
    if (others) continue;
    if (p != 0) {
      std::swap(x[0], x[p]);
      b.U.swap_rows(0, p);
      b.Uinv.swap_cols(0, p);
    }
    if (x[0] < 0) {
      x[0] = -x[0];
      b.U.negate_row(0);
      for (std::size_t i = 0; i < r; ++i) b.Uinv(i, 0) = -b.Uinv(i, 0);
    }
    b.d = x[0];
    return b;
  }
}

}  // namespace

const CyclicBasis& cyclic_basis(const IntVec& v) {
  require_nonzero(v);
  static std::shared_mutex mutex;
  static std::map<IntVec, CyclicBasis> memo;
  {
    std::shared_lock lock(mutex);
    auto it = memo.find(v);
    if (it != memo.end()) return it->second;
  }
  CyclicBasis b = compute_cyclic_basis(v);
  std::unique_lock lock(mutex);
  return memo.emplace(v, std::move(b)).first->second;
}

CosetSplit coset_split(const IntVec& v, const IntVec& u) {
  require_same_dim(v, u);
  const CyclicBasis& b = cyclic_basis(v);
  IntVec w = b.U * u;
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), w[0].get_mpz_t(), b.d.get_mpz_t());
  Int k = (w[0] - r) / b.d;
  w[0] = r;
  return {b.Uinv * w, k};
}

IntVec coset_representative(const IntVec& v, const IntVec& u) { return coset_split(v, u).rep; }

std::optional<Int> cyclic_intersection_multiplier(const IntVec& a, const IntVec& b) {
  require_nonzero(a);
  require_nonzero(b);
  require_same_dim(a, b);
  Int ca = content(a), cb = content(b);
  IntVec ua(a.size()), ub(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ua[i] = a[i] / ca;
    ub[i] = b[i] / cb;
  }
  bool same = ua == ub, opposite = true;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (ua[i] != -ub[i]) opposite = false;
  if (!same && !opposite) return std::nullopt;
  Int l;
  mpz_lcm(l.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  return Int(l / ca);
}

IntMatrix relation_matrix(const FinitePresentation& p) {
  IntMatrix m(p.relators.size(), p.alphabet.size());
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    auto sums = exponent_sums(p.relators[r], p.alphabet.size());
    for (std::size_t g = 0; g < sums.size(); ++g) m(r, g) = Int(static_cast<long>(sums[g]));
  }
  return m;
}

AbelianInvariants abelianization_invariants(const FinitePresentation& p) {
  AbelianInvariants inv;
  auto snf = smith_normal_form(relation_matrix(p));
  std::size_t nonzero = 0;
  for (const auto& x : snf.diagonal()) {
    if (x == 0) continue;
    ++nonzero;
    if (x > 1) inv.torsion.push_back(x);
  }
  inv.rank = p.alphabet.size() - nonzero;
  return inv;
}

std::optional<std::vector<Int>> lattice_membership(const std::vector<IntVec>& gens,
                                                   const IntVec& target) {
  const std::size_t dim = target.size();
  if (gens.empty()) {
    for (const auto& x : target)
      if (x != 0) return std::nullopt;
    return std::vector<Int>{};
  }
  IntMatrix a(dim, gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    require_same_dim(gens[j], target);
    for (std::size_t i = 0; i < dim; ++i) a(i, j) = gens[j][i];
  }
  auto s = smith_normal_form(a);
  IntVec ut = s.U * target;
  IntVec y(gens.size());
  for (std::size_t i = 0; i < dim; ++i) {
    Int di = i < gens.size() ? s.D(i, i) : Int(0);
    if (di == 0) {
      if (ut[i] != 0) return std::nullopt;
      continue;
    }
    if (ut[i] % di != 0) return std::nullopt;
    y[i] = ut[i] / di;
  }
  return s.V * y;
}

}  // namespace cgt
