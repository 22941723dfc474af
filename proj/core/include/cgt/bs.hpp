#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cgt/intlattice.hpp"
#include "cgt/words.hpp"

namespace cgt::bs {

/// BS(m, n) = < x, t | t^-1 x^m t = x^n >.
struct Params {
  long m = 1, n = 1;

  Params(long m_, long n_);
  bool gcd_one() const;
};

/// {x, t}; x is generator 0 and t generator 1.
const GenAlphabet& alphabet();
constexpr std::uint32_t kX = 0;
constexpr std::uint32_t kT = 1;

/// Britton normal form x^r0 t^e1 x^r1 ... t^ek x^rk with 0 <= r < |m| before
/// t and 0 <= r < |n| before t^-1.
Word normal_form(const Params& p, const Word& w);
bool word_problem(const Params& p, const Word& w);

long long t_exponent_sum(const Word& w);
bool in_normal_closure_x(const Word& w);

/// x_i = t^-i x t^i.
struct XiFactor {
  long long index = 0;
  int sign = 1;
  friend bool operator==(const XiFactor&, const XiFactor&) = default;
};
using XiWord = std::vector<XiFactor>;

XiWord to_xi_word(const Word& w);
Word from_xi_word(const XiWord& w);
XiWord xi_inverse(const XiWord& w);
/// [[i, sign], ...]
XiWord parse_xi_json(const std::string& text);
std::string xi_to_json(const XiWord& w);

/// Exact element p / |mn|^k of Z[1/mn], with k minimal.
class MNRational {
 public:
  MNRational(Int base, Int p = 0, unsigned k = 0);
  /// num / den, where den must divide a power of base.
  static MNRational from_fraction(const Int& base, const Int& num, const Int& den);

  const Int& base() const { return base_; }
  const Int& numerator() const { return p_; }
  unsigned exponent() const { return k_; }
  bool is_zero() const { return p_ == 0; }

  MNRational operator+(const MNRational& o) const;
  MNRational operator-() const;
  MNRational operator-(const MNRational& o) const { return *this + (-o); }
  friend bool operator==(const MNRational& a, const MNRational& b) {
    return a.base_ == b.base_ && a.p_ == b.p_ && a.k_ == b.k_;
  }

  /// "p" or "p/B^k".
  std::string to_string() const;
  /// Reduced fraction "num/den".
  std::string to_fraction_string() const;

 private:
  void canonicalize();

  Int base_, p_;
  unsigned k_ = 0;
};

/// Additive map on <<x>> sending x_i to (n/m)^i; needs gcd(m, n) = 1,
/// |m|, |n| >= 2, and n > 0.
MNRational h1_image(const Params& p, const XiWord& w);
MNRational h1_of_generator(const Params& p, long long index);
bool commutator_membership(const Params& p, const XiWord& w);

/// x_0^k1 x_1^k2 with f = 1/m, and x_0^k2 x_{-1}^k1 with f = 1/n.
struct BezoutWitnesses {
  XiWord one_over_m, one_over_n;
};
BezoutWitnesses bezout_witnesses(const Params& p);

/// Relator x_{i+1}^m x_i^-n as an XiWord.
XiWord relator_xi(const Params& p, long long i);

/// max |index| over the factors.
unsigned stabilizing_exponent(const XiWord& g);
/// g^-1 x^N g = x^N for N = (|m||n|)^S, by normal forms.
bool verify_stabilizing(const Params& p, const XiWord& g, unsigned s);

struct PowerIdentity {
  Int base_exponent;     // |m|^M |n|^M
  Int exponent;          // exponent of x in h^-1 x^base h
  Int stated_exponent;   // the closed form as usually written
  bool holds = false;    // Britton check of `exponent`
  bool stated_holds = false;
};

/// Conjugates x^{|m|^M |n|^M} by h = g t^k (g stabilising, S(g) <= M) and
/// checks the result against the closed form. Needs 0 <= k <= M <= 4 and
/// n > 0.
PowerIdentity conjugation_power_identity(const Params& p, unsigned M, unsigned k,
                                         const XiWord& g = {});

/// n^M |m|^{M-k} (|m|^k - n^k) for m > 0 or m < 0 with n > 0; |m| != |n|.
Int power_in_N_exponent(const Params& p, unsigned M, unsigned k);

}  // namespace cgt::bs
