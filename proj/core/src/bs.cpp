#include "cgt/bs.hpp"

#include <cstdlib>

#include <nlohmann/json.hpp>

namespace cgt::bs {

Params::Params(long m_, long n_) : m(m_), n(n_) {
  if (m == 0 || n == 0) throw Error(ErrorKind::UnsupportedParameters, "BS(m,n) needs m, n nonzero");
}

bool Params::gcd_one() const {
  Int g;
  Int a(std::labs(m)), b(std::labs(n));
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g == 1;
}

const GenAlphabet& alphabet() {
  static const GenAlphabet a({"x", "t"});
  return a;
}

namespace {

Int fmod_pos(const Int& a, const Int& modulus) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

Int ipow(const Int& b, unsigned e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

Word x_power(const Int& e) {
  if (!e.fits_slong_p()) throw Error(ErrorKind::Budget, "x exponent too large to spell");
  return Word::power(kX, e.get_si());
}

}  // namespace

Word normal_form(const Params& p, const Word& w) {
  alphabet().check(w);
  const Int m(p.m), n(p.n);
  std::vector<Int> xs{0};
  std::vector<int> ts;
  for (const auto& l : w) {
    if (l.gen == kX) {
      xs.back() += l.sign;
      continue;
    }
    if (!ts.empty() && ts.back() == -l.sign) {
      const Int& top = xs.back();
      // t^-1 x^{mq} t = x^{nq};  t x^{nq} t^-1 = x^{mq}
      const Int& div = ts.back() < 0 ? m : n;
      const Int& mul = ts.back() < 0 ? n : m;
      if (top % div == 0) {
        Int moved = (top / div) * mul;
        xs.pop_back();
        ts.pop_back();
        xs.back() += moved;
        continue;
      }
    }
    ts.push_back(l.sign);
    xs.push_back(0);
  }
  for (std::size_t i = 0; i < ts.size(); ++i) {
    // x^{qm} t = t x^{qn};  x^{qn} t^-1 = t^-1 x^{qm}
    const Int& div = ts[i] > 0 ? m : n;
    const Int& mul = ts[i] > 0 ? n : m;
    Int r = fmod_pos(xs[i], abs(div));
    xs[i + 1] += ((xs[i] - r) / div) * mul;
    xs[i] = r;
  }
  Word out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out *= x_power(xs[i]);
    if (i < ts.size()) out.push_back(Letter{kT, static_cast<std::int8_t>(ts[i])});
  }
  return out;
}

bool word_problem(const Params& p, const Word& w) { return normal_form(p, w).empty(); }

long long t_exponent_sum(const Word& w) {
  long long s = 0;
  for (const auto& l : w)
    if (l.gen == kT) s += l.sign;
  return s;
}

bool in_normal_closure_x(const Word& w) { return t_exponent_sum(w) == 0; }

XiWord to_xi_word(const Word& w) {
  alphabet().check(w);
  if (!in_normal_closure_x(w)) {
    throw Error(ErrorKind::NotInClosure, "word has nonzero t-exponent sum, not in <<x>>");
  }
  XiWord out;
  long long e = 0;
  for (const auto& l : w) {
    if (l.gen == kT) {
      e += l.sign;
    } else {
      out.push_back({-e, l.sign});
    }
  }
  return out;
}

Word from_xi_word(const XiWord& w) {
  Word out;
  for (const auto& f : w) {
    Word tpow = Word::power(kT, f.index);  // t^i
    out *= tpow.inverse() * Word::power(kX, f.sign) * tpow;
  }
  return free_reduce(out);
}

XiWord xi_inverse(const XiWord& w) {
  XiWord out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->index, -it->sign});
  return out;
}

XiWord parse_xi_json(const std::string& text) {
  XiWord out;
  try {
    auto j = nlohmann::json::parse(text);
    if (!j.is_array()) throw Error(ErrorKind::MalformedInput, "XiWord JSON must be an array of [index, sign]");
    for (const auto& f : j) {
      if (!f.is_array() || f.size() != 2) throw Error(ErrorKind::MalformedInput, "XiWord factor must be [index, sign]");
      long long i = f[0].get<long long>();
      int s = f[1].get<int>();
      if (s != 1 && s != -1) throw Error(ErrorKind::MalformedInput, "XiWord sign must be 1 or -1");
      out.push_back({i, s});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedInput, std::string("XiWord JSON: ") + e.what());
  }
  return out;
}

std::string xi_to_json(const XiWord& w) {
  auto j = nlohmann::json::array();
  for (const auto& f : w) j.push_back({f.index, f.sign});
  return j.dump();
}

MNRational::MNRational(Int base, Int p, unsigned k) : base_(std::move(base)), p_(std::move(p)), k_(k) {
  if (base_ <= 1) throw Error(ErrorKind::UnsupportedParameters, "Z[1/mn] needs |mn| >= 2");
  canonicalize();
}

void MNRational::canonicalize() {
  if (p_ == 0) {
    k_ = 0;
    return;
  }
  while (k_ > 0 && p_ % base_ == 0) {
    p_ /= base_;
    --k_;
  }
}

MNRational MNRational::from_fraction(const Int& base, const Int& num, const Int& den) {
  if (den == 0) throw Error(ErrorKind::Precondition, "zero denominator");
  Int power = 1;
  for (unsigned k = 0; k <= 4096; ++k) {
    if (power % den == 0) return MNRational(base, num * (power / den), k);
    power *= base;
  }
  throw Error(ErrorKind::Precondition, "denominator does not divide a power of |mn|");
}

MNRational MNRational::operator+(const MNRational& o) const {
  if (base_ != o.base_) throw Error(ErrorKind::Precondition, "adding elements of different rings");
  unsigned k = std::max(k_, o.k_);
  Int a = p_ * ipow(base_, k - k_);
  Int b = o.p_ * ipow(base_, k - o.k_);
  return MNRational(base_, a + b, k);
}

MNRational MNRational::operator-() const { return MNRational(base_, -p_, k_); }

std::string MNRational::to_string() const {
  if (k_ == 0) return p_.get_str();
  return p_.get_str() + "/" + base_.get_str() + "^" + std::to_string(k_);
}

std::string MNRational::to_fraction_string() const {
  mpq_class q(p_, ipow(base_, k_));
  q.canonicalize();
  return q.get_str();
}

namespace {

void require_h1_params(const Params& p) {
  if (!p.gcd_one()) throw Error(ErrorKind::UnsupportedParameters, "the H1 map needs gcd(m, n) = 1");
  if (std::labs(p.m) < 2 || std::labs(p.n) < 2) {
    throw Error(ErrorKind::UnsupportedParameters, "the H1 map needs |m|, |n| >= 2");
  }
  if (p.n < 0) throw Error(ErrorKind::UnsupportedParameters, "sign case n < 0 is not supported");
}

Int mn_base(const Params& p) { return Int(std::labs(p.m)) * Int(std::labs(p.n)); }

}  // namespace

MNRational h1_of_generator(const Params& p, long long index) {
  require_h1_params(p);
  const unsigned e = static_cast<unsigned>(index < 0 ? -index : index);
  // f(x_{i+1}) / f(x_i) = n / m, forced by x_{i+1}^m = x_i^n.
  const Int num = ipow(Int(index >= 0 ? p.n : p.m), e);
  const Int den = ipow(Int(index >= 0 ? p.m : p.n), e);
  Int sden = den < 0 ? Int(-den) : den;
  Int snum = den < 0 ? Int(-num) : num;
  return MNRational::from_fraction(mn_base(p), snum, sden);
}

MNRational h1_image(const Params& p, const XiWord& w) {
  require_h1_params(p);
  MNRational total(mn_base(p));
  for (const auto& f : w) {
    auto g = h1_of_generator(p, f.index);
    total = f.sign > 0 ? total + g : total - g;
  }
  return total;
}

bool commutator_membership(const Params& p, const XiWord& w) { return h1_image(p, w).is_zero(); }

BezoutWitnesses bezout_witnesses(const Params& p) {
  require_h1_params(p);
  Int g, k1, k2, m(p.m), n(p.n);
  mpz_gcdext(g.get_mpz_t(), k1.get_mpz_t(), k2.get_mpz_t(), m.get_mpz_t(), n.get_mpz_t());
  if (g != 1) throw Error(ErrorKind::UnsupportedParameters, "gcd(m, n) must be 1");
  auto power = [](long long index, const Int& e) {
    XiWord w;
    long c = e.get_si();
    for (long i = 0; i < std::labs(c); ++i) w.push_back({index, c < 0 ? -1 : 1});
    return w;
  };
  BezoutWitnesses b;
  b.one_over_m = power(0, k1);
  for (auto f : power(1, k2)) b.one_over_m.push_back(f);
  b.one_over_n = power(0, k2);
  for (auto f : power(-1, k1)) b.one_over_n.push_back(f);
  return b;
}

XiWord relator_xi(const Params& p, long long i) {
  XiWord w;
  for (long c = 0; c < std::labs(p.m); ++c) w.push_back({i + 1, p.m > 0 ? 1 : -1});
  for (long c = 0; c < std::labs(p.n); ++c) w.push_back({i, p.n > 0 ? -1 : 1});
  return w;
}

unsigned stabilizing_exponent(const XiWord& g) {
  unsigned s = 0;
  for (const auto& f : g) s = std::max<unsigned>(s, static_cast<unsigned>(f.index < 0 ? -f.index : f.index));
  return s;
}

bool verify_stabilizing(const Params& p, const XiWord& g, unsigned s) {
  Int big = ipow(Int(std::labs(p.m)) * Int(std::labs(p.n)), s);
  Word xn = x_power(big);
  Word gw = from_xi_word(g);
  return word_problem(p, gw.inverse() * xn * gw * xn.inverse());
}

PowerIdentity conjugation_power_identity(const Params& p, unsigned M, unsigned k, const XiWord& g) {
  if (M > 4) throw Error(ErrorKind::Budget, "conjugation power identity limited to M <= 4");
  if (k > M) throw Error(ErrorKind::Precondition, "need 0 <= k <= M");
  if (p.n < 0) throw Error(ErrorKind::UnsupportedParameters, "sign case n < 0 is not supported");
  if (stabilizing_exponent(g) > M) throw Error(ErrorKind::Precondition, "g must satisfy S(g) <= M");
  const Int am(std::labs(p.m)), n(p.n);
  PowerIdentity r;
  r.base_exponent = ipow(am, M) * ipow(n, M);
  const Int magnitude = ipow(am, M - k) * ipow(n, k) * ipow(n, M);
  if (k == 0) {
    r.stated_exponent = r.base_exponent;
    r.exponent = r.base_exponent;
  } else if (p.m > 0) {
    r.stated_exponent = magnitude;
    r.exponent = magnitude;
  } else {
    // Each t-conjugation flips the sign when m < 0 < n.
    r.stated_exponent = -magnitude;
    r.exponent = (k % 2 == 0) ? magnitude : Int(-magnitude);
  }
  Word h = from_xi_word(g) * Word::power(kT, static_cast<long long>(k));
  Word lhs = h.inverse() * x_power(r.base_exponent) * h;
  r.holds = word_problem(p, lhs * x_power(r.exponent).inverse());
  r.stated_holds = word_problem(p, lhs * x_power(r.stated_exponent).inverse());
  return r;
}

Int power_in_N_exponent(const Params& p, unsigned M, unsigned k) {
  if (std::labs(p.m) == std::labs(p.n)) {
    throw Error(ErrorKind::Precondition, "|m| = |n| is handled separately; no exponent formula");
  }
  if (k == 0 || k > M) throw Error(ErrorKind::Precondition, "need 0 < k <= M");
  if (p.n < 0) throw Error(ErrorKind::UnsupportedParameters, "sign case n < 0 is not supported");
  const Int am(std::labs(p.m)), n(p.n);
  return ipow(n, M) * ipow(am, M - k) * (ipow(am, k) - ipow(n, k));
}

}  // namespace cgt::bs
