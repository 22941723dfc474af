#include <algorithm>

#include "doctest.h"
#include "test_util.hpp"

#include "cgt/bs.hpp"
#include "cgt/gog.hpp"

using namespace cgt;
using namespace cgt::bs;
using cgt::testing::random_word;
using cgt::testing::rng;
using cgt::testing::uniform;

namespace {

Word w(const char* s) { return alphabet().parse(s); }

mpq_class as_rational(const MNRational& r) {
  Int den;
  mpz_pow_ui(den.get_mpz_t(), r.base().get_mpz_t(), r.exponent());
  mpq_class q(r.numerator(), den);
  q.canonicalize();
  return q;
}

// f(x_i) = (n/m)^i computed with plain rationals.
mpq_class oracle_h1(const Params& p, const XiWord& xw) {
  mpq_class total = 0;
  mpq_class ratio(Int(p.n), Int(p.m));
  ratio.canonicalize();
  for (const auto& f : xw) {
    mpq_class v = 1;
    const long long e = f.index < 0 ? -f.index : f.index;
    for (long long i = 0; i < e; ++i) v *= f.index > 0 ? ratio : 1 / ratio;
    v.canonicalize();
    total += f.sign * v;
  }
  total.canonicalize();
  return total;
}

XiWord random_xi(long max_index, std::size_t max_len) {
  XiWord out;
  const auto len = static_cast<std::size_t>(uniform(0, static_cast<long>(max_len)));
  for (std::size_t i = 0; i < len; ++i) out.push_back({uniform(-max_index, max_index), uniform(0, 1) ? 1 : -1});
  return out;
}

XiWord concat(XiWord a, const XiWord& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Word random_closure_word(std::size_t max_len) {
  Word x = random_word(2, max_len);
  const long long s = t_exponent_sum(x);
  return x * Word::power(kT, -s);
}

}  // namespace

TEST_CASE("params") {
  CHECK_THROWS_AS(Params(0, 2), Error);
  CHECK(Params(2, 3).gcd_one());
  CHECK_FALSE(Params(2, 4).gcd_one());
  CHECK(Params(-2, 3).gcd_one());
}

TEST_CASE("normal form examples") {
  const Params p(2, 3);
  CHECK(normal_form(p, w("t^-1 x^2 t x^-3")).empty());
  CHECK(normal_form(p, w("t^-1 x t")) == w("t^-1 x t"));
  CHECK(normal_form(p, w("x^5")) == w("x^5"));
  CHECK(normal_form(p, w("x^3 t")) == w("x t x^3"));
  CHECK(normal_form(p, w("x^-1 t")) == w("x t x^-3"));
  CHECK(normal_form(p, w("x^4 t^-1")) == w("x t^-1 x^2"));
  CHECK_THROWS_AS(normal_form(p, Word::generator(5)), Error);
}

TEST_CASE("normal forms are unique and sound") {
  for (const auto& [m, n] : std::vector<std::pair<long, long>>{{2, 3}, {3, 2}, {2, 2}, {-2, 3}, {3, -5}, {1, 2}}) {
    const Params p(m, n);
    for (int i = 0; i < 500; ++i) {
      const Word u = random_word(2, 10);
      const Word v = random_word(2, 10);
      const Word nu = normal_form(p, u);
      CHECK(normal_form(p, nu) == nu);
      CHECK(word_problem(p, u * u.inverse()));
      CHECK(word_problem(p, nu * u.inverse()));
      CHECK((nu == normal_form(p, v)) == word_problem(p, u * v.inverse()));
    }
  }
}

TEST_CASE("agrees with the graph-of-groups model") {
  for (const auto& [m, n] : std::vector<std::pair<long, long>>{{2, 3}, {2, 2}, {-2, 3}, {3, -2}}) {
    const Params p(m, n);
    const auto g = baumslag_solitar_gog(m, n);
    REQUIRE(g.alphabet() == alphabet());
    std::size_t disagreements = 0;
    for (const auto& x : enumerate_reduced_words(2, 6)) disagreements += word_problem(p, x) != g.word_problem(x);
    CHECK(disagreements == 0);
  }
}

TEST_CASE("t-exponent sums") {
  CHECK(t_exponent_sum(w("x")) == 0);
  CHECK(in_normal_closure_x(w("x")));
  CHECK(t_exponent_sum(w("t x t")) == 2);
  CHECK_FALSE(in_normal_closure_x(w("t x t")));
  CHECK(t_exponent_sum(w("t^-1 x t x")) == 0);
  CHECK(in_normal_closure_x(w("t^-1 x t x")));
}

TEST_CASE("xi words") {
  CHECK(to_xi_word(w("x")) == XiWord{{0, 1}});
  CHECK(to_xi_word(w("t^-1 x t")) == XiWord{{1, 1}});
  CHECK(to_xi_word(w("x t^-1 x^-1 t")) == XiWord{{0, 1}, {1, -1}});
  CHECK_THROWS_AS(to_xi_word(w("t x t")), Error);
  try {
    to_xi_word(w("t"));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotInClosure);
  }
  const Params p(2, 3);
  for (int i = 0; i < 500; ++i) {
    const Word x = random_closure_word(10);
    CHECK(word_problem(p, from_xi_word(to_xi_word(x)) * x.inverse()));
    const XiWord xi = random_xi(3, 6);
    CHECK(to_xi_word(from_xi_word(xi)).size() <= xi.size());
    CHECK(word_problem(p, from_xi_word(xi) * from_xi_word(xi_inverse(xi))));
  }
  const XiWord sample{{-2, 1}, {3, -1}};
  CHECK(parse_xi_json(xi_to_json(sample)) == sample);
  CHECK(parse_xi_json("[[0,1],[1,-1]]") == XiWord{{0, 1}, {1, -1}});
  CHECK_THROWS_AS(parse_xi_json("[[0,2]]"), Error);
  CHECK_THROWS_AS(parse_xi_json("{}"), Error);
}

TEST_CASE("exact rationals in Z[1/mn]") {
  const MNRational half = MNRational::from_fraction(6, 1, 2);
  CHECK(half.numerator() == 3);
  CHECK(half.exponent() == 1);
  CHECK(half.to_string() == "3/6^1");
  CHECK(half.to_fraction_string() == "1/2");
  CHECK((half + half) == MNRational(6, 1));
  CHECK((half + half).to_string() == "1");
  CHECK((half - half).is_zero());
  CHECK(MNRational(6, 36, 2) == MNRational(6, 1, 0));
  CHECK_THROWS_AS(MNRational::from_fraction(6, 1, 5), Error);
  CHECK_THROWS_AS(MNRational(1), Error);
  CHECK_THROWS_AS(MNRational(6) + MNRational(10), Error);
}

TEST_CASE("h1 map examples") {
  const Params p(2, 3);
  CHECK(h1_image(p, {{0, 1}}) == MNRational(6, 1));
  CHECK(h1_of_generator(p, 1).to_fraction_string() == "3/2");
  CHECK(h1_of_generator(p, -1).to_fraction_string() == "2/3");
  CHECK(h1_of_generator(p, 2).to_fraction_string() == "9/4");
  CHECK(h1_image(p, {{0, 1}, {1, -1}}).to_string() == "-3/6^1");
  CHECK(h1_image(p, relator_xi(p, 0)).is_zero());
  CHECK(h1_image(Params(-2, 3), relator_xi(Params(-2, 3), 1)).is_zero());
  CHECK(h1_of_generator(Params(-2, 3), 1).to_fraction_string() == "-3/2");
  CHECK_THROWS_AS(h1_image(Params(2, 4), {}), Error);
  CHECK_THROWS_AS(h1_image(Params(2, -3), {}), Error);
  CHECK_THROWS_AS(h1_image(Params(1, 3), {}), Error);
}

TEST_CASE("h1 agrees with a rational oracle and is additive") {
  for (const auto& [m, n] : std::vector<std::pair<long, long>>{{2, 3}, {3, 5}, {2, 5}, {-2, 3}, {5, 3}}) {
    const Params p(m, n);
    for (int i = 0; i < 1000; ++i) {
      const XiWord u = random_xi(4, 8), v = random_xi(4, 8);
      const MNRational fu = h1_image(p, u), fv = h1_image(p, v);
      CHECK(h1_image(p, concat(u, v)) == fu + fv);
      CHECK(as_rational(fu) == oracle_h1(p, u));
      CHECK(h1_image(p, xi_inverse(u)) == -fu);
    }
  }
}

TEST_CASE("relators vanish and Bezout witnesses hit 1/m and 1/n") {
  for (const auto& [m, n] : std::vector<std::pair<long, long>>{{2, 3}, {3, 5}, {2, 5}, {-3, 4}}) {
    const Params p(m, n);
        for (long long i = -2; i <= 2; ++i) CHECK(h1_image(p, relator_xi(p, i)).is_zero());
    const auto b = bezout_witnesses(p);
    mpq_class inv_m(1, m), inv_n(1, n);
    inv_m.canonicalize();
    inv_n.canonicalize();
    CHECK(as_rational(h1_image(p, b.one_over_m)) == inv_m);
    CHECK(as_rational(h1_image(p, b.one_over_n)) == inv_n);
    // The relator is trivial in BS(m, n) as a group word too.
    CHECK(word_problem(p, from_xi_word(relator_xi(p, 1))));
  }
}

TEST_CASE("commutators and balanced words map to zero") {
  const Params p(2, 3);
  CHECK(commutator_membership(p, {{0, 1}, {1, 1}, {0, -1}, {1, -1}}));
  CHECK_FALSE(commutator_membership(p, {{0, 1}}));
  CHECK(commutator_membership(p, {{0, 1}, {1, 1}, {0, -1}, {1, 1}, {0, 1}, {1, -1}, {1, -1}, {0, -1}}));
  for (int i = 0; i < 1000; ++i) {
    XiWord u = random_xi(3, 6);
    XiWord balanced = concat(u, xi_inverse(u));
    std::shuffle(balanced.begin(), balanced.end(), rng());
    CHECK(commutator_membership(p, balanced));
    const XiWord a = random_xi(3, 3), b = random_xi(3, 3), c = random_xi(3, 3);
    const XiWord comm = concat(concat(a, b), concat(xi_inverse(a), xi_inverse(b)));
    CHECK(commutator_membership(p, concat(concat(c, comm), xi_inverse(c))));
  }
}

TEST_CASE("stabilizing exponent") {
  const Params p(2, 3);
  CHECK(stabilizing_exponent({{0, 1}}) == 0);
  CHECK(verify_stabilizing(p, {{0, 1}}, 0));
  CHECK(stabilizing_exponent({{2, 1}}) == 2);
  CHECK(verify_stabilizing(p, {{2, 1}}, 2));
  CHECK(stabilizing_exponent({{0, 1}, {1, 1}, {0, -1}, {1, -1}}) == 1);
  CHECK(verify_stabilizing(p, {{0, 1}, {1, 1}, {0, -1}, {1, -1}}, 1));
  // Too small an exponent does not commute.
  CHECK_FALSE(verify_stabilizing(p, {{2, 1}}, 1));
  for (int i = 0; i < 200; ++i) {
    const XiWord g = random_xi(3, 6);
    const unsigned s = stabilizing_exponent(g);
    unsigned expect = 0;
    for (const auto& f : g) expect = std::max<unsigned>(expect, static_cast<unsigned>(std::llabs(f.index)));
    CHECK(s == expect);
    CHECK(verify_stabilizing(p, g, s));
  }
}

TEST_CASE("conjugation power identities") {
  auto r = conjugation_power_identity(Params(2, 3), 2, 1);
  CHECK(r.base_exponent == 36);
  CHECK(r.exponent == 54);
  CHECK(r.holds);
  CHECK(r.stated_holds);
  r = conjugation_power_identity(Params(3, 2), 1, 1);
  CHECK(r.base_exponent == 6);
  CHECK(r.exponent == 4);
  CHECK(r.holds);
  r = conjugation_power_identity(Params(2, 3), 0, 0);
  CHECK(r.base_exponent == 1);
  CHECK(r.exponent == 1);
  CHECK(r.holds);
  // m < 0: each crossing flips the sign.
  r = conjugation_power_identity(Params(-2, 3), 1, 1);
  CHECK(r.base_exponent == 6);
  CHECK(r.exponent == -9);
  CHECK(r.holds);
  CHECK(r.stated_holds);
  r = conjugation_power_identity(Params(-2, 3), 2, 2);
  CHECK(r.exponent == 81);
  CHECK(r.holds);
  CHECK_FALSE(r.stated_holds);
  // With a stabilising prefix g.
  r = conjugation_power_identity(Params(2, 3), 2, 1, {{1, 1}, {-2, -1}});
  CHECK(r.holds);
  CHECK_THROWS_AS(conjugation_power_identity(Params(2, 3), 5, 1), Error);
  CHECK_THROWS_AS(conjugation_power_identity(Params(2, 3), 1, 2), Error);
  CHECK_THROWS_AS(conjugation_power_identity(Params(2, 3), 1, 1, {{2, 1}}), Error);
}

TEST_CASE("power in N exponent") {
  CHECK(power_in_N_exponent(Params(2, 3), 2, 1) == -18);
  CHECK(power_in_N_exponent(Params(2, 3), 1, 1) == -3);
  CHECK(power_in_N_exponent(Params(3, 2), 2, 2) == 20);
  CHECK_THROWS_AS(power_in_N_exponent(Params(2, 2), 1, 1), Error);
  CHECK_THROWS_AS(power_in_N_exponent(Params(2, -2), 1, 1), Error);
  CHECK_THROWS_AS(power_in_N_exponent(Params(2, 3), 1, 0), Error);
  // For m > 0 the exponent is the difference of the two sides of the identity.
  for (unsigned M = 1; M <= 3; ++M)
    for (unsigned k = 1; k <= M; ++k) {
      const auto id = conjugation_power_identity(Params(2, 3), M, k);
      CHECK(power_in_N_exponent(Params(2, 3), M, k) == id.base_exponent - id.exponent);
    }
}
