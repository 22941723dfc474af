// Runs the acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is 0 only when every criterion passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "cgt/bs.hpp"
#include "cgt/fixtures.hpp"
#include "cgt/gog.hpp"
#include "cgt/intlattice.hpp"
#include "cgt/quotients.hpp"
#include "cgt/raag.hpp"
#include "cgt/subdirect.hpp"
#include "raag_oracle.hpp"

using namespace cgt;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects failures; the first few messages end up in the PASS/FAIL line.
struct Check {
  Outcome out;
  int failures = 0;
  void expect(bool cond, const std::string& what) {
    if (cond) return;
    out.ok = false;
    if (++failures <= 3) out.detail += (out.detail.empty() ? "" : "; ") + what;
  }
  void note(const std::string& s) {
    if (out.ok) out.detail += (out.detail.empty() ? "" : "; ") + s;
  }
};

std::mt19937_64& rng() {
  static std::mt19937_64 g(20240917);
  return g;
}

long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

// Every freely reduced word of length <= max_len over `gens` generators.
std::vector<Word> reduced_words(std::uint32_t gens, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::vector<Word> layer{Word{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      for (std::uint32_t g = 0; g < gens; ++g) {
        for (std::int8_t s : {std::int8_t{1}, std::int8_t{-1}}) {
          Letter l{g, s};
          if (!w.empty() && is_inverse_pair(w.letters().back(), l)) continue;
          Word v = w;
          v.push_back(l);
          next.push_back(std::move(v));
        }
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

// Every word (not necessarily reduced) of length <= max_len over `gens`
// generators.
std::vector<Word> all_words(std::uint32_t gens, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (std::uint32_t g = 0; g < gens; ++g) {
        for (std::int8_t s : {std::int8_t{1}, std::int8_t{-1}}) {
          Word v = out[i];
          v.push_back(Letter{g, s});
          out.push_back(std::move(v));
        }
      }
    }
    begin = end;
  }
  return out;
}

Word substitute(const std::vector<Word>& images, const Word& w) {
  Word out;
  for (const auto& l : w) out *= l.sign > 0 ? images[l.gen] : images[l.gen].inverse();
  return out;
}

mpq_class as_rational(const bs::MNRational& v) {
  mpz_class den;
  mpz_pow_ui(den.get_mpz_t(), v.base().get_mpz_t(), v.exponent());
  mpq_class q(v.numerator(), den);
  q.canonicalize();
  return q;
}

// x_i = t^-i x t^i goes to (n/m)^i.
mpq_class xi_value(const bs::Params& p, const bs::XiWord& w) {
  mpq_class ratio(p.n, p.m);
  ratio.canonicalize();
  mpq_class total = 0;
  for (const auto& f : w) {
    mpq_class term = 1;
    for (long long i = 0; i < std::llabs(f.index); ++i) term *= f.index > 0 ? ratio : 1 / ratio;
    total += f.sign > 0 ? term : -term;
  }
  return total;
}

bs::XiWord random_xi(std::size_t max_len) {
  bs::XiWord w;
  const auto len = uniform(0, static_cast<long>(max_len));
  for (long i = 0; i < len; ++i) w.push_back({uniform(-3, 3), uniform(0, 1) ? 1 : -1});
  return w;
}

Word x_power(long long e) {
  return Word::power(bs::kX, e);
}

Word t_power(long long e) { return Word::power(bs::kT, e); }

// ---------------------------------------------------------------------------

Outcome raag_oracle_equivalence() {
  Check c;
  const RaagPresentation p = p4();
  const auto words = reduced_words(4, 4);
  std::map<Word, Word, ShortlexLess> nf_to_oracle, oracle_to_nf;
  for (const auto& w : words) {
    const Word nf = p.normal_form(w);
    const Word canon = oracle::rewrite_canonical(p, w);
    auto [a, fresh_a] = nf_to_oracle.emplace(nf, canon);
    auto [b, fresh_b] = oracle_to_nf.emplace(canon, nf);
    c.expect(a->second == canon, "normal form merges oracle-distinct words: " + p.alphabet().format(w));
    c.expect(b->second == nf, "oracle-equal words with different normal forms: " + p.alphabet().format(w));
  }
  const auto ball = enumerate_ball(p, 4);
  c.expect(!ball.overflow && ball.elements.size() == oracle_to_nf.size(), "ball size differs from oracle classes");
  c.note(std::to_string(words.size()) + " words, " + std::to_string(oracle_to_nf.size()) + " elements");
  return c.out;
}

Outcome kernel_basis() {
  Check c;
  const RaagPresentation p = p4();
  const auto basis = fixtures::p4_kernel_basis();
  const auto phi = fixtures::p4_length_map();
  for (const auto& b : basis) c.expect(eval_hom(phi, b) == std::vector<long long>{0}, "basis element not in ker phi");
  std::size_t checked = 0;
  for (const auto& w : reduced_words(3, 4)) {
    if (w.empty()) continue;
    ++checked;
    const Word g = substitute(basis, w);
    c.expect(!p.word_problem(g), "trivial image of a basis word");
    c.expect(in_kernel(phi, g), "image leaves ker phi");
  }
  c.expect(checked == 936, "unexpected word count");
  c.note(std::to_string(checked) + " nonempty reduced words nontrivial");
  return c.out;
}

Outcome quotient_rank() {
  Check c;
  const auto q = quotient_presentation(fixtures::group("P4"), fixtures::p4_kernel_basis());
  const auto ab = abelianization_invariants(q);
  c.expect(ab.rank == 1 && ab.torsion.empty(), "abelianization is not Z");
  c.note("rank " + std::to_string(ab.rank) + ", torsion " + std::to_string(ab.torsion.size()));
  return c.out;
}

Outcome droms_index_two() {
  Check c;
  const auto pres = p4().presentation();
  const auto h = fixtures::droms_index2_subgroup();
  const auto t = todd_coxeter(pres, h, 100);
  c.expect(t.closed(), "coset enumeration did not close within 100 cosets");
  if (!t.closed()) return c.out;
  c.expect(t.index() == 2, "index " + std::to_string(t.index()));
  c.expect(validate_coset_table(pres, h, t).empty(), "coset table fails validation");
  const auto s = reidemeister_schreier(pres, t);
  c.expect(s.presentation.alphabet.size() == 7, "RS generators " + std::to_string(s.presentation.alphabet.size()));
  c.note("index " + std::to_string(t.index()) + ", " + std::to_string(t.cosets_defined) + " cosets defined, " +
         std::to_string(s.presentation.alphabet.size()) + " generators");
  return c.out;
}

Outcome bs_suite() {
  Check c;
  for (auto [m, n] : {std::pair{2L, 3L}, {3L, 5L}, {2L, 5L}}) {
    const bs::Params p(m, n);
    const std::string tag = "(" + std::to_string(m) + "," + std::to_string(n) + ") ";
    for (long long i = -2; i <= 2; ++i) {
      c.expect(bs::h1_image(p, bs::relator_xi(p, i)).is_zero(), tag + "relator maps to nonzero");
      c.expect(bs::word_problem(p, bs::from_xi_word(bs::relator_xi(p, i))), tag + "relator nontrivial in group");
    }
    const auto b = bs::bezout_witnesses(p);
    c.expect(as_rational(bs::h1_image(p, b.one_over_m)) == mpq_class(1, m), tag + "1/m witness");
    c.expect(as_rational(bs::h1_image(p, b.one_over_n)) == mpq_class(1, n), tag + "1/n witness");
    for (int trial = 0; trial < 1000; ++trial) {
      const auto u = random_xi(6), v = random_xi(6);
      bs::XiWord uv = u;
      uv.insert(uv.end(), v.begin(), v.end());
      const auto hu = bs::h1_image(p, u), hv = bs::h1_image(p, v), huv = bs::h1_image(p, uv);
      c.expect(huv == hu + hv, tag + "additivity");
      c.expect(as_rational(huv) == xi_value(p, uv), tag + "disagrees with rational evaluation");
    }
  }
  c.note("3 parameter pairs, 1000 random pairs each");
  return c.out;
}

Outcome power_identities() {
  Check c;
  int cases = 0, stated_fail = 0;
  for (auto [m, n] : {std::pair{2L, 3L}, {3L, 2L}, {-2L, 3L}}) {
    const bs::Params p(m, n);
    const GraphOfGroups gog = baumslag_solitar_gog(m, n);
    for (unsigned M = 1; M <= 3; ++M) {
      for (unsigned k = 1; k <= M; ++k) {
        ++cases;
        const std::string tag = "(" + std::to_string(m) + "," + std::to_string(n) + ") M=" + std::to_string(M) +
                                " k=" + std::to_string(k);
        const auto r = bs::conjugation_power_identity(p, M, k);
        c.expect(r.holds, tag + " fails");
        mpz_class base = 1;
        for (unsigned i = 0; i < M; ++i) base *= std::labs(m) * n;
        c.expect(r.base_exponent == base, tag + " base exponent");
        // Re-check h^-1 x^base h = x^exponent, h = t^k, in the graph-of-groups model.
        const Word lhs = t_power(-static_cast<long long>(k)) * x_power(base.get_si()) * t_power(k);
        c.expect(gog.word_problem(lhs * x_power(r.exponent.get_si()).inverse()), tag + " gog model disagrees");
        if (m > 0) c.expect(r.stated_holds && r.stated_exponent == r.exponent, tag + " closed form");
        if (!r.stated_holds) ++stated_fail;
      }
    }
  }
  c.note(std::to_string(cases) + " cases; unsigned closed form fails in " + std::to_string(stated_fail) +
         " m<0 cases with even k");
  return c.out;
}

Outcome power_in_n() {
  Check c;
  const bs::Params p(2, 3);
  for (unsigned M = 1; M <= 3; ++M) {
    for (unsigned k = 1; k <= M; ++k) {
      mpz_class nM, mMk, mk, nk;
      mpz_ui_pow_ui(nM.get_mpz_t(), 3, M);
      mpz_ui_pow_ui(mMk.get_mpz_t(), 2, M - k);
      mpz_ui_pow_ui(mk.get_mpz_t(), 2, k);
      mpz_ui_pow_ui(nk.get_mpz_t(), 3, k);
      const mpz_class expected = nM * mMk * (mk - nk);
      const Int q = bs::power_in_N_exponent(p, M, k);
      c.expect(q != 0, "zero exponent");
      c.expect(q == expected, "M=" + std::to_string(M) + " k=" + std::to_string(k) + " gives " + q.get_str());
    }
  }
  bool rejected = false;
  try {
    bs::power_in_N_exponent(bs::Params(2, 2), 1, 1);
  } catch (const Error&) {
    rejected = true;
  }
  c.expect(rejected, "(2,2) accepted");
  c.note("6 exponents match, (2,2) rejected");
  return c.out;
}

Outcome membership() {
  Check c;
  const auto p4 = fixtures::group("P4");
  const std::vector<Word> h{p4.alphabet().parse("a"), p4.alphabet().parse("b"), p4.alphabet().parse("c")};
  std::size_t max_witness = 0;
  for (int i = 0; i < 20; ++i) {
    Word g;
    const auto len = uniform(1, 8);
    for (long k = 0; k < len; ++k) {
      const Word& gen = h[uniform(0, 2)];
      g *= uniform(0, 1) ? gen : gen.inverse();
    }
    const auto r = membership_semidecide(p4, h, g, SearchBudget{8, 2, 2'000'000});
    c.expect(r.verdict == Verdict::Yes, "no witness for " + p4.alphabet().format(g));
    c.expect(verify_membership_witness(p4, h, g, r.witness_abstract), "witness does not re-verify");
    max_witness = std::max(max_witness, r.witness_abstract.size());
  }
  const Word d = p4.alphabet().parse("d");
  const auto r = membership_semidecide(p4, h, d, SearchBudget{8, 2, 1'000'000});
  c.expect(r.verdict == Verdict::No, "d not separated");
  if (r.verdict == Verdict::No) {
    c.expect(r.separation->assignment.degree == 2, "separation degree");
    c.expect(verify_separation(p4.presentation(), h, d, *r.separation), "separation does not re-verify");
  }
  c.note("20 witnesses (longest " + std::to_string(max_witness) + "), d separated at degree 2");
  return c.out;
}

Outcome cross_model() {
  Check c;
  const auto words = all_words(2, 8);
  for (auto [m, n] : {std::pair{2L, 3L}, {2L, 2L}}) {
    const bs::Params p(m, n);
    const GraphOfGroups gog = baumslag_solitar_gog(m, n);
    std::size_t trivial = 0;
    for (const auto& w : words) {
      const Word nf = bs::normal_form(p, w);
      const bool t1 = nf.empty(), t2 = gog.word_problem(w);
      c.expect(t1 == t2, "word problems disagree on " + bs::alphabet().format(w));
      c.expect(gog.word_problem(nf * w.inverse()), "normal form not equal in gog model");
      trivial += t1;
    }
    c.note("(" + std::to_string(m) + "," + std::to_string(n) + "): " + std::to_string(trivial) + " trivial");
  }
  c.note(std::to_string(words.size()) + " words each");
  return c.out;
}

Outcome wpd_and_kernel() {
  Check c;
  const GraphOfGroups split = p4_splitting();
  const auto cand = split.wpd_candidate();
  c.expect(split.classify_isometry(cand.word) == Isometry::Hyperbolic, "candidate is elliptic");
  const auto check = split.check_relative_wpd(cand.word, 4);
  c.expect(check.kind == WpdCheck::Kind::Verified && check.radius == 4, "relative WPD not Verified(4)");

  const auto k1 = split.kernel_of_action();
  c.expect(k1.kind == KernelOfAction::Kind::Trivial, "P4 splitting kernel not trivial");
  // No edge-group generator is central, so no nontrivial edge element is
  // fixed by the whole group.
  for (const char* e : {"b", "c"}) {
    const Word ew = split.alphabet().parse(e);
    bool moved = false;
    for (std::uint32_t s = 0; s < split.alphabet().size(); ++s) {
      const Word sg = Word::generator(s);
      moved = moved || !split.word_problem(sg.inverse() * ew * sg * ew.inverse());
    }
    c.expect(moved, std::string("edge generator ") + e + " is central");
  }

  const GraphOfGroups bs22 = baumslag_solitar_gog(2, 2);
  const auto k2 = bs22.kernel_of_action();
  c.expect(k2.kind == KernelOfAction::Kind::Cyclic, "BS(2,2) kernel not cyclic");
  if (k2.kind == KernelOfAction::Kind::Cyclic) {
    const Word x2 = x_power(2);
    c.expect(bs22.word_problem(k2.generator * x2.inverse()), "kernel generator is not x^2");
    for (std::uint32_t s = 0; s < bs22.alphabet().size(); ++s) {
      const Word sg = Word::generator(s);
      const Word conj = sg.inverse() * k2.generator * sg;
      c.expect(bs22.word_problem(conj * k2.generator.inverse()) || bs22.word_problem(conj * k2.generator),
               "kernel generator not normalised");
    }
  }
  c.note("candidate " + split.alphabet().format(cand.word) + " hyperbolic, Verified(" +
         std::to_string(check.radius) + "); kernels trivial and <x^2>");
  return c.out;
}

Outcome classification() {
  Check c;
  const auto z = fixtures::subdirect("z_kernel_p4xp4");
  const auto rz = classify_structure(z, ClassifyBudget{});
  c.expect(rz.bucket == "Z-kernel", "z_kernel bucket " + rz.bucket);
  c.expect(rz.ab1.rank == 1 && rz.ab1.torsion.empty(), "side 1 abelianization");
  c.expect(rz.ab2.rank == 1 && rz.ab2.torsion.empty(), "side 2 abelianization");
  c.expect(rz.ab1 == rz.ab2, "abelianizations differ");
  c.expect(classify_structure(z, ClassifyBudget{}).to_json(z) == rz.to_json(z), "z_kernel report not deterministic");

  const auto full = fixtures::subdirect("full_p4xp4");
  const auto rf = classify_structure(full, ClassifyBudget{});
  c.expect(rf.bucket == "finite-index", "full bucket " + rf.bucket);
  c.expect(rf.index && *rf.index == 1, "full index");
  c.expect(classify_structure(full, ClassifyBudget{}).to_json(full) == rf.to_json(full),
           "full report not deterministic");
  c.note("Z-kernel with rank 1 | rank 1; finite-index with index 1");
  return c.out;
}

struct Criterion {
  const char* name;
  double limit_s;  // 0 when no time bound is stated
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"raag-oracle-equivalence", 60, raag_oracle_equivalence},
      {"kernel-basis", 30, kernel_basis},
      {"quotient-infinite-cyclic", 0, quotient_rank},
      {"droms-index-2", 0, droms_index_two},
      {"bs-h1-suite", 10, bs_suite},
      {"conjugation-power-identities", 10, power_identities},
      {"power-in-n-exponent", 0, power_in_n},
      {"membership-semidecision", 10, membership},
      {"bs-cross-model", 0, cross_model},
      {"wpd-and-kernel-of-action", 0, wpd_and_kernel},
      {"structure-classification", 0, classification},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& cr = criteria[i];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (cr.limit_s > 0 && secs >= cr.limit_s) {
      o.ok = false;
      o.detail += "; over the " + std::to_string(static_cast<int>(cr.limit_s)) + " s limit";
    }
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << (i + 1) << " " << cr.name << " [" << timing << "] " << o.detail
              << std::endl;
    failed += !o.ok;
  }
  return failed == 0 ? 0 : 1;
}
