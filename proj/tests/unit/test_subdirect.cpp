#include <set>

#include "doctest.h"
#include "test_util.hpp"

#include "cgt/fixtures.hpp"
#include "cgt/subdirect.hpp"

using namespace cgt;
using cgt::testing::uniform;

namespace {

Word parse(const GroupModel& g, const char* s) { return g.alphabet().parse(s); }

bool has_note(const StructureReport& r, const std::string& needle) {
  for (const auto& n : r.notes)
    if (n.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("group models") {
  const auto p4 = fixtures::group("P4");
  const auto prod = GroupModel::product(p4, fixtures::group("P4'"));
  CHECK(prod.kind() == GroupModel::Kind::Product);
  CHECK(prod.alphabet().size() == 8);
  CHECK(prod.presentation().relators.size() == 3 + 3 + 16);
  const Word w = parse(prod, "a a' c^-1 d'");
  CHECK(prod.side_part(w, 1) == parse(p4, "a c^-1"));
  CHECK(prod.side_part(w, 2) == fixtures::group("P4'").alphabet().parse("a' d'"));
  CHECK(prod.embed(parse(p4, "b"), 2) == parse(prod, "b'"));
  CHECK(prod.word_problem(parse(prod, "a a' a^-1 a'^-1")));
  CHECK_FALSE(prod.word_problem(parse(prod, "a c a^-1 c^-1")));
  CHECK(prod.equal(parse(prod, "d' a"), parse(prod, "a d'")));
  CHECK_THROWS_AS(GroupModel::product(p4, p4), Error);
  CHECK_THROWS_AS(p4.factor(1), Error);
  for (const auto& name : fixtures::group_names()) {
    if (name == "BS(m,n)") continue;
    const auto g = fixtures::group(name);
    CHECK(GroupModel::from_json(g.to_json()).to_json() == g.to_json());
  }
  CHECK(fixtures::group("BS(2,-3)").kind() == GroupModel::Kind::Gog);
  CHECK_THROWS_AS(fixtures::group("nope"), Error);
  CHECK(GroupModel::from_json(R"({"fixture":"P4"})").alphabet() == p4.alphabet());
}

TEST_CASE("exact membership decisions") {
  const auto z2 = fixtures::group("Z2");
  const std::vector<Word> h{parse(z2, "a^2"), parse(z2, "a b")};
  REQUIRE(z2.has_membership_decision(h));
  CHECK(z2.decide_membership(h, parse(z2, "b^2")) == true);
  CHECK(z2.decide_membership(h, parse(z2, "b")) == false);
  const auto p4 = fixtures::group("P4");
  const std::vector<Word> abc{parse(p4, "a"), parse(p4, "b"), parse(p4, "c")};
  REQUIRE(p4.has_membership_decision(abc));
  CHECK(p4.decide_membership(abc, parse(p4, "c b a^-1 c")) == true);
  // d commutes with c.
  CHECK(p4.decide_membership(abc, parse(p4, "d c d^-1")) == true);
  CHECK(p4.decide_membership(abc, parse(p4, "d a d^-1")) == false);
  CHECK(p4.decide_membership(abc, parse(p4, "d b d^-1 d")) == false);
  CHECK(p4.decide_membership(abc, parse(p4, "d c^2 d^-1 b")) == true);
  CHECK_FALSE(p4.has_membership_decision(fixtures::droms_index2_subgroup()));
  CHECK_FALSE(p4.decide_membership(fixtures::droms_index2_subgroup(), parse(p4, "a")).has_value());
}

TEST_CASE("subdirect inputs") {
  const auto s = fixtures::subdirect("diagonal_p4");
  CHECK(s.names.names() == std::vector<std::string>{"s1", "s2", "s3", "s4"});
  const Word ab = s.names.parse("s1 s2");
  CHECK(project(s, 1, ab) == parse(s.g1, "a b"));
  CHECK(project(s, 2, ab) == parse(s.g2, "a' b'"));
  CHECK(project(s, 1, Word{}).empty());
  const auto bb = fixtures::subdirect("bb_kernel_p4xp4");
  CHECK(project(bb, 1, bb.names.parse("s1")) == parse(bb.g1, "c"));
  CHECK(project(bb, 2, bb.names.parse("s1")).empty());
  CHECK_THROWS_AS(project(s, 1, Word::generator(9)), Error);
  for (const auto& name : fixtures::subdirect_names()) {
    const auto x = fixtures::subdirect(name);
    const auto y = SubdirectInput::from_json(x.to_json());
    CHECK(y.to_json() == x.to_json());
    CHECK(y.generators == x.generators);
  }
  CHECK_THROWS_AS(SubdirectInput(s.g1, s.g2, {}), Error);
  CHECK_THROWS_AS(SubdirectInput::from_json(R"({"ambient":{}})"), Error);
  CHECK_THROWS_AS(fixtures::subdirect("nope"), Error);
}

TEST_CASE("bestvina-brady fixture lies in the kernel") {
  const auto s = fixtures::subdirect("bb_kernel_p4xp4");
  const HomToZn f1{1, {{1}, {1}, {0}, {1}}};
  const HomToZn f2{1, {{1}, {1}, {1}, {1}}};
  for (const auto& g : s.generators) CHECK(eval_hom(f1, g.first)[0] + eval_hom(f2, g.second)[0] == 0);
  const auto z = fixtures::subdirect("z_kernel_p4xp4");
  for (const auto& g : z.generators) CHECK(eval_hom(f2, g.first)[0] == eval_hom(f2, g.second)[0]);
}

TEST_CASE("fiber search") {
  CHECK(fiber_search(fixtures::subdirect("diagonal_p4"), 1, 4).found.empty());
  CHECK(fiber_search(fixtures::subdirect("diagonal_p4"), 2, 4).found.empty());
  const auto bb = fixtures::subdirect("bb_kernel_p4xp4");
  const auto r = fiber_search(bb, 1, 1);
  REQUIRE_FALSE(r.found.empty());
  CHECK(r.found.front().element.first == parse(bb.g1, "c"));
  CHECK(r.radius_searched == 1);
  CHECK_THROWS_AS(fiber_search(bb, 1, 0), Error);
  const auto full = fixtures::subdirect("full_p4xp4");
  CHECK(fiber_search(full, 1, 1).found.size() == 8);
  CHECK(fiber_search(full, 2, 1).found.size() == 8);
}

TEST_CASE("fiber witnesses verify and are closed under inverse") {
  for (const char* name : {"bb_kernel_p4xp4", "z_kernel_p4xp4", "miller_free_index"}) {
    const auto s = fixtures::subdirect(name);
    for (int side : {1, 2}) {
      const auto r = fiber_search(s, side, 2);
      std::set<Word, ShortlexLess> forms;
      for (const auto& f : r.found) forms.insert(side == 1 ? f.element.first : f.element.second);
      for (const auto& f : r.found) {
        CHECK(s.factor(3 - side).word_problem(project(s, 3 - side, f.abstract_word)));
        const Word on = project(s, side, f.abstract_word);
        CHECK_FALSE(s.factor(side).word_problem(on));
        CHECK(forms.count(s.factor(side).normal_form(on.inverse())) == 1);
      }
    }
  }
}

TEST_CASE("membership semi-decision") {
  const auto p4 = fixtures::group("P4");
  const std::vector<Word> h{parse(p4, "a"), parse(p4, "b"), parse(p4, "c")};
  auto r = membership_semidecide(p4, h, parse(p4, "b"), SearchBudget{});
  REQUIRE(r.verdict == Verdict::Yes);
  CHECK(r.witness_abstract.size() == 1);
  CHECK(verify_membership_witness(p4, h, parse(p4, "b"), r.witness_abstract));

  r = membership_semidecide(p4, h, parse(p4, "d"), SearchBudget{});
  REQUIRE(r.verdict == Verdict::No);
  REQUIRE(r.separation.has_value());
  CHECK(r.separation->assignment.degree == 2);
  CHECK(perm_cycles(r.separation->assignment.images[3]) == "(1 2)");
  CHECK(verify_separation(p4.presentation(), h, parse(p4, "d"), *r.separation));

  // d c d^-1 = c, but a budget of three steps never reaches words of length 1.
  r = membership_semidecide(p4, h, parse(p4, "d c d^-1"), SearchBudget{2, 2, 3});
  CHECK(r.verdict == Verdict::Unknown);
  CHECK(r.positive_steps + r.negative_steps <= 3);
  r = membership_semidecide(p4, h, parse(p4, "d c d^-1"), SearchBudget{});
  CHECK(r.verdict == Verdict::Yes);
  r = membership_semidecide(p4, h, parse(p4, "d a d^-1"), SearchBudget{2, 2, 20});
  CHECK(r.verdict == Verdict::Unknown);

  // Positive witness in a product of a RAAG and a graph of groups.
  const auto prod = GroupModel::product(fixtures::group("Z2"), fixtures::group("BS(1,2)"));
  const std::vector<Word> hp{parse(prod, "a x"), parse(prod, "t")};
  const Word g = parse(prod, "t^-1 a x t");
  r = membership_semidecide(prod, hp, g, SearchBudget{4, 2, 100000});
  REQUIRE(r.verdict == Verdict::Yes);
  CHECK(verify_membership_witness(prod, hp, g, r.witness_abstract));
  CHECK_FALSE(verify_membership_witness(prod, hp, g, Word{}));
}

TEST_CASE("membership witnesses always re-verify") {
  const auto p4 = fixtures::group("P4");
  const std::vector<Word> h{parse(p4, "a"), parse(p4, "b"), parse(p4, "c")};
  for (int i = 0; i < 20; ++i) {
    Word g;
    const auto len = uniform(1, 6);
    for (long k = 0; k < len; ++k) g *= uniform(0, 1) ? h[uniform(0, 2)] : h[uniform(0, 2)].inverse();
    const auto r = membership_semidecide(p4, h, g, SearchBudget{8, 2, 1'000'000});
    REQUIRE(r.verdict == Verdict::Yes);
    CHECK(verify_membership_witness(p4, h, g, r.witness_abstract));
  }
}

TEST_CASE("coset cover") {
  const auto z = fixtures::group("Z");
  auto r = coset_cover_check(z, {parse(z, "a^2")}, {}, {Word{}, parse(z, "a")}, Word{}, 6, 4);
  CHECK(r.kind == CoverResult::Kind::Covered);
  CHECK(r.elements_checked == 13);
  CHECK(r.factorisations.size() == 13);

  const auto f2 = fixtures::group("F2");
  r = coset_cover_check(f2, {parse(f2, "a")}, {}, {Word{}}, parse(f2, "b"), 2, 3);
  CHECK(r.kind == CoverResult::Kind::Unknown);
  CHECK(r.witness == parse(f2, "b a"));
  CHECK_FALSE(r.decidable);

  r = coset_cover_check(f2, {parse(f2, "a")}, {}, {}, parse(f2, "b"), 2, 3);
  CHECK(r.kind == CoverResult::Kind::Uncovered);
  CHECK(r.witness.empty());

  // Complete decision: c trivial and H = <a^3> decided by the lattice.
  r = coset_cover_check(z, {parse(z, "a^3")}, {}, {Word{}}, Word{}, 2, 3);
  CHECK(r.kind == CoverResult::Kind::Uncovered);
  CHECK(r.witness == parse(z, "a"));
  CHECK(r.decidable);

  // Abelian ambient: the c-power is read off the lattice.
  const auto z2 = fixtures::group("Z2");
  r = coset_cover_check(z2, {parse(z2, "a^2")}, {}, {Word{}, parse(z2, "a")}, parse(z2, "b"), 3, 2);
  CHECK(r.kind == CoverResult::Kind::Covered);
  for (const auto& f : r.factorisations) {
    Word cpow = Word::power(1, f.power);
    CHECK(z2.equal(f.g, f.h * (f.coset == 0 ? Word{} : parse(z2, "a")) * cpow));
  }

  // Extra generators enlarge H.
  r = coset_cover_check(z, {parse(z, "a^4")}, {parse(z, "a^2")}, {Word{}, parse(z, "a")}, Word{}, 5, 4);
  CHECK(r.kind == CoverResult::Kind::Covered);
}

TEST_CASE("quotient presentations") {
  const auto p4 = fixtures::group("P4");
  const auto q = quotient_presentation(p4, fixtures::p4_kernel_basis());
  const auto inv = abelianization_invariants(q);
  CHECK(inv.rank == 1);
  CHECK(inv.torsion.empty());
  CHECK(quotient_presentation(p4, {}).relators == p4.presentation().relators);
  const auto z = fixtures::group("Z");
  CHECK(abelianization_invariants(quotient_presentation(z, {parse(z, "a^3")})).torsion == std::vector<Int>{3});
  CHECK_THROWS_AS(quotient_presentation(z, {Word::generator(4)}), Error);
}

TEST_CASE("structure classification") {
  const ClassifyBudget budget{3, 2000};
  auto s = fixtures::subdirect("z_kernel_p4xp4");
  auto r = classify_structure(s, budget);
  CHECK(r.bucket == "Z-kernel");
  CHECK(r.ab1.rank == 1);
  CHECK(r.ab2.rank == 1);
  CHECK(r.ab1.torsion.empty());
  CHECK_FALSE(r.index.has_value());
  CHECK(r.to_json(s) == classify_structure(s, budget).to_json(s));

  s = fixtures::subdirect("full_p4xp4");
  r = classify_structure(s, budget);
  CHECK(r.bucket == "finite-index");
  REQUIRE(r.index.has_value());
  CHECK(*r.index == 1);
  CHECK(r.fiber1.found.size() >= 8);

  s = fixtures::subdirect("diagonal_p4");
  r = classify_structure(s, budget);
  CHECK(r.bucket == "unknown");
  CHECK(r.fiber1.found.empty());
  CHECK(has_note(r, "isomorphic-to-factor"));

  s = fixtures::subdirect("miller_free_index");
  r = classify_structure(s, budget);
  CHECK(r.bucket == "finite-index");
  REQUIRE(r.index.has_value());
  CHECK(*r.index == 2);
  CHECK(validate_coset_table(s.ambient().presentation(), s.product_generators(), r.index_table).empty());

  s = fixtures::subdirect("bb_kernel_p4xp4");
  r = classify_structure(s, budget);
  CHECK(r.bucket != "finite-index");
  CHECK_FALSE(r.fiber1.found.empty());
}
