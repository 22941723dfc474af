#include "cgt/subdirect.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include <nlohmann/json.hpp>

#include "cgt/fixtures.hpp"

namespace cgt {

using nlohmann::json;

GroupModel GroupModel::raag(RaagPresentation p) {
  GroupModel m;
  m.kind_ = Kind::Raag;
  m.alphabet_ = p.alphabet();
  m.presentation_ = p.presentation();
  m.raag_ = std::make_shared<const RaagPresentation>(std::move(p));
  return m;
}

GroupModel GroupModel::gog(GraphOfGroups g) {
  GroupModel m;
  m.kind_ = Kind::Gog;
  m.alphabet_ = g.alphabet();
  m.presentation_ = g.presentation();
  m.gog_ = std::make_shared<const GraphOfGroups>(std::move(g));
  return m;
}

GroupModel GroupModel::product(GroupModel first, GroupModel second) {
  GroupModel m;
  m.kind_ = Kind::Product;
  std::vector<std::string> names = first.alphabet().names();
  for (const auto& n : second.alphabet().names()) names.push_back(n);
  m.alphabet_ = GenAlphabet(names);  // rejects shared symbols
  const auto n1 = static_cast<std::uint32_t>(first.alphabet().size());
  const auto n2 = static_cast<std::uint32_t>(second.alphabet().size());
  std::vector<Word> rels = first.presentation().relators;
  for (const auto& r : second.presentation().relators) {
    Word w;
    for (const auto& l : r) w.push_back(Letter{l.gen + n1, l.sign});
    rels.push_back(std::move(w));
  }
  for (std::uint32_t x = 0; x < n1; ++x)
    for (std::uint32_t y = 0; y < n2; ++y) rels.push_back(commutator(Word::generator(x), Word::generator(n1 + y)));
  m.presentation_ = FinitePresentation(m.alphabet_, std::move(rels));
  m.first_ = std::make_shared<const GroupModel>(std::move(first));
  m.second_ = std::make_shared<const GroupModel>(std::move(second));
  return m;
}

namespace {

GroupModel model_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::MalformedInput, "group must be a JSON object");
  if (j.contains("fixture")) return fixtures::group(j.at("fixture").get<std::string>());
  if (j.contains("raag")) return GroupModel::raag(RaagPresentation::from_json(j.at("raag").dump()));
  if (j.contains("gog")) return GroupModel::gog(GraphOfGroups::from_json(j.at("gog").dump()));
  if (j.contains("product")) {
    const auto& p = j.at("product");
    if (!p.is_array() || p.size() != 2) throw Error(ErrorKind::MalformedInput, "product needs two factors");
    return GroupModel::product(model_from_json(p[0]), model_from_json(p[1]));
  }
  throw Error(ErrorKind::MalformedInput, "group needs one of fixture, raag, gog, product");
}

json model_to_json(const GroupModel& m) {
  switch (m.kind()) {
    case GroupModel::Kind::Raag:
      return json{{"raag", json::parse(m.as_raag()->to_json())}};
    case GroupModel::Kind::Gog:
      return json{{"gog", json::parse(m.as_gog()->to_json())}};
    case GroupModel::Kind::Product:
      return json{{"product", json::array({model_to_json(m.factor(1)), model_to_json(m.factor(2))})}};
  }
  return {};
}

}  // namespace

GroupModel GroupModel::from_json(const std::string& text) {
  try {
    return model_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedInput, std::string("group JSON: ") + e.what());
  }
}

std::string GroupModel::to_json() const { return model_to_json(*this).dump(); }

const GroupModel& GroupModel::factor(int side) const {
  if (kind_ != Kind::Product) throw Error(ErrorKind::Precondition, "not a product");
  return side == 1 ? *first_ : *second_;
}

Word GroupModel::side_part(const Word& w, int side) const {
  const auto n1 = static_cast<std::uint32_t>(first_->alphabet().size());
  Word out;
  for (const auto& l : w) {
    if (side == 1 && l.gen < n1) out.push_back(l);
    if (side == 2 && l.gen >= n1) out.push_back(Letter{l.gen - n1, l.sign});
  }
  return out;
}

Word GroupModel::embed(const Word& w, int side) const {
  if (side == 1) return w;
  const auto n1 = static_cast<std::uint32_t>(first_->alphabet().size());
  Word out;
  for (const auto& l : w) out.push_back(Letter{l.gen + n1, l.sign});
  return out;
}

Word GroupModel::normal_form(const Word& w) const {
  alphabet_.check(w);
  switch (kind_) {
    case Kind::Raag:
      return raag_->normal_form(w);
    case Kind::Gog:
      return gog_->normal_form(w);
    case Kind::Product:
      return embed(first_->normal_form(side_part(w, 1)), 1) * embed(second_->normal_form(side_part(w, 2)), 2);
  }
  return {};
}

bool GroupModel::word_problem(const Word& w) const {
  alphabet_.check(w);
  switch (kind_) {
    case Kind::Raag:
      return raag_->word_problem(w);
    case Kind::Gog:
      return gog_->word_problem(w);
    case Kind::Product:
      return first_->word_problem(side_part(w, 1)) && second_->word_problem(side_part(w, 2));
  }
  return false;
}

namespace {

bool is_complete_graph(const SimplicialGraph& g) {
  const std::size_t n = g.vertex_count();
  return g.edges().size() == n * (n - 1) / 2;
}

std::optional<std::set<std::uint32_t>> vertex_support(const std::vector<Word>& gens) {
  std::set<std::uint32_t> s;
  for (const auto& w : gens) {
    Word r = free_reduce(w);
    if (r.empty()) continue;
    if (r.size() != 1) return std::nullopt;
    s.insert(r[0].gen);
  }
  return s;
}

IntVec exponent_vector(const Word& w, std::size_t n) {
  IntVec v(n, 0);
  for (const auto& l : w) v[l.gen] += l.sign;
  return v;
}

}  // namespace

bool GroupModel::has_membership_decision(const std::vector<Word>& gens) const {
  bool all_trivial = std::all_of(gens.begin(), gens.end(), [&](const Word& w) { return word_problem(w); });
  if (all_trivial) return true;
  switch (kind_) {
    case Kind::Raag:
      return is_complete_graph(raag_->graph()) || vertex_support(gens).has_value();
    case Kind::Gog:
      return false;
    case Kind::Product: {
      std::vector<Word> a, b;
      for (const auto& w : gens) {
        Word s1 = side_part(w, 1), s2 = side_part(w, 2);
        bool t1 = first_->word_problem(s1), t2 = second_->word_problem(s2);
        if (!t1 && !t2) return false;
        if (!t1) a.push_back(s1);
        if (!t2) b.push_back(s2);
      }
      return first_->has_membership_decision(a) && second_->has_membership_decision(b);
    }
  }
  return false;
}

std::optional<bool> GroupModel::decide_membership(const std::vector<Word>& gens, const Word& g) const {
  if (!has_membership_decision(gens)) return std::nullopt;
  if (std::all_of(gens.begin(), gens.end(), [&](const Word& w) { return word_problem(w); })) {
    return word_problem(g);
  }
  switch (kind_) {
    case Kind::Raag: {
      const std::size_t n = alphabet_.size();
      if (is_complete_graph(raag_->graph())) {
        std::vector<IntVec> vs;
        for (const auto& w : gens) vs.push_back(exponent_vector(w, n));
        return lattice_membership(vs, exponent_vector(g, n)).has_value();
      }
      auto support = *vertex_support(gens);
      for (const auto& l : raag_->normal_form(g))
        if (!support.count(l.gen)) return false;
      return true;
    }
    case Kind::Gog:
      return std::nullopt;
    case Kind::Product: {
      std::vector<Word> a, b;
      for (const auto& w : gens) {
        Word s1 = side_part(w, 1), s2 = side_part(w, 2);
        if (!first_->word_problem(s1)) a.push_back(s1);
        if (!second_->word_problem(s2)) b.push_back(s2);
      }
      auto d1 = first_->decide_membership(a, side_part(g, 1));
      auto d2 = second_->decide_membership(b, side_part(g, 2));
      if (!d1 || !d2) return std::nullopt;
      return *d1 && *d2;
    }
  }
  return std::nullopt;
}

namespace {

std::vector<std::string> default_names(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back("s" + std::to_string(i + 1));
  return out;
}

Word expand(const std::vector<Word>& gens, const Word& abstract) {
  Word out;
  for (const auto& l : abstract) out *= l.sign > 0 ? gens.at(l.gen) : gens.at(l.gen).inverse();
  return free_reduce(out);
}

}  // namespace

SubdirectInput::SubdirectInput(GroupModel a, GroupModel b, std::vector<PairWord> gens,
                               std::vector<Word> rels)
    : g1(std::move(a)), g2(std::move(b)), generators(std::move(gens)), relators(std::move(rels)) {
  if (generators.empty()) throw Error(ErrorKind::MalformedInput, "subdirect input needs at least one generator");
  for (auto& p : generators) {
    g1.alphabet().check(p.first);
    g2.alphabet().check(p.second);
    p.first = free_reduce(p.first);
    p.second = free_reduce(p.second);
  }
  names = GenAlphabet(default_names(generators.size()));
  for (const auto& r : relators) names.check(r);
}

SubdirectInput SubdirectInput::from_json(const std::string& text) {
  try {
    auto j = json::parse(text);
    const auto& amb = j.at("ambient");
    GroupModel a = model_from_json(amb.at("G1"));
    GroupModel b = model_from_json(amb.at("G2"));
    std::vector<PairWord> gens;
    for (const auto& p : j.at("generators")) {
      if (!p.is_array() || p.size() != 2) throw Error(ErrorKind::MalformedInput, "generator must be [w1, w2]");
      gens.push_back({a.alphabet().parse(p[0].get<std::string>()), b.alphabet().parse(p[1].get<std::string>())});
    }
    GenAlphabet names(default_names(gens.size()));
    std::vector<Word> rels;
    if (j.contains("relators"))
      for (const auto& r : j.at("relators")) rels.push_back(names.parse(r.get<std::string>()));
    return SubdirectInput(std::move(a), std::move(b), std::move(gens), std::move(rels));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedInput, std::string("subdirect JSON: ") + e.what());
  }
}

std::string SubdirectInput::to_json() const {
  json j;
  j["ambient"] = {{"G1", model_to_json(g1)}, {"G2", model_to_json(g2)}};
  j["generators"] = json::array();
  for (const auto& p : generators) j["generators"].push_back({g1.alphabet().format(p.first), g2.alphabet().format(p.second)});
  if (!relators.empty()) {
    j["relators"] = json::array();
    for (const auto& r : relators) j["relators"].push_back(names.format(r));
  }
  return j.dump();
}

std::vector<Word> SubdirectInput::product_generators() const {
  GroupModel amb = ambient();
  std::vector<Word> out;
  for (const auto& p : generators) out.push_back(amb.embed(p.first, 1) * amb.embed(p.second, 2));
  return out;
}

Word project(const SubdirectInput& s, int side, const Word& abstract_word) {
  s.names.check(abstract_word);
  std::vector<Word> gens;
  for (const auto& p : s.generators) gens.push_back(side == 1 ? p.first : p.second);
  return expand(gens, abstract_word);
}

FiberReport fiber_search(const SubdirectInput& s, int side, std::size_t radius) {
  if (radius < 1) throw Error(ErrorKind::Precondition, "fiber search radius must be at least 1");
  if (side != 1 && side != 2) throw Error(ErrorKind::Precondition, "side must be 1 or 2");
  const int other = 3 - side;
  FiberReport r;
  r.side = side;
  r.radius_searched = radius;
  std::set<Word, ShortlexLess> seen;
  ReducedWordEnumerator en(s.generators.size(), radius);
  while (auto w = en.next()) {
    if (w->empty()) continue;
    ++r.words_checked;
    if (!s.factor(other).word_problem(project(s, other, *w))) continue;
    Word nf = s.factor(side).normal_form(project(s, side, *w));
    if (nf.empty() || !seen.insert(nf).second) continue;
    FiberWitness fw;
    fw.abstract_word = *w;
    (side == 1 ? fw.element.first : fw.element.second) = nf;
    r.found.push_back(std::move(fw));
  }
  return r;
}

MembershipResult membership_semidecide(const GroupModel& d, const std::vector<Word>& h_gens,
                                       const Word& g, const SearchBudget& budget) {
  constexpr std::size_t kSlice = 256;
  for (const auto& h : h_gens) d.alphabet().check(h);
  d.alphabet().check(g);
  MembershipResult res;
  const Word g_inv = g.inverse();
  const FinitePresentation& pres = d.presentation();

  ReducedWordEnumerator positive(h_gens.size(), budget.max_length);
  std::unique_ptr<HomEnumerator> negative;
  std::size_t degree = 1;
  std::size_t steps = 0;

  while (steps < budget.max_steps && !(res.positive_exhausted && res.negative_exhausted)) {
    for (std::size_t i = 0; i < kSlice && steps < budget.max_steps && !res.positive_exhausted; ++i) {
      auto w = positive.next();
      if (!w) {
        res.positive_exhausted = true;
        break;
      }
      ++steps;
      ++res.positive_steps;
      Word prod = expand(h_gens, *w);
      if (d.word_problem(g_inv * prod)) {
        res.verdict = Verdict::Yes;
        res.witness_abstract = *w;
        res.witness = prod;
        return res;
      }
    }

    std::size_t quota = std::min(kSlice, budget.max_steps - steps);
    while (quota > 0 && !res.negative_exhausted) {
      if (!negative) {
        if (degree > budget.max_degree) {
          res.negative_exhausted = true;
          break;
        }
        negative = std::make_unique<HomEnumerator>(pres, degree, 0);
      }
      const std::size_t before = negative->nodes();
      negative->add_budget(quota);
      while (auto a = negative->next()) {
        Perm gi = a->evaluate(g);
        if (perm_is_identity(gi)) continue;
        std::vector<Perm> hs;
        for (const auto& h : h_gens) hs.push_back(a->evaluate(h));
        if (perm_group_contains(hs, gi, degree)) continue;
        SeparationCertificate cert;
        cert.subgroup_order = perm_group_order(hs, degree);
        cert.assignment = std::move(*a);
        cert.subgroup_images = std::move(hs);
        cert.g_image = std::move(gi);
        const std::size_t used = negative->nodes() - before;
        steps += used;
        res.negative_steps += used;
        res.verdict = Verdict::No;
        res.separation = std::move(cert);
        return res;
      }
      const std::size_t used = negative->nodes() - before;
      steps += used;
      res.negative_steps += used;
      quota -= std::min(quota, used);
      if (negative->finished()) {
        negative.reset();
        ++degree;
      } else {
        break;
      }
    }
  }
  return res;
}

bool verify_membership_witness(const GroupModel& d, const std::vector<Word>& h_gens,
                               const Word& g, const Word& witness_abstract) {
  for (const auto& l : witness_abstract)
    if (l.gen >= h_gens.size()) return false;
  return d.word_problem(g.inverse() * expand(h_gens, witness_abstract));
}

const char* to_string(CoverResult::Kind k) {
  switch (k) {
    case CoverResult::Kind::Covered:
      return "covered";
    case CoverResult::Kind::Uncovered:
      return "uncovered";
    case CoverResult::Kind::Unknown:
      return "unknown";
  }
  return "?";
}

namespace {

std::vector<Word> ball_elements(const GroupModel& g, std::size_t radius) {
  if (g.kind() == GroupModel::Kind::Raag) {
    auto b = enumerate_ball(*g.as_raag(), radius);
    if (b.overflow) throw Error(ErrorKind::Budget, "ball too large");
    return b.elements;
  }
  std::vector<Word> out;
  std::set<Word, ShortlexLess> seen;
  ReducedWordEnumerator en(g.alphabet().size(), radius);
  while (auto w = en.next()) {
    Word nf = g.normal_form(*w);
    if (seen.insert(nf).second) out.push_back(*w);
  }
  return out;
}

// Normal forms of all products of at most `len` generators (and inverses).
std::set<Word, ShortlexLess> subgroup_ball(const GroupModel& g, const std::vector<Word>& gens,
                                           std::size_t len, std::size_t cap = 200'000) {
  std::set<Word, ShortlexLess> seen{Word{}};
  std::vector<Word> frontier{Word{}};
  for (std::size_t step = 0; step < len && seen.size() < cap; ++step) {
    std::vector<Word> next;
    for (const auto& f : frontier) {
      for (const auto& h : gens) {
        for (int s : {1, -1}) {
          Word nf = g.normal_form(f * (s > 0 ? h : h.inverse()));
          if (seen.insert(nf).second) next.push_back(std::move(nf));
        }
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace

CoverResult coset_cover_check(const GroupModel& g, const std::vector<Word>& subgens,
                              const std::vector<Word>& extra, const std::vector<Word>& cosets,
                              const Word& c, std::size_t radius, std::size_t witness_budget) {
  std::vector<Word> h = subgens;
  h.insert(h.end(), extra.begin(), extra.end());
  for (const auto& w : h) g.alphabet().check(w);
  for (const auto& w : cosets) g.alphabet().check(w);
  g.alphabet().check(c);

  CoverResult res;
  res.radius = radius;
  if (cosets.empty()) {
    res.kind = CoverResult::Kind::Uncovered;
    res.decidable = true;
    return res;
  }

  const bool decidable = g.has_membership_decision(h);
  const bool c_trivial = g.word_problem(c);
  const bool abelian = g.kind() == GroupModel::Kind::Raag && is_complete_graph(g.as_raag()->graph());
  bool complete = decidable && (c_trivial || abelian || *g.decide_membership(h, c));
  res.decidable = complete;

  std::set<Word, ShortlexLess> hball;
  if (!decidable) hball = subgroup_ball(g, h, witness_budget);

  const long W = static_cast<long>(witness_budget);
  for (const auto& x : ball_elements(g, radius)) {
    ++res.elements_checked;
    bool found = false;
    for (std::size_t j = 0; j < cosets.size() && !found; ++j) {
      if (abelian && !c_trivial) {
        // g z_j^-1 = h + i c, read i off the lattice coefficients.
        const std::size_t n = g.alphabet().size();
        std::vector<IntVec> vs;
        for (const auto& w : h) vs.push_back(exponent_vector(w, n));
        vs.push_back(exponent_vector(c, n));
        auto coeff = lattice_membership(vs, exponent_vector(x * cosets[j].inverse(), n));
        if (coeff && coeff->back().fits_slong_p()) {
          long i = coeff->back().get_si();
          Word cpow;
          for (long k = 0; k < std::labs(i); ++k) cpow *= i > 0 ? c.inverse() : c;
          res.factorisations.push_back({x, j, i, g.normal_form(x * cpow * cosets[j].inverse())});
          found = true;
        }
        continue;
      }
      for (long step = 0; step <= 2 * W && !found; ++step) {
        long i = (step % 2 == 1) ? (step + 1) / 2 : -(step / 2);
        if (c_trivial && i != 0) break;
        Word cpow;
        for (long k = 0; k < std::labs(i); ++k) cpow *= i > 0 ? c.inverse() : c;
        Word target = x * cpow * cosets[j].inverse();
        bool in_h = decidable ? *g.decide_membership(h, target) : hball.count(g.normal_form(target)) > 0;
        if (in_h) {
          res.factorisations.push_back({x, j, i, g.normal_form(target)});
          found = true;
        }
      }
    }
    if (!found) {
      res.witness = x;
      res.kind = complete ? CoverResult::Kind::Uncovered : CoverResult::Kind::Unknown;
      return res;
    }
  }
  res.kind = CoverResult::Kind::Covered;
  return res;
}

FinitePresentation quotient_presentation(const GroupModel& g, const std::vector<Word>& words) {
  for (const auto& w : words) g.alphabet().check(w);
  return g.presentation().with_relators(words);
}

StructureReport classify_structure(const SubdirectInput& s, const ClassifyBudget& budget) {
  StructureReport r;
  r.fiber1 = fiber_search(s, 1, budget.fiber_radius);
  r.fiber2 = fiber_search(s, 2, budget.fiber_radius);
  std::vector<Word> w1, w2;
  for (const auto& f : r.fiber1.found) w1.push_back(f.element.first);
  for (const auto& f : r.fiber2.found) w2.push_back(f.element.second);
  r.quotient1 = quotient_presentation(s.g1, w1);
  r.quotient2 = quotient_presentation(s.g2, w2);
  r.ab1 = abelianization_invariants(r.quotient1);
  r.ab2 = abelianization_invariants(r.quotient2);

  GroupModel amb = s.ambient();
  std::vector<Word> gens = s.product_generators();
  r.index_table = todd_coxeter(amb.presentation(), gens, budget.max_cosets);
  if (r.index_table.closed()) {
    std::string problem = validate_coset_table(amb.presentation(), gens, r.index_table);
    if (!problem.empty()) throw Error(ErrorKind::Precondition, "coset table failed validation: " + problem);
    r.index = r.index_table.index();
  }

  r.notes.push_back("L1 and L2 are represented by the fiber witnesses found up to radius " +
                    std::to_string(budget.fiber_radius) + "; each Gi/Li here surjects onto the true quotient");
  if (r.index) {
    r.bucket = "finite-index";
    r.notes.push_back("coset enumeration closed: S has index " + std::to_string(*r.index) + " in G1 x G2");
  } else if (r.fiber1.found.empty() && r.fiber2.found.empty()) {
    r.bucket = "unknown";
    r.notes.push_back("no fiber witnesses on either side: isomorphic-to-factor case (S meets both factors trivially within the radius)");
  } else if (!r.fiber1.found.empty() && !r.fiber2.found.empty() && r.ab1 == r.ab2 &&
             r.ab1.torsion.empty() && (r.ab1.rank == 1 || r.ab1.rank == 2)) {
    r.bucket = r.ab1.rank == 1 ? "Z-kernel" : "Z2-kernel";
    r.notes.push_back("G1/L1 and G2/L2 both abelianize to Z^" + std::to_string(r.ab1.rank) +
                      " and the coset enumeration overflowed at " + std::to_string(budget.max_cosets) + " cosets");
  } else {
    r.bucket = "unknown";
    r.notes.push_back("quotient invariants do not match a Z or Z^2 kernel");
  }
  return r;
}

namespace {

json invariants_json(const AbelianInvariants& a) {
  json t = json::array();
  for (const auto& x : a.torsion) t.push_back(x.get_str());
  return {{"rank", a.rank}, {"torsion", t}};
}

json fiber_json(const SubdirectInput& s, const FiberReport& f) {
  json found = json::array();
  for (const auto& w : f.found) {
    found.push_back({{"word", s.names.format(w.abstract_word)},
                     {"element", {s.g1.alphabet().format(w.element.first), s.g2.alphabet().format(w.element.second)}}});
  }
  return {{"side", f.side}, {"radius_searched", f.radius_searched}, {"words_checked", f.words_checked}, {"found", found}};
}

}  // namespace

std::string StructureReport::to_json(const SubdirectInput& s) const {
  json j;
  j["bucket"] = bucket;
  j["index"] = index ? json(*index) : json(nullptr);
  j["coset_enumeration"] = {{"status", index_table.closed() ? "closed" : "overflow"},
                            {"cosets_defined", index_table.cosets_defined}};
  if (index_table.closed()) j["coset_enumeration"]["table"] = json::parse(index_table.to_json());
  j["fibers"] = {fiber_json(s, fiber1), fiber_json(s, fiber2)};
  j["quotients"] = {{{"presentation", json::parse(quotient1.to_json())}, {"abelianization", invariants_json(ab1)}},
                    {{"presentation", json::parse(quotient2.to_json())}, {"abelianization", invariants_json(ab2)}}};
  j["notes"] = notes;
  return j.dump();
}

}  // namespace cgt
