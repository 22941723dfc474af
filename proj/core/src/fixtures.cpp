#include "cgt/fixtures.hpp"

#include <regex>

namespace cgt::fixtures {

namespace {

RaagPresentation primed_p4() {
  return RaagPresentation(SimplicialGraph::path(4), GenAlphabet({"a'", "b'", "c'", "d'"}));
}

RaagPresentation free_group(std::vector<std::string> names) {
  const std::size_t n = names.size();
  return RaagPresentation(SimplicialGraph(n, {}), GenAlphabet(std::move(names)));
}

Word w(const GroupModel& g, const std::string& s) { return g.alphabet().parse(s); }

SubdirectInput make(const GroupModel& g1, const GroupModel& g2,
                    const std::vector<std::pair<std::string, std::string>>& gens) {
  std::vector<PairWord> pairs;
  for (const auto& [a, b] : gens) pairs.push_back({w(g1, a), w(g2, b)});
  return SubdirectInput(g1, g2, std::move(pairs));
}

}  // namespace

std::vector<std::string> group_names() {
  return {"P4", "P4'", "F2", "F2'", "Z", "Z2", "P4_SPLITTING", "TUBULAR_AB", "TUBULAR_TWO", "BS(m,n)"};
}

GroupModel group(const std::string& name) {
  if (name == "P4") return GroupModel::raag(p4());
  if (name == "P4'") return GroupModel::raag(primed_p4());
  if (name == "F2") return GroupModel::raag(free_group({"a", "b"}));
  if (name == "F2'") return GroupModel::raag(free_group({"a'", "b'"}));
  if (name == "Z") return GroupModel::raag(free_group({"a"}));
  if (name == "Z2") return GroupModel::raag(RaagPresentation(SimplicialGraph::complete(2), GenAlphabet({"a", "b"})));
  if (name == "P4_SPLITTING") return GroupModel::gog(p4_splitting());
  if (name == "TUBULAR_AB") return GroupModel::gog(tubular_ab());
  if (name == "TUBULAR_TWO") return GroupModel::gog(tubular_two_vertex());
  static const std::regex bs(R"(BS\((-?\d+),(-?\d+)\))");
  std::smatch m;
  if (std::regex_match(name, m, bs)) {
    return GroupModel::gog(baumslag_solitar_gog(std::stol(m[1]), std::stol(m[2])));
  }
  throw Error(ErrorKind::MalformedInput, "unknown group fixture '" + name + "'");
}

std::vector<std::string> subdirect_names() {
  return {"diagonal_p4", "bb_kernel_p4xp4", "z_kernel_p4xp4", "full_p4xp4", "miller_free_index"};
}

SubdirectInput subdirect(const std::string& name) {
  const GroupModel p = group("P4"), q = group("P4'");
  if (name == "diagonal_p4") {
    return make(p, q, {{"a", "a'"}, {"b", "b'"}, {"c", "c'"}, {"d", "d'"}});
  }
  if (name == "bb_kernel_p4xp4") {
    // Kernel of f = f1 + f2 with f1(a) = f1(b) = f1(d) = 1, f1(c) = 0 and
    // f2 = 1 on every generator of the second factor.
    return make(p, q, {{"c", "1"}, {"b a^-1", "1"}, {"d a^-1", "1"}, {"a^-1", "a'"},
                       {"a^-1", "b'"}, {"a^-1", "c'"}, {"a^-1", "d'"}});
  }
  if (name == "z_kernel_p4xp4") {
    return make(p, q, {{"a", "a'"}, {"b", "b'"}, {"c", "c'"}, {"d", "d'"},
                       {"a b^-1", "1"}, {"b c^-1", "1"}, {"c d^-1", "1"},
                       {"1", "a' b'^-1"}, {"1", "b' c'^-1"}, {"1", "c' d'^-1"}});
  }
  if (name == "full_p4xp4") {
    return make(p, q, {{"a", "1"}, {"b", "1"}, {"c", "1"}, {"d", "1"},
                       {"1", "a'"}, {"1", "b'"}, {"1", "c'"}, {"1", "d'"}});
  }
  if (name == "miller_free_index") {
    // Preimage of the diagonal of Z/2 x Z/2 under the mod-2 length maps.
    const GroupModel f = group("F2"), g = group("F2'");
    return make(f, g, {{"a", "a'"}, {"a^2", "1"}, {"a b", "1"}, {"a b^-1", "1"},
                       {"1", "a'^2"}, {"1", "a' b'"}, {"1", "a' b'^-1"}});
  }
  throw Error(ErrorKind::MalformedInput, "unknown subdirect fixture '" + name + "'");
}

std::vector<std::string> graph_names() {
  return {"P4", "C4", "C5", "K4", "TRIANGLE", "PATH5", "STAR4", "GEM"};
}

SimplicialGraph graph(const std::string& name) {
  if (name == "P4") return SimplicialGraph::path(4);
  if (name == "C4") return SimplicialGraph::cycle(4);
  if (name == "C5") return SimplicialGraph::cycle(5);
  if (name == "K4") return SimplicialGraph::complete(4);
  if (name == "TRIANGLE") return SimplicialGraph::complete(3);
  if (name == "PATH5") return SimplicialGraph::path(5);
  if (name == "STAR4") return SimplicialGraph(4, {{0, 1}, {0, 2}, {0, 3}});
  if (name == "GEM") return SimplicialGraph(5, {{0, 1}, {1, 2}, {2, 3}, {4, 0}, {4, 1}, {4, 2}, {4, 3}});
  throw Error(ErrorKind::MalformedInput, "unknown graph fixture '" + name + "'");
}

std::vector<Word> droms_index2_subgroup() {
  const auto g = p4();
  const auto& a = g.alphabet();
  return {a.parse("a^2"), a.parse("a b"), a.parse("a c"), a.parse("a d")};
}

std::vector<Word> p4_kernel_basis() {
  const auto g = p4();
  const auto& a = g.alphabet();
  return {a.parse("a b^-1"), a.parse("b c^-1"), a.parse("c d^-1")};
}

HomToZn p4_length_map() { return HomToZn{1, {{1}, {1}, {1}, {1}}}; }

}  // namespace cgt::fixtures
