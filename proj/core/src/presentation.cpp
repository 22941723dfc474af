#include "cgt/presentation.hpp"

#include <nlohmann/json.hpp>

namespace cgt {

FinitePresentation::FinitePresentation(GenAlphabet a, std::vector<Word> rels)
    : alphabet(std::move(a)) {
  for (const auto& r : rels) {
    alphabet.check(r);
    auto red = free_reduce(r);
    if (!red.empty()) relators.push_back(std::move(red));
  }
}

FinitePresentation FinitePresentation::with_relators(const std::vector<Word>& extra) const {
  auto rels = relators;
  rels.insert(rels.end(), extra.begin(), extra.end());
  return FinitePresentation(alphabet, std::move(rels));
}

std::string FinitePresentation::to_json() const {
  nlohmann::json j;
  j["generators"] = alphabet.names();
  auto& rels = j["relators"] = nlohmann::json::array();
  for (const auto& r : relators) rels.push_back(alphabet.format(r));
  return j.dump();
}

FinitePresentation FinitePresentation::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedInput, std::string("presentation JSON: ") + e.what());
  }
  if (!j.contains("generators") || !j["generators"].is_array()) {
    throw Error(ErrorKind::MalformedInput, "presentation JSON needs a 'generators' array");
  }
  GenAlphabet alpha(j["generators"].get<std::vector<std::string>>());
  std::vector<Word> rels;
  if (j.contains("relators")) {
    for (const auto& r : j["relators"]) rels.push_back(alpha.parse(r.get<std::string>()));
  }
  return FinitePresentation(std::move(alpha), std::move(rels));
}

Word commutator(const Word& u, const Word& v) { return u * v * u.inverse() * v.inverse(); }

}  // namespace cgt
