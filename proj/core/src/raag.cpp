#include "cgt/raag.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace cgt {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

SimplicialGraph::SimplicialGraph(std::size_t vertex_count,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& edges)
    : n_(vertex_count), adj_(vertex_count * vertex_count, 0) {
  for (auto [u, v] : edges) {
    if (u >= n_ || v >= n_) throw Error(ErrorKind::MalformedInput, "edge endpoint out of range");
    if (u == v) throw Error(ErrorKind::MalformedInput, "simplicial graph cannot have loops");
    if (adjacent(u, v)) throw Error(ErrorKind::MalformedInput, "repeated edge");
    adj_[u * n_ + v] = adj_[v * n_ + u] = 1;
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
}

SimplicialGraph SimplicialGraph::path(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return SimplicialGraph(n, e);
}

SimplicialGraph SimplicialGraph::cycle(std::size_t n) {
  auto e = path(n).edges();
  if (n >= 3) e.emplace_back(0, n - 1);
  return SimplicialGraph(n, e);
}

SimplicialGraph SimplicialGraph::complete(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return SimplicialGraph(n, e);
}

bool check_droms_coherent(const SimplicialGraph& g) {
  const std::size_t n = g.vertex_count();
  // Maximum cardinality search; the reverse visit order is a perfect
  // elimination ordering iff the graph is chordal.
  std::vector<std::size_t> weight(n, 0), order;
  std::vector<char> visited(n, 0);
  std::vector<std::size_t> position(n, 0);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t best = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!visited[v] && (best == n || weight[v] > weight[best])) best = v;
    visited[best] = 1;
    position[best] = step;
    order.push_back(best);
    for (std::size_t u = 0; u < n; ++u)
      if (!visited[u] && g.adjacent(best, u)) ++weight[u];
  }
  // For each v, its earlier-visited neighbours must form a clique; it is
  // enough that they are all adjacent to the latest of them.
  for (std::size_t v : order) {
    std::vector<std::size_t> earlier;
    for (std::size_t u = 0; u < n; ++u)
      if (g.adjacent(u, v) && position[u] < position[v]) earlier.push_back(u);
    if (earlier.size() < 2) continue;
    std::size_t parent = *std::max_element(earlier.begin(), earlier.end(), [&](auto a, auto b) {
      return position[a] < position[b];
    });
    for (std::size_t u : earlier)
      if (u != parent && !g.adjacent(u, parent)) return false;
  }
  return true;
}

namespace {

void bron_kerbosch(const SimplicialGraph& g, std::vector<std::size_t>& r, std::vector<std::size_t> p,
                   std::vector<std::size_t> x, std::size_t& best) {
  if (p.empty() && x.empty()) {
    best = std::max(best, r.size());
    return;
  }
  if (r.size() + p.size() <= best) return;
  while (!p.empty()) {
    std::size_t v = p.back();
    std::vector<std::size_t> np, nx;
    for (auto u : p)
      if (g.adjacent(u, v)) np.push_back(u);
    for (auto u : x)
      if (g.adjacent(u, v)) nx.push_back(u);
    r.push_back(v);
    bron_kerbosch(g, r, np, nx, best);
    r.pop_back();
    p.pop_back();
    x.push_back(v);
  }
}

}  // namespace

std::size_t dimension(const SimplicialGraph& g) {
  std::vector<std::size_t> r, p(g.vertex_count());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = i;
  std::size_t best = 0;
  bron_kerbosch(g, r, p, {}, best);
  return best;
}

RaagPresentation::RaagPresentation(SimplicialGraph graph, GenAlphabet alphabet)
    : graph_(std::move(graph)), alphabet_(std::move(alphabet)) {
  if (graph_.vertex_count() != alphabet_.size()) {
    throw Error(ErrorKind::MalformedInput, "alphabet size must match vertex count");
  }
}

RaagPresentation RaagPresentation::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedInput, std::string("graph JSON: ") + e.what());
  }
  if (!j.contains("vertices") || !j["vertices"].is_array()) {
    throw Error(ErrorKind::MalformedInput, "graph JSON needs a 'vertices' array");
  }
  GenAlphabet alpha(j["vertices"].get<std::vector<std::string>>());
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  if (j.contains("edges")) {
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2) throw Error(ErrorKind::MalformedInput, "edge must be a pair");
      auto u = alpha.find(e[0].get<std::string>());
      auto v = alpha.find(e[1].get<std::string>());
      if (!u || !v) throw Error(ErrorKind::MalformedInput, "edge mentions an unknown vertex");
      edges.emplace_back(*u, *v);
    }
  }
  SimplicialGraph graph(alpha.size(), edges);
  return RaagPresentation(std::move(graph), std::move(alpha));
}

std::string RaagPresentation::to_json() const {
  nlohmann::json j;
  j["vertices"] = alphabet_.names();
  j["edges"] = nlohmann::json::array();
  for (auto [u, v] : graph_.edges()) j["edges"].push_back({alphabet_.name(u), alphabet_.name(v)});
  return j.dump();
}

FinitePresentation RaagPresentation::presentation() const {
  std::vector<Word> rels;
  for (auto [u, v] : graph_.edges()) {
    rels.push_back(commutator(Word::generator(static_cast<std::uint32_t>(u)),
                              Word::generator(static_cast<std::uint32_t>(v))));
  }
  return FinitePresentation(alphabet_, std::move(rels));
}

// A new letter cancels against the nearest earlier letter on its generator
// when everything in between commutes with it.
Word RaagPresentation::reduce(const Word& w) const {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (const auto& l : w) {
    bool cancelled = false;
    for (std::size_t k = out.size(); k-- > 0;) {
      if (out[k].gen == l.gen) {
        if (out[k].sign != l.sign) {
          out.erase(out.begin() + static_cast<std::ptrdiff_t>(k));
          cancelled = true;
        }
        break;
      }
      if (!commutes(out[k].gen, l.gen)) break;
    }
    if (!cancelled) out.push_back(l);
  }
  return Word(std::move(out));
}

// Repeatedly take the least letter that can be moved to the front.
Word RaagPresentation::lex_least(Word w) const {
  std::vector<Letter> rest = std::move(w.letters());
  std::vector<Letter> out;
  out.reserve(rest.size());
  while (!rest.empty()) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < rest.size(); ++j) {
      if (!(rest[j] < rest[best])) continue;
      bool movable = true;
      for (std::size_t i = 0; i < j && movable; ++i) movable = commutes(rest[i].gen, rest[j].gen);
      if (movable) best = j;
    }
    out.push_back(rest[best]);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return Word(std::move(out));
}

Word RaagPresentation::normal_form(const Word& w) const {
  alphabet_.check(w);
  return lex_least(reduce(w));
}

std::vector<std::size_t> RaagPresentation::front_movable(const Word& w) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < w.size(); ++j) {
    bool movable = true;
    for (std::size_t i = 0; i < j && movable; ++i) movable = commutes(w[i].gen, w[j].gen);
    if (movable) out.push_back(j);
  }
  return out;
}

std::vector<std::size_t> RaagPresentation::back_movable(const Word& w) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < w.size(); ++j) {
    bool movable = true;
    for (std::size_t i = j + 1; i < w.size() && movable; ++i) movable = commutes(w[i].gen, w[j].gen);
    if (movable) out.push_back(j);
  }
  return out;
}

CyclicReduction RaagPresentation::cyclic_normal_form(const Word& w) const {
  CyclicReduction r;
  r.core = normal_form(w);
  for (;;) {
    auto front = front_movable(r.core);
    auto back = back_movable(r.core);
    bool found = false;
    for (std::size_t i : front) {
      for (std::size_t j : back) {
        if (i == j || !is_inverse_pair(r.core[i], r.core[j])) continue;
        Letter x = r.core[i];
        std::vector<Letter> rest;
        for (std::size_t k = 0; k < r.core.size(); ++k)
          if (k != i && k != j) rest.push_back(r.core[k]);
        r.conjugator.push_back(x);
        r.core = normal_form(Word(std::move(rest)));
        found = true;
        break;
      }
      if (found) break;
    }
    if (!found) break;
  }
  r.conjugator = normal_form(r.conjugator);
  return r;
}

bool RaagPresentation::conjugacy_problem(const Word& u, const Word& v) const {
  const Word cu = cyclic_normal_form(u).core;
  const Word cv = cyclic_normal_form(v).core;
  if (cu.size() != cv.size()) return false;
  if (exponent_sums(cu, alphabet_.size()) != exponent_sums(cv, alphabet_.size())) return false;
  // Cyclically reduced conjugates differ by cyclic permutations and
  // commutations; explore the finite class of u.
  constexpr std::size_t kMaxClass = 2'000'000;
  std::unordered_set<Word, WordHash> seen{cu};
  std::deque<Word> queue{cu};
  while (!queue.empty()) {
    Word w = std::move(queue.front());
    queue.pop_front();
    if (w == cv) return true;
    for (std::size_t i : front_movable(w)) {
      std::vector<Letter> rotated;
      rotated.reserve(w.size());
      for (std::size_t k = 0; k < w.size(); ++k)
        if (k != i) rotated.push_back(w[k]);
      rotated.push_back(w[i]);
      Word nf = lex_least(Word(std::move(rotated)));
      if (seen.insert(nf).second) {
        if (seen.size() > kMaxClass) throw Error(ErrorKind::Budget, "conjugacy class exploration overflow");
        queue.push_back(std::move(nf));
      }
    }
  }
  return false;
}

RaagPresentation p4() {
  return RaagPresentation(SimplicialGraph::path(4), GenAlphabet({"a", "b", "c", "d"}));
}

std::vector<long long> eval_hom(const HomToZn& h, const Word& w) {
  std::vector<long long> out(h.target_rank, 0);
  for (const auto& l : w) {
    if (l.gen >= h.images.size()) throw Error(ErrorKind::MalformedWord, "homomorphism undefined on generator");
    const auto& img = h.images[l.gen];
    if (img.size() != h.target_rank) throw Error(ErrorKind::MalformedInput, "image has wrong dimension");
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += l.sign * img[i];
  }
  return out;
}

bool in_kernel(const HomToZn& h, const Word& w) {
  auto v = eval_hom(h, w);
  return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
}

BallResult enumerate_ball(const RaagPresentation& p, std::size_t radius, std::size_t max_elements) {
  BallResult result;
  std::unordered_set<Word, WordHash> seen{Word{}};
  std::vector<Word> layer{Word{}};
  result.elements.push_back(Word{});
  const auto n = static_cast<std::uint32_t>(p.alphabet().size());
  for (std::size_t len = 1; len <= radius; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer) {
      for (std::uint32_t g = 0; g < n; ++g)
        for (int s : {1, -1}) {
          Word nf = p.normal_form(w * Word::generator(g, s));
          if (nf.size() != len || !seen.insert(nf).second) continue;
          if (seen.size() > max_elements) {
            result.overflow = true;
            return result;
          }
          next.push_back(std::move(nf));
        }
    }
    std::sort(next.begin(), next.end(), ShortlexLess{});
    result.elements.insert(result.elements.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return result;
}

MultiConjugacyResult multiple_conjugacy(const RaagPresentation& p,
                                        const std::vector<std::pair<Word, Word>>& pairs,
                                        std::size_t radius) {
  if (pairs.empty()) throw Error(ErrorKind::Precondition, "multiple conjugacy needs at least one pair");
  MultiConjugacyResult r;
  const std::size_t n = p.alphabet().size();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [u, v] = pairs[i];
    if (exponent_sums(u, n) != exponent_sums(v, n)) {
      r.verdict = Verdict::No;
      r.failing_pair = i;
      r.obstruction = "abelianization images differ";
      return r;
    }
    if (!p.conjugacy_problem(u, v)) {
      r.verdict = Verdict::No;
      r.failing_pair = i;
      r.obstruction = "pair is not conjugate (cyclic normal forms differ)";
      return r;
    }
  }
  auto ball = enumerate_ball(p, radius);
  for (const auto& g : ball.elements) {
    ++r.candidates_checked;
    bool all = true;
    for (const auto& [u, v] : pairs) {
      if (!p.word_problem(g * u * g.inverse() * v.inverse())) {
        all = false;
        break;
      }
    }
    if (all) {
      r.verdict = Verdict::Yes;
      r.witness = g;
      return r;
    }
  }
  r.verdict = Verdict::Unknown;
  return r;
}

}  // namespace cgt
