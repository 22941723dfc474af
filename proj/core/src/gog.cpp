#include "cgt/gog.hpp"

#include <algorithm>
#include <deque>

#include <nlohmann/json.hpp>

namespace cgt {

const char* to_string(Isometry i) { return i == Isometry::Elliptic ? "elliptic" : "hyperbolic"; }

const char* to_string(KernelOfAction::Kind k) {
  switch (k) {
    case KernelOfAction::Kind::Trivial: return "trivial";
    case KernelOfAction::Kind::Cyclic: return "cyclic";
    case KernelOfAction::Kind::Unknown: return "unknown";
  }
  return "unknown";
}

const char* to_string(WpdCheck::Kind k) {
  switch (k) {
    case WpdCheck::Kind::Verified: return "verified";
    case WpdCheck::Kind::Counterexample: return "counterexample";
    case WpdCheck::Kind::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

IntVec zero_vec(std::size_t r) { return IntVec(r); }

bool is_zero(const IntVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

IntVec scaled(const IntVec& v, const Int& k) {
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * k;
  return out;
}

void add_into(IntVec& dst, const IntVec& src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
}

Crossing reversed(const Crossing& c) { return {c.edge, !c.forward}; }

bool is_reverse(const Crossing& a, const Crossing& b) { return a.edge == b.edge && a.forward != b.forward; }

// Primitive direction with first nonzero entry positive, and the signed scalar.
std::pair<IntVec, Int> direction(const IntVec& v) {
  Int c = content(v);
  std::size_t p = 0;
  while (v[p] == 0) ++p;
  if (v[p] < 0) c = -c;
  IntVec u(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) u[i] = v[i] / c;
  return {u, c};
}

IntVec json_vec(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorKind::MalformedInput, "attaching vector must be an array");
  IntVec v;
  for (const auto& x : j) {
    if (x.is_number_integer()) {
      v.emplace_back(static_cast<long>(x.get<long long>()));
    } else if (x.is_string()) {
      v.emplace_back(x.get<std::string>());
    } else {
      throw Error(ErrorKind::MalformedInput, "attaching vector entries must be integers");
    }
  }
  return v;
}

nlohmann::json vec_json(const IntVec& v) {
  auto j = nlohmann::json::array();
  for (const auto& x : v) {
    if (x.fits_slong_p()) {
      j.push_back(x.get_si());
    } else {
      j.push_back(x.get_str());
    }
  }
  return j;
}

}  // namespace

GraphOfGroups::GraphOfGroups(std::vector<GogVertex> vertices, std::vector<GogEdge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  const std::size_t nv = vertices_.size();
  if (nv == 0) throw Error(ErrorKind::MalformedInput, "graph of groups needs a vertex");
  std::vector<std::string> names;
  for (std::size_t v = 0; v < nv; ++v) {
    auto& vx = vertices_[v];
    if (vx.rank == 0) throw Error(ErrorKind::MalformedInput, "vertex rank must be positive");
    if (vx.generators.empty()) {
      for (std::size_t i = 0; i < vx.rank; ++i)
        vx.generators.push_back(vx.rank == 1 ? vx.name : vx.name + "_" + std::to_string(i + 1));
    }
    if (vx.generators.size() != vx.rank) {
      throw Error(ErrorKind::MalformedInput, "vertex '" + vx.name + "' needs one generator per rank");
    }
    first_gen_.push_back(names.size());
    for (std::size_t i = 0; i < vx.rank; ++i) {
      gen_info_.push_back({false, v, i, 0});
      names.push_back(vx.generators[i]);
    }
  }
  std::size_t tree_edges = 0, stable_count = 0;
  for (const auto& e : edges_)
    if (!e.tree) ++stable_count;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    auto& e = edges_[i];
    if (e.tail >= nv || e.head >= nv) throw Error(ErrorKind::MalformedInput, "edge endpoint out of range");
    if (e.attach_tail.size() != vertices_[e.tail].rank || e.attach_head.size() != vertices_[e.head].rank) {
      throw Error(ErrorKind::MalformedInput, "attaching vector dimension must match vertex rank");
    }
    if (is_zero(e.attach_tail) || is_zero(e.attach_head)) {
      throw Error(ErrorKind::DegenerateEdge, "attaching vectors must be nonzero (cyclic edge groups)");
    }
    if (e.tree) {
      ++tree_edges;
      if (e.tail == e.head) throw Error(ErrorKind::MalformedInput, "a loop cannot be a tree edge");
      continue;
    }
    if (e.stable_letter.empty()) {
      e.stable_letter = stable_count == 1 ? "t" : "t" + std::to_string(i + 1);
    }
    gen_info_.push_back({true, 0, 0, i});
    names.push_back(e.stable_letter);
  }
  alphabet_ = GenAlphabet(names);

  if (tree_edges + 1 != nv) throw Error(ErrorKind::MalformedInput, "tree edges must form a spanning tree");
  parent_.assign(nv, std::nullopt);
  depth_.assign(nv, 0);
  std::vector<char> seen(nv, 0);
  seen[0] = 1;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      const auto& e = edges_[i];
      if (!e.tree || (e.tail != v && e.head != v)) continue;
      std::size_t u = e.tail == v ? e.head : e.tail;
      if (seen[u]) continue;
      seen[u] = 1;
      parent_[u] = Crossing{i, e.tail == v};
      depth_[u] = depth_[v] + 1;
      queue.push_back(u);
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw Error(ErrorKind::MalformedInput, "tree edges must form a spanning tree");
  }
}

GraphOfGroups GraphOfGroups::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedInput, std::string("graph-of-groups JSON: ") + e.what());
  }
  try {
    std::vector<GogVertex> vs;
    for (const auto& v : j.at("vertices")) {
      GogVertex gv{v.at("name").get<std::string>(), v.at("rank").get<std::size_t>(), {}};
      if (v.contains("generators")) gv.generators = v["generators"].get<std::vector<std::string>>();
      vs.push_back(std::move(gv));
    }
    auto vertex_id = [&](const nlohmann::json& x) -> std::size_t {
      if (x.is_number_unsigned()) return x.get<std::size_t>();
      auto name = x.get<std::string>();
      for (std::size_t i = 0; i < vs.size(); ++i)
        if (vs[i].name == name) return i;
      throw Error(ErrorKind::MalformedInput, "edge mentions unknown vertex '" + name + "'");
    };
    std::vector<GogEdge> es;
    bool any_tree_flag = false;
    for (const auto& e : j.value("edges", nlohmann::json::array())) {
      GogEdge ge;
      ge.tail = vertex_id(e.at("tail"));
      ge.head = vertex_id(e.at("head"));
      ge.attach_tail = json_vec(e.at("attach_tail"));
      ge.attach_head = json_vec(e.at("attach_head"));
      if (e.contains("tree")) {
        any_tree_flag = true;
        ge.tree = e["tree"].get<bool>();
      }
      if (e.contains("stable")) ge.stable_letter = e["stable"].get<std::string>();
      es.push_back(std::move(ge));
    }
    if (vs.empty()) throw Error(ErrorKind::MalformedInput, "graph of groups needs a vertex");
    if (!any_tree_flag) {
      // Breadth-first spanning tree in edge order.
      std::vector<char> in(vs.size(), 0);
      in[0] = 1;
      for (bool grew = true; grew;) {
        grew = false;
        for (auto& e : es) {
          if (e.tree || e.tail == e.head || in[e.tail] == in[e.head]) continue;
          e.tree = true;
          in[e.tail] = in[e.head] = 1;
          grew = true;
        }
      }
    }
    return GraphOfGroups(std::move(vs), std::move(es));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedInput, std::string("graph-of-groups JSON: ") + e.what());
  }
}

std::string GraphOfGroups::to_json() const {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : vertices_) {
    j["vertices"].push_back({{"name", v.name}, {"rank", v.rank}, {"generators", v.generators}});
  }
  j["edges"] = nlohmann::json::array();
  for (const auto& e : edges_) {
    nlohmann::json je{{"tail", vertices_[e.tail].name},
                      {"head", vertices_[e.head].name},
                      {"attach_tail", vec_json(e.attach_tail)},
                      {"attach_head", vec_json(e.attach_head)},
                      {"tree", e.tree}};
    if (!e.tree) je["stable"] = e.stable_letter;
    j["edges"].push_back(std::move(je));
  }
  return j.dump();
}

Word GraphOfGroups::vertex_word(std::size_t vertex, const IntVec& v) const {
  Word w;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (!v[i].fits_slong_p()) throw Error(ErrorKind::Budget, "exponent too large to spell as a word");
    w *= Word::power(static_cast<std::uint32_t>(first_gen_[vertex] + i), v[i].get_si());
  }
  return w;
}

FinitePresentation GraphOfGroups::presentation() const {
  std::vector<Word> rels;
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    for (std::size_t i = 0; i < vertices_[v].rank; ++i)
      for (std::size_t j = i + 1; j < vertices_[v].rank; ++j) {
        rels.push_back(commutator(Word::generator(static_cast<std::uint32_t>(first_gen_[v] + i)),
                                  Word::generator(static_cast<std::uint32_t>(first_gen_[v] + j))));
      }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    Word wt = vertex_word(e.tail, e.attach_tail), wh = vertex_word(e.head, e.attach_head);
    if (e.tree) {
      rels.push_back(wt * wh.inverse());
    } else {
      Word t = Word::generator(*alphabet_.find(e.stable_letter));
      rels.push_back(t.inverse() * wt * t * wh.inverse());
    }
  }
  return FinitePresentation(alphabet_, std::move(rels));
}

std::size_t GraphOfGroups::crossing_start(const Crossing& c) const {
  return c.forward ? edges_[c.edge].tail : edges_[c.edge].head;
}

std::size_t GraphOfGroups::crossing_end(const Crossing& c) const {
  return c.forward ? edges_[c.edge].head : edges_[c.edge].tail;
}

const IntVec& GraphOfGroups::side_vector(const Crossing& c, bool at_start) const {
  const auto& e = edges_[c.edge];
  return (c.forward == at_start) ? e.attach_tail : e.attach_head;
}

const IntVec& GraphOfGroups::other_side_vector(const Crossing& c, bool at_start) const {
  return side_vector(c, !at_start);
}

std::size_t GraphOfGroups::end_vertex(const GogElement& g) const {
  return g.crossings.empty() ? g.start : crossing_end(g.crossings.back());
}

GogElement GraphOfGroups::identity(std::size_t vertex) const {
  return GogElement{vertex, {zero_vec(vertices_.at(vertex).rank)}, {}};
}

GogElement GraphOfGroups::vertex_element(std::size_t vertex, IntVec v) const {
  if (v.size() != vertices_.at(vertex).rank) throw Error(ErrorKind::Precondition, "vector rank mismatch");
  return GogElement{vertex, {std::move(v)}, {}};
}

std::vector<Crossing> GraphOfGroups::tree_route(std::size_t from, std::size_t to) const {
  std::vector<Crossing> up, down;
  while (depth_[from] > depth_[to]) {
    up.push_back(reversed(*parent_[from]));
    from = crossing_start(*parent_[from]);
  }
  while (depth_[to] > depth_[from]) {
    down.push_back(*parent_[to]);
    to = crossing_start(*parent_[to]);
  }
  while (from != to) {
    up.push_back(reversed(*parent_[from]));
    from = crossing_start(*parent_[from]);
    down.push_back(*parent_[to]);
    to = crossing_start(*parent_[to]);
  }
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

GogElement GraphOfGroups::tree_path(std::size_t v) const {
  GogElement g = identity(0);
  for (const auto& c : tree_route(0, v)) {
    g.crossings.push_back(c);
    g.vertex_elems.push_back(zero_vec(vertices_[crossing_end(c)].rank));
  }
  return g;
}

GogElement GraphOfGroups::multiply(const GogElement& a, const GogElement& b) const {
  if (end_vertex(a) != b.start) throw Error(ErrorKind::Precondition, "paths do not compose");
  GogElement out = a;
  add_into(out.vertex_elems.back(), b.vertex_elems.front());
  out.crossings.insert(out.crossings.end(), b.crossings.begin(), b.crossings.end());
  out.vertex_elems.insert(out.vertex_elems.end(), b.vertex_elems.begin() + 1, b.vertex_elems.end());
  return out;
}

GogElement GraphOfGroups::inverse(const GogElement& g) const {
  GogElement out;
  out.start = end_vertex(g);
  for (auto it = g.vertex_elems.rbegin(); it != g.vertex_elems.rend(); ++it) out.vertex_elems.push_back(scaled(*it, -1));
  for (auto it = g.crossings.rbegin(); it != g.crossings.rend(); ++it) out.crossings.push_back(reversed(*it));
  return out;
}

GogElement GraphOfGroups::rebase(const GogElement& g, std::size_t v) const {
  GogElement p = tree_path(v);
  return multiply(multiply(inverse(p), g), p);
}

GogElement GraphOfGroups::from_word(const Word& w) const {
  alphabet_.check(w);
  GogElement g = identity(0);
  std::size_t at = 0;
  auto walk = [&](std::size_t to) {
    for (const auto& c : tree_route(at, to)) {
      g.crossings.push_back(c);
      g.vertex_elems.push_back(zero_vec(vertices_[crossing_end(c)].rank));
    }
    at = to;
  };
  for (const auto& l : w) {
    const auto& info = gen_info_[l.gen];
    if (!info.stable) {
      walk(info.vertex);
      g.vertex_elems.back()[info.coord] += l.sign;
    } else {
      Crossing c{info.edge, l.sign > 0};
      walk(crossing_start(c));
      g.crossings.push_back(c);
      g.vertex_elems.push_back(zero_vec(vertices_[crossing_end(c)].rank));
      at = crossing_end(c);
    }
  }
  walk(0);
  return g;
}

Word GraphOfGroups::to_word(const GogElement& g) const {
  if (g.start != 0 || end_vertex(g) != 0) throw Error(ErrorKind::Precondition, "element is not a loop at the base vertex");
  Word w;
  std::size_t at = g.start;
  for (std::size_t i = 0; i < g.vertex_elems.size(); ++i) {
    w *= vertex_word(at, g.vertex_elems[i]);
    if (i == g.crossings.size()) break;
    const auto& c = g.crossings[i];
    const auto& e = edges_[c.edge];
    if (!e.tree) w.push_back(Letter{*alphabet_.find(e.stable_letter), static_cast<std::int8_t>(c.forward ? 1 : -1)});
    at = crossing_end(c);
  }
  return w;
}

GogElement GraphOfGroups::britton_reduce(const GogElement& g) const {
  if (g.vertex_elems.size() != g.crossings.size() + 1) throw Error(ErrorKind::MalformedInput, "malformed syllable sequence");
  GogElement out{g.start, {g.vertex_elems.front()}, {}};
  std::size_t at = g.start;
  for (std::size_t i = 0; i < g.crossings.size(); ++i) {
    const Crossing& c = g.crossings[i];
    if (crossing_start(c) != at) throw Error(ErrorKind::MalformedInput, "crossing does not start at the current vertex");
    if (vertices_[at].rank != out.vertex_elems.back().size()) throw Error(ErrorKind::MalformedInput, "vertex element rank mismatch");
    bool pinched = false;
    if (!out.crossings.empty() && is_reverse(out.crossings.back(), c)) {
      const Crossing& prev = out.crossings.back();
      if (auto k = cyclic_membership(other_side_vector(prev, true), out.vertex_elems.back())) {
        IntVec moved = scaled(side_vector(prev, true), *k);
        out.vertex_elems.pop_back();
        out.crossings.pop_back();
        add_into(out.vertex_elems.back(), moved);
        add_into(out.vertex_elems.back(), g.vertex_elems[i + 1]);
        pinched = true;
      }
    }
    if (!pinched) {
      out.crossings.push_back(c);
      out.vertex_elems.push_back(g.vertex_elems[i + 1]);
    }
    at = crossing_end(c);
  }
  // Canonical coset representatives, pushing edge-group parts rightwards.
  for (std::size_t i = 0; i < out.crossings.size(); ++i) {
    const Crossing& c = out.crossings[i];
    auto split = coset_split(side_vector(c, true), out.vertex_elems[i]);
    out.vertex_elems[i] = std::move(split.rep);
    add_into(out.vertex_elems[i + 1], scaled(other_side_vector(c, true), split.k));
  }
  return out;
}

bool GraphOfGroups::is_trivial(const GogElement& g) const {
  auto r = britton_reduce(g);
  return r.crossings.empty() && is_zero(r.vertex_elems.front());
}

bool GraphOfGroups::word_problem(const Word& w) const { return is_trivial(from_word(w)); }

std::size_t GraphOfGroups::cyclic_length(const GogElement& g) const {
  GogElement r = britton_reduce(g);
  if (r.start != end_vertex(r)) throw Error(ErrorKind::Precondition, "cyclic reduction needs a loop");
  std::vector<Crossing> c = r.crossings;
  std::size_t n = c.size();
  if (n == 0) return 0;
  // after[i] is the vertex element following crossing i, cyclically.
  std::vector<IntVec> after(r.vertex_elems.begin() + 1, r.vertex_elems.end());
  add_into(after.back(), r.vertex_elems.front());
  while (n >= 2) {
    bool found = false;
    for (std::size_t i = 0; i < n && !found; ++i) {
      std::size_t j = (i + 1) % n;
      if (!is_reverse(c[i], c[j])) continue;
      auto k = cyclic_membership(other_side_vector(c[i], true), after[i]);
      if (!k) continue;
      if (n == 2) return 0;
      std::size_t prev = (i + n - 1) % n;
      add_into(after[prev], scaled(side_vector(c[i], true), *k));
      add_into(after[prev], after[j]);
      std::size_t hi = std::max(i, j), lo = std::min(i, j);
      c.erase(c.begin() + static_cast<std::ptrdiff_t>(hi));
      c.erase(c.begin() + static_cast<std::ptrdiff_t>(lo));
      after.erase(after.begin() + static_cast<std::ptrdiff_t>(hi));
      after.erase(after.begin() + static_cast<std::ptrdiff_t>(lo));
      n -= 2;
      found = true;
    }
    if (!found) break;
  }
  return n;
}

Isometry GraphOfGroups::classify_isometry(const GogElement& g) const {
  return cyclic_length(g) == 0 ? Isometry::Elliptic : Isometry::Hyperbolic;
}

std::optional<IntVec> GraphOfGroups::transport(const IntVec& v, std::size_t from, std::size_t to) const {
  IntVec cur = v;
  for (const auto& c : tree_route(from, to)) {
    auto k = cyclic_membership(side_vector(c, true), cur);
    if (!k) return std::nullopt;
    cur = scaled(other_side_vector(c, true), *k);
  }
  return cur;
}

std::vector<LoopReport> GraphOfGroups::unimodular_loop_check() const {
  std::vector<LoopReport> out;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    if (e.tree) continue;
    LoopReport r;
    r.edge = i;
    auto [u, m] = direction(e.attach_tail);
    r.m = m;
    auto moved = transport(e.attach_head, e.head, e.tail);
    std::optional<Int> n;
    if (moved) n = cyclic_membership(u, *moved);
    if (n) {
      r.n = *n;
      r.comparable = true;
    } else {
      r.n = content(e.attach_head);
      r.comparable = false;
    }
    r.unimodular = abs(r.m) == abs(r.n);
    out.push_back(r);
  }
  return out;
}

bool GraphOfGroups::has_isolated_edge_groups() const {
  return std::all_of(edges_.begin(), edges_.end(), [](const GogEdge& e) {
    return is_primitive(e.attach_tail) && is_primitive(e.attach_head);
  });
}

GraphOfGroups::WpdCandidate GraphOfGroups::wpd_candidate() const {
  if (edges_.empty()) {
    throw Error(ErrorKind::ConstructionUnavailable, "no edges: the Bass-Serre tree is a point, no hyperbolic element exists");
  }
  WpdCandidate cand;
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    std::vector<IntVec> incident;
    for (const auto& e : edges_) {
      if (e.tail == v) incident.push_back(e.attach_tail);
      if (e.head == v) incident.push_back(e.attach_head);
    }
    std::optional<IntVec> choice;
    ReducedWordEnumerator words(vertices_[v].rank, 3);
    while (auto w = words.next()) {
      if (w->empty()) continue;
      IntVec x = zero_vec(vertices_[v].rank);
      for (const auto& l : *w) x[l.gen] += l.sign;
      if (is_zero(x)) continue;
      bool inside = std::any_of(incident.begin(), incident.end(),
                                [&](const IntVec& a) { return cyclic_membership(a, x).has_value(); });
      if (!inside) {
        choice = x;
        break;
      }
    }
    if (!choice) {
      throw Error(ErrorKind::ConstructionUnavailable,
                  "vertex '" + vertices_[v].name + "' has no element outside its incident edge groups");
    }
    cand.vertex_choices.push_back(*choice);
  }
  std::vector<Word> stable;
  for (const auto& e : edges_)
    if (!e.tree) stable.push_back(Word::generator(*alphabet_.find(e.stable_letter)));
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    Word a = vertex_word(v, cand.vertex_choices[v]);
    if (stable.empty()) {
      cand.word *= a;
      continue;
    }
    for (const auto& t : stable) cand.word *= a * t.inverse() * a * t;
  }
  return cand;
}

KernelOfAction GraphOfGroups::kernel_of_action() const {
  KernelOfAction out;
  if (edges_.empty()) {
    out.note = "no edges: the whole group fixes the tree";
    return out;
  }
  // Generator of C at the base vertex, scaled so it lies in every edge image.
  std::optional<IntVec> c;
  auto constrain = [&](std::size_t v, const IntVec& a) -> bool {
    if (!c) {
      // Pull a into the base vertex, taking multiples as needed.
      IntVec cur = a;
      for (const auto& cr : tree_route(v, 0)) {
        auto lam = cyclic_intersection_multiplier(cur, side_vector(cr, true));
        if (!lam) return false;
        cur = scaled(cur, *lam);
        cur = scaled(other_side_vector(cr, true), *cyclic_membership(side_vector(cr, true), cur));
      }
      c = cur;
      return true;
    }
    IntVec cur = *c;
    Int total = 1;
    for (const auto& cr : tree_route(0, v)) {
      auto lam = cyclic_intersection_multiplier(cur, side_vector(cr, true));
      if (!lam) return false;
      total *= *lam;
      cur = scaled(cur, *lam);
      cur = scaled(other_side_vector(cr, true), *cyclic_membership(side_vector(cr, true), cur));
    }
    auto lam = cyclic_intersection_multiplier(cur, a);
    if (!lam) return false;
    total *= *lam;
    c = scaled(*c, total);
    return true;
  };
  for (const auto& e : edges_) {
    if (!constrain(e.tail, e.attach_tail) || !constrain(e.head, e.attach_head)) {
      out.kind = KernelOfAction::Kind::Trivial;
      out.note = "edge groups intersect trivially";
      return out;
    }
  }
  // Every stable letter must conjugate c to c^{+-1}.
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    if (e.tree) continue;
    auto ct = transport(*c, 0, e.tail);
    auto ch = transport(*c, 0, e.head);
    Int p = *cyclic_membership(e.attach_tail, *ct);
    Int q = *cyclic_membership(e.attach_head, *ch);
    Int g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    LoopReport r{i, Int(q / g), Int(p / g), true, false};
    r.unimodular = abs(r.m) == abs(r.n);
    out.stable_letter_ratios.push_back(r);
    if (!r.unimodular) {
      out.kind = KernelOfAction::Kind::Unknown;
      out.note = "non-unimodular stable letter '" + e.stable_letter + "': (c^" + r.m.get_str() +
                 ")^t = c^" + r.n.get_str();
      return out;
    }
  }
  // Least k with c^k normalised by all generators, checked by the word problem.
  const auto& names = alphabet_.names();
  for (long k = 1; k <= 64; ++k) {
    IntVec ck = scaled(*c, k);
    Word w = vertex_word(0, ck);
    bool ok = true;
    for (std::uint32_t s = 0; s < names.size() && ok; ++s) {
      Word sg = Word::generator(s);
      Word conj = sg.inverse() * w * sg;
      ok = word_problem(conj * w.inverse()) || word_problem(conj * w);
    }
    if (ok) {
      out.kind = KernelOfAction::Kind::Cyclic;
      out.generator = w;
      out.base_vector = ck;
      out.k = k;
      return out;
    }
  }
  out.note = "no normalised power of the edge intersection found up to k = 64";
  return out;
}

WpdCheck GraphOfGroups::check_relative_wpd(const Word& gw, std::size_t radius) const {
  GogElement g = britton_reduce(from_word(gw));
  if (classify_isometry(g) != Isometry::Hyperbolic) {
    throw Error(ErrorKind::Precondition, "relative WPD check needs a hyperbolic element");
  }
  const GogElement ginv = inverse(g);
  KernelOfAction kernel = kernel_of_action();
  WpdCheck out;
  out.radius = radius;
  const long r = static_cast<long>(radius);
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    const std::size_t rank = vertices_[v].rank;
    std::vector<long> h(rank, -r);
    const GogElement path = tree_path(v);
    const GogElement path_inv = inverse(path);
    for (;;) {
      IntVec hv(rank);
      for (std::size_t i = 0; i < rank; ++i) hv[i] = h[i];
      if (!is_zero(hv)) {
        ++out.candidates_checked;
        GogElement hb = multiply(multiply(path, vertex_element(v, hv)), path_inv);
        GogElement conj = britton_reduce(multiply(multiply(path_inv, multiply(multiply(ginv, hb), g)), path));
        if (conj.is_vertex_element()) {
          bool in_k = false;
          bool k_known = kernel.kind != KernelOfAction::Kind::Unknown;
          if (kernel.kind == KernelOfAction::Kind::Cyclic) {
            auto kv = transport(kernel.base_vector, 0, v);
            if (kv) {
              in_k = cyclic_membership(*kv, hv).has_value();
            } else {
              k_known = false;
            }
          }
          if (!in_k) {
            out.vertex = v;
            out.h = hv;
            if (k_known) {
              out.kind = WpdCheck::Kind::Counterexample;
              out.note = "h and g^-1 h g both fix vertex '" + vertices_[v].name + "' and h is not in K";
            } else {
              out.kind = WpdCheck::Kind::Unknown;
              out.note = "candidate found but the kernel of the action is not determined";
            }
            return out;
          }
        }
      }
      std::size_t i = 0;
      while (i < rank && h[i] == r) h[i++] = -r;
      if (i == rank) break;
      ++h[i];
    }
  }
  out.kind = WpdCheck::Kind::Verified;
  return out;
}

GraphOfGroups baumslag_solitar_gog(long m, long n) {
  if (m == 0 || n == 0) throw Error(ErrorKind::UnsupportedParameters, "BS(m,n) needs nonzero m, n");
  GogEdge loop{0, 0, {Int(m)}, {Int(n)}, false, "t"};
  return GraphOfGroups({{"x", 1, {"x"}}}, {loop});
}

GraphOfGroups p4_splitting() {
  std::vector<GogVertex> vs{{"ab", 2, {"a", "b"}}, {"bc", 2, {"b2", "c"}}, {"cd", 2, {"c2", "d"}}};
  std::vector<GogEdge> es{{0, 1, make_vec({0, 1}), make_vec({1, 0}), true, ""},
                          {1, 2, make_vec({0, 1}), make_vec({1, 0}), true, ""}};
  return GraphOfGroups(std::move(vs), std::move(es));
}

GraphOfGroups tubular_ab() {
  return GraphOfGroups({{"v", 2, {"a", "b"}}}, {{0, 0, make_vec({1, 0}), make_vec({0, 1}), false, "t"}});
}

GraphOfGroups tubular_two_vertex() {
  std::vector<GogVertex> vs{{"u", 2, {"a", "b"}}, {"w", 2, {"c", "d"}}};
  std::vector<GogEdge> es{{0, 1, make_vec({1, 0}), make_vec({1, 0}), true, ""},
                          {0, 1, make_vec({0, 1}), make_vec({0, 1}), false, "t"}};
  return GraphOfGroups(std::move(vs), std::move(es));
}

}  // namespace cgt
