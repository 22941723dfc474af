#include "cgt/quotients.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace cgt {

Perm perm_identity(std::size_t n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0u);
  return p;
}

Perm perm_then(const Perm& first, const Perm& second) {
  Perm r(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) r[i] = second[first[i]];
  return r;
}

Perm perm_inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<std::uint32_t>(i);
  return r;
}

bool perm_is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

std::string perm_cycles(const Perm& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += " ";
      out += std::to_string(j + 1);
      first = false;
      j = p[j];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

namespace {

// Calls visit on each group element until it returns true.
template <class Visit>
std::size_t close_group(const std::vector<Perm>& gens, std::size_t n, std::size_t max_order,
                        Visit visit) {
  std::set<Perm> seen;
  std::deque<Perm> queue;
  Perm id = perm_identity(n);
  seen.insert(id);
  queue.push_back(id);
  if (visit(id)) return seen.size();
  while (!queue.empty()) {
    Perm cur = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      Perm nxt = perm_then(cur, g);
      if (!seen.insert(nxt).second) continue;
      if (seen.size() > max_order) throw Error(ErrorKind::Budget, "permutation group closure too large");
      if (visit(nxt)) return seen.size();
      queue.push_back(std::move(nxt));
    }
  }
  return seen.size();
}

}  // namespace

bool perm_group_contains(const std::vector<Perm>& gens, const Perm& g, std::size_t n,
                         std::size_t max_order) {
  bool found = false;
  close_group(gens, n, max_order, [&](const Perm& p) { return found = (p == g); });
  return found;
}

std::size_t perm_group_order(const std::vector<Perm>& gens, std::size_t n, std::size_t max_order) {
  return close_group(gens, n, max_order, [](const Perm&) { return false; });
}

std::uint32_t CosetTable::act(std::uint32_t coset, const Word& w) const {
  for (const auto& l : w) coset = act(coset, l);
  return coset;
}

Perm CosetTable::generator_perm(std::uint32_t gen) const {
  Perm p(index());
  for (std::size_t c = 0; c < index(); ++c) p[c] = rows[c][2 * gen];
  return p;
}

std::string CosetTable::to_csv(const GenAlphabet& alphabet) const {
  std::ostringstream os;
  os << "coset";
  for (std::size_t g = 0; g < num_gens; ++g) os << "," << alphabet.name(g) << "," << alphabet.name(g) << "^-1";
  os << "\n";
  for (std::size_t c = 0; c < rows.size(); ++c) {
    os << c;
    for (auto v : rows[c]) os << "," << v;
    os << "\n";
  }
  return os.str();
}

std::string CosetTable::to_json() const {
  nlohmann::json j;
  j["status"] = closed() ? "closed" : "overflow";
  j["num_gens"] = num_gens;
  j["index"] = index();
  j["rows"] = rows;
  return j.dump();
}

CosetTable CosetTable::from_json(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    CosetTable t;
    t.status = j.at("status").get<std::string>() == "closed" ? Status::Closed : Status::Overflow;
    t.num_gens = j.at("num_gens").get<std::size_t>();
    t.rows = j.at("rows").get<std::vector<std::vector<std::uint32_t>>>();
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedInput, std::string("coset table JSON: ") + e.what());
  }
}

namespace {

class Enumerator {
 public:
  Enumerator(std::size_t num_gens, std::size_t max_cosets)
      : cols_(2 * num_gens), max_live_(max_cosets), max_total_(64 * max_cosets) {
    new_row();
  }

  bool overflow() const { return overflow_; }
  std::size_t size() const { return table_.size(); }
  std::size_t defined() const { return table_.size(); }
  bool alive(std::size_t c) const { return parent_[c] == c; }
  long entry(std::size_t c, std::size_t x) const { return table_[c][x]; }

  void scan_and_fill(std::size_t c, const std::vector<std::size_t>& w) {
    if (w.empty()) return;
    std::size_t f = c, b = c;
    long i = 0, j = static_cast<long>(w.size()) - 1;
    while (true) {
      while (i <= j && table_[f][w[i]] >= 0) f = table_[f][w[i++]];
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && table_[b][w[j] ^ 1] >= 0) b = table_[b][w[j--] ^ 1];
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        table_[f][w[i]] = static_cast<long>(b);
        table_[b][w[i] ^ 1] = static_cast<long>(f);
        return;
      }
      if (!define(f, w[i])) return;
    }
  }

  bool define(std::size_t c, std::size_t x) {
    if (live_ >= max_live_ || table_.size() >= max_total_) {
      overflow_ = true;
      return false;
    }
    std::size_t d = new_row();
    table_[c][x] = static_cast<long>(d);
    table_[d][x ^ 1] = static_cast<long>(c);
    return true;
  }

  std::size_t rep(std::size_t c) {
    std::size_t r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      std::size_t next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

 private:
  std::size_t new_row() {
    table_.emplace_back(cols_, -1);
    parent_.push_back(table_.size() - 1);
    ++live_;
    return table_.size() - 1;
  }

  void merge(std::size_t k, std::size_t l, std::vector<std::size_t>& queue) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    if (k > l) std::swap(k, l);
    parent_[l] = k;
    --live_;
    queue.push_back(l);
  }

  void coincidence(std::size_t a, std::size_t b) {
    std::vector<std::size_t> queue;
    merge(a, b, queue);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::size_t e = queue[qi];
      for (std::size_t x = 0; x < cols_; ++x) {
        if (table_[e][x] < 0) continue;
        std::size_t f = static_cast<std::size_t>(table_[e][x]);
        table_[f][x ^ 1] = -1;
        std::size_t mu = rep(e), nu = rep(f);
        if (table_[mu][x] >= 0) {
          merge(nu, static_cast<std::size_t>(table_[mu][x]), queue);
        } else if (table_[nu][x ^ 1] >= 0) {
          merge(mu, static_cast<std::size_t>(table_[nu][x ^ 1]), queue);
        } else {
          table_[mu][x] = static_cast<long>(nu);
          table_[nu][x ^ 1] = static_cast<long>(mu);
        }
      }
    }
  }

  std::size_t cols_, max_live_, max_total_;
  std::vector<std::vector<long>> table_;
  std::vector<std::size_t> parent_;
  std::size_t live_ = 0;
  bool overflow_ = false;
};

std::vector<std::size_t> columns(const Word& w) {
  std::vector<std::size_t> out;
  out.reserve(w.size());
  for (const auto& l : w) out.push_back(l.key());
  return out;
}

}  // namespace

CosetTable todd_coxeter(const FinitePresentation& p, const std::vector<Word>& subgens,
                        std::size_t max_cosets) {
  if (max_cosets < 1) throw Error(ErrorKind::Precondition, "max_cosets must be at least 1");
  const std::size_t ng = p.alphabet.size();
  const std::size_t cols = 2 * ng;
  std::vector<std::vector<std::size_t>> rels, subs;
  for (const auto& r : p.relators) rels.push_back(columns(r));
  for (const auto& s : subgens) {
    p.alphabet.check(s);
    subs.push_back(columns(free_reduce(s)));
  }

  CosetTable out;
  out.num_gens = ng;
  Enumerator en(ng, max_cosets);
  for (const auto& s : subs) {
    en.scan_and_fill(0, s);
    if (en.overflow()) break;
  }
  for (std::size_t c = 0; c < en.size() && !en.overflow(); ++c) {
    if (!en.alive(c)) continue;
    for (const auto& r : rels) {
      en.scan_and_fill(c, r);
      if (en.overflow() || !en.alive(c)) break;
    }
    if (en.overflow() || !en.alive(c)) continue;
    for (std::size_t x = 0; x < cols; ++x) {
      if (en.entry(c, x) < 0 && !en.define(c, x)) break;
    }
  }
  out.cosets_defined = en.defined();
  if (en.overflow()) {
    out.status = CosetTable::Status::Overflow;
    return out;
  }

  // Renumber live cosets in breadth-first order from coset 0.
  std::vector<long> number(en.size(), -1);
  std::vector<std::size_t> order{0};
  number[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t x = 0; x < cols; ++x) {
      std::size_t d = en.rep(static_cast<std::size_t>(en.entry(order[i], x)));
      if (number[d] < 0) {
        number[d] = static_cast<long>(order.size());
        order.push_back(d);
      }
    }
  }
  out.rows.assign(order.size(), std::vector<std::uint32_t>(cols));
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t x = 0; x < cols; ++x) {
      out.rows[i][x] = static_cast<std::uint32_t>(number[en.rep(static_cast<std::size_t>(en.entry(order[i], x)))]);
    }
  }
  out.status = CosetTable::Status::Closed;
  return out;
}

std::string validate_coset_table(const FinitePresentation& p, const std::vector<Word>& subgens,
                                 const CosetTable& t) {
  if (!t.closed()) return "table is not closed";
  if (t.num_gens != p.alphabet.size()) return "generator count mismatch";
  const std::size_t n = t.index();
  if (n == 0) return "empty table";
  for (std::size_t c = 0; c < n; ++c) {
    if (t.rows[c].size() != 2 * t.num_gens) return "row " + std::to_string(c) + " has wrong width";
    for (std::size_t x = 0; x < t.rows[c].size(); ++x) {
      std::uint32_t d = t.rows[c][x];
      if (d >= n) return "row " + std::to_string(c) + " points outside the table";
      if (t.rows[d][x ^ 1] != c) return "inverse columns disagree at coset " + std::to_string(c);
    }
  }
  for (std::size_t ri = 0; ri < p.relators.size(); ++ri) {
    for (std::uint32_t c = 0; c < n; ++c) {
      if (t.act(c, p.relators[ri]) != c) {
        return "relator " + std::to_string(ri) + " moves coset " + std::to_string(c);
      }
    }
  }
  for (std::size_t si = 0; si < subgens.size(); ++si) {
    if (t.act(0, free_reduce(subgens[si])) != 0) return "subgroup generator " + std::to_string(si) + " moves coset 0";
  }
  // Transitivity.
  std::vector<bool> seen(n, false);
  std::vector<std::uint32_t> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    auto c = stack.back();
    stack.pop_back();
    for (auto d : t.rows[c]) {
      if (!seen[d]) {
        seen[d] = true;
        ++count;
        stack.push_back(d);
      }
    }
  }
  if (count != n) return "action is not transitive";
  return {};
}

SchreierData reidemeister_schreier(const FinitePresentation& p, const CosetTable& t) {
  if (!t.closed()) throw Error(ErrorKind::Precondition, "Reidemeister-Schreier needs a closed coset table");
  const std::size_t n = t.index(), ng = t.num_gens;
  std::vector<long> parent(n, -1), parent_col(n, -1);
  std::vector<Word> transversal(n);
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> order{0};
  seen[0] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::size_t c = order[i];
    for (std::size_t x = 0; x < 2 * ng; ++x) {
      std::size_t d = t.rows[c][x];
      if (seen[d]) continue;
      seen[d] = true;
      parent[d] = static_cast<long>(c);
      parent_col[d] = static_cast<long>(x);
      transversal[d] = transversal[c];
      transversal[d].push_back(Letter{static_cast<std::uint32_t>(x / 2), static_cast<std::int8_t>(x % 2 ? -1 : 1)});
      order.push_back(d);
    }
  }

  std::vector<std::vector<long>> gen_of(n, std::vector<long>(ng, -1));
  std::vector<std::string> names;
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t g = 0; g < ng; ++g) {
      std::size_t d = t.rows[c][2 * g];
      bool tree = (parent[d] == static_cast<long>(c) && parent_col[d] == static_cast<long>(2 * g)) ||
                  (parent[c] == static_cast<long>(d) && parent_col[c] == static_cast<long>(2 * g + 1));
      if (tree) continue;
      gen_of[c][g] = static_cast<long>(names.size());
      names.push_back(p.alphabet.name(g) + "_" + std::to_string(c));
    }
  }

  SchreierData s{FinitePresentation(GenAlphabet(names), {}), std::move(transversal), std::move(gen_of)};
  std::vector<Word> rels;
  for (const auto& r : p.relators) {
    for (std::uint32_t c = 0; c < n; ++c) {
      Word w;
      std::uint32_t cur = c;
      for (const auto& l : r) {
        if (l.sign > 0) {
          long sg = s.generator_of[cur][l.gen];
          if (sg >= 0) w.push_back(Letter{static_cast<std::uint32_t>(sg), 1});
          cur = t.act(cur, l);
        } else {
          std::uint32_t d = t.act(cur, l);
          long sg = s.generator_of[d][l.gen];
          if (sg >= 0) w.push_back(Letter{static_cast<std::uint32_t>(sg), -1});
          cur = d;
        }
      }
      rels.push_back(std::move(w));
    }
  }
  s.presentation = FinitePresentation(s.presentation.alphabet, std::move(rels));
  return s;
}

Word schreier_rewrite(const SchreierData& s, const CosetTable& t, const Word& w) {
  Word out;
  std::uint32_t cur = 0;
  for (const auto& l : w) {
    std::uint32_t from = l.sign > 0 ? cur : t.act(cur, l);
    long sg = s.generator_of[from][l.gen];
    if (sg >= 0) out.push_back(Letter{static_cast<std::uint32_t>(sg), l.sign});
    cur = t.act(cur, l);
  }
  if (cur != 0) throw Error(ErrorKind::Precondition, "word does not lie in the subgroup");
  return free_reduce(out);
}

Perm PermAssignment::evaluate(const Word& w) const {
  Perm r = perm_identity(degree);
  for (const auto& l : w) {
    const Perm& g = images.at(l.gen);
    if (l.sign > 0) {
      for (auto& x : r) x = g[x];
    } else {
      Perm inv = perm_inverse(g);
      for (auto& x : r) x = inv[x];
    }
  }
  return r;
}

std::string PermAssignment::to_json() const {
  nlohmann::json j;
  j["degree"] = degree;
  j["images"] = images;
  return j.dump();
}

PermAssignment PermAssignment::from_json(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    PermAssignment a;
    a.degree = j.at("degree").get<std::size_t>();
    a.images = j.at("images").get<std::vector<Perm>>();
    for (const auto& p : a.images) {
      if (p.size() != a.degree) throw Error(ErrorKind::MalformedInput, "permutation has wrong degree");
      std::vector<bool> hit(a.degree, false);
      for (auto x : p) {
        if (x >= a.degree || hit[x]) throw Error(ErrorKind::MalformedInput, "not a permutation");
        hit[x] = true;
      }
    }
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedInput, std::string("assignment JSON: ") + e.what());
  }
}

bool is_homomorphism(const FinitePresentation& p, const PermAssignment& a) {
  if (a.images.size() != p.alphabet.size()) return false;
  for (const auto& r : p.relators)
    if (!perm_is_identity(a.evaluate(r))) return false;
  return true;
}

HomEnumerator::HomEnumerator(const FinitePresentation& p, std::size_t degree, std::size_t budget)
    : p_(p), degree_(degree), budget_(budget) {
  if (degree < 1) throw Error(ErrorKind::Precondition, "degree must be at least 1");
  if (degree > 8) throw Error(ErrorKind::Budget, "homomorphism enumeration limited to degree 8");
  Perm q = perm_identity(degree);
  do {
    perms_.push_back(q);
  } while (std::next_permutation(q.begin(), q.end()));
  const std::size_t ng = p.alphabet.size();
  relators_at_.assign(ng, {});
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    std::uint32_t top = 0;
    for (const auto& l : p.relators[i]) top = std::max(top, l.gen);
    relators_at_[top].push_back(i);
  }
  choice_.assign(ng, 0);
}

bool HomEnumerator::consistent_at(std::size_t level) const {
  for (auto ri : relators_at_[level]) {
    const Word& r = p_.relators[ri];
    for (std::uint32_t x0 = 0; x0 < degree_; ++x0) {
      std::uint32_t x = x0;
      for (const auto& l : r) {
        const Perm& g = perms_[choice_[l.gen]];
        if (l.sign > 0) {
          x = g[x];
        } else {
          x = static_cast<std::uint32_t>(std::find(g.begin(), g.end(), x) - g.begin());
        }
      }
      if (x != x0) return false;
    }
  }
  return true;
}

std::optional<PermAssignment> HomEnumerator::next() {
  const std::size_t ng = choice_.size();
  if (done_ || nodes_ >= budget_) {
    exhausted_ = !done_;
    return std::nullopt;
  }
  if (ng == 0) {
    done_ = true;
    return PermAssignment{degree_, {}};
  }
  while (true) {
    if (level_ == ng) {
      PermAssignment a{degree_, {}};
      for (auto c : choice_) a.images.push_back(perms_[c]);
      level_ = ng - 1;
      ++choice_[level_];
      return a;
    }
    if (choice_[level_] >= perms_.size()) {
      if (level_ == 0) {
        done_ = true;
        return std::nullopt;
      }
      choice_[level_] = 0;
      --level_;
      ++choice_[level_];
      continue;
    }
    if (nodes_ >= budget_) {
      exhausted_ = true;
      return std::nullopt;
    }
    ++nodes_;
    if (consistent_at(level_)) {
      ++level_;
    } else {
      ++choice_[level_];
    }
  }
}

HomEnumeration enumerate_homs(const FinitePresentation& p, std::size_t degree, std::size_t budget) {
  HomEnumerator en(p, degree, budget);
  HomEnumeration out;
  while (auto a = en.next()) out.homs.push_back(std::move(*a));
  out.budget_exhausted = en.budget_exhausted();
  out.nodes = en.nodes();
  return out;
}

SeparationResult separate(const FinitePresentation& p, const std::vector<Word>& subgens,
                          const Word& g, std::size_t n_max, std::size_t budget) {
  SeparationResult res;
  for (std::size_t deg = 1; deg <= n_max; ++deg) {
    if (res.nodes >= budget) {
      res.budget_exhausted = true;
      break;
    }
    HomEnumerator en(p, deg, budget - res.nodes);
    while (auto a = en.next()) {
      Perm gi = a->evaluate(g);
      if (perm_is_identity(gi)) continue;
      std::vector<Perm> hs;
      for (const auto& h : subgens) hs.push_back(a->evaluate(h));
      if (perm_group_contains(hs, gi, deg)) continue;
      SeparationCertificate cert;
      cert.subgroup_order = perm_group_order(hs, deg);
      cert.assignment = std::move(*a);
      cert.subgroup_images = std::move(hs);
      cert.g_image = std::move(gi);
      res.nodes += en.nodes();
      res.certificate = std::move(cert);
      return res;
    }
    res.nodes += en.nodes();
    if (en.budget_exhausted()) {
      res.budget_exhausted = true;
      break;
    }
  }
  return res;
}

bool verify_separation(const FinitePresentation& p, const std::vector<Word>& subgens,
                       const Word& g, const SeparationCertificate& cert) {
  const auto& a = cert.assignment;
  if (!is_homomorphism(p, a)) return false;
  std::vector<Perm> hs;
  for (const auto& h : subgens) hs.push_back(a.evaluate(h));
  return !perm_group_contains(hs, a.evaluate(g), a.degree);
}

}  // namespace cgt
