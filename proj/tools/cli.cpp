#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cgt/bs.hpp"
#include "cgt/fixtures.hpp"
#include "cgt/gog.hpp"
#include "cgt/quotients.hpp"
#include "cgt/raag.hpp"
#include "cgt/subdirect.hpp"

namespace cgt::cli {

using json = nlohmann::json;

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kMalformed = 2;
constexpr int kUnknown = 3;

struct Globals {
  std::size_t steps = 1'000'000;
  std::size_t degree = 4;
  std::size_t length = 8;
  bool json_out = false;
  bool timing = false;
  std::string fixture, group_file, presentation_file;
};

struct Outcome {
  std::string verdict;
  json certificate = json::object();
  json consumed = json::object();
  int code = kOk;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MalformedInput, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::MalformedInput, what + ": " + e.what());
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  if (s.find_first_not_of(' ') == std::string::npos) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

// A group as given on the command line: the dedicated BS(m,n) model or a
// GroupModel.
struct Target {
  std::optional<GroupModel> model;
  std::optional<bs::Params> bs;

  const GenAlphabet& alphabet() const { return bs ? bs::alphabet() : model->alphabet(); }
  Word parse(const std::string& s) const { return alphabet().parse(s); }
  std::string format(const Word& w) const { return alphabet().format(w); }
  std::vector<Word> parse_list(const std::string& s) const {
    std::vector<Word> out;
    for (const auto& item : split_list(s)) out.push_back(parse(item));
    return out;
  }
  Word normal_form(const Word& w) const { return bs ? bs::normal_form(*bs, w) : model->normal_form(w); }
  bool word_problem(const Word& w) const { return bs ? bs::word_problem(*bs, w) : model->word_problem(w); }
};

const std::regex& bs_name() {
  static const std::regex re(R"(BS\((-?\d+),(-?\d+)\))");
  return re;
}

json group_source(const Globals& g, bool as_gog) {
  json s = json::object();
  if (!g.fixture.empty()) {
    s["fixture"] = g.fixture;
  } else if (!g.group_file.empty()) {
    s["group"] = parse_json(read_file(g.group_file), "group JSON");
  } else {
    throw Error(ErrorKind::MalformedInput, "no group given: use --fixture NAME or --group FILE");
  }
  if (as_gog) s["as_gog"] = true;
  return s;
}

Target target_from_source(const json& src) {
  Target t;
  if (src.contains("fixture")) {
    const std::string name = src.at("fixture").get<std::string>();
    std::smatch m;
    if (!src.value("as_gog", false) && std::regex_match(name, m, bs_name())) {
      t.bs = bs::Params(std::stol(m[1]), std::stol(m[2]));
      return t;
    }
    t.model = fixtures::group(name);
  } else if (src.contains("group")) {
    t.model = GroupModel::from_json(src.at("group").dump());
  } else {
    throw Error(ErrorKind::MalformedInput, "no group given");
  }
  return t;
}

json presentation_source(const Globals& g) {
  if (!g.presentation_file.empty()) {
    return json{{"presentation", parse_json(read_file(g.presentation_file), "presentation JSON")}};
  }
  return group_source(g, true);
}

FinitePresentation presentation_from_source(const json& src) {
  if (src.contains("presentation")) return FinitePresentation::from_json(src.at("presentation").dump());
  return target_from_source(src).model->presentation();
}

json subdirect_source(const std::string& subdirect_arg) {
  if (std::filesystem::exists(subdirect_arg)) return json{{"subdirect_json", parse_json(read_file(subdirect_arg), "subdirect JSON")}};
  return json{{"subdirect", subdirect_arg}};
}

SubdirectInput subdirect_from_source(const json& src) {
  if (src.contains("subdirect")) return fixtures::subdirect(src.at("subdirect").get<std::string>());
  return SubdirectInput::from_json(src.at("subdirect_json").dump());
}

json perm_json(const PermAssignment& a) {
  json cycles = json::array();
  for (const auto& p : a.images) cycles.push_back(perm_cycles(p));
  return {{"degree", a.degree}, {"images", a.images}, {"cycles", cycles}};
}

PermAssignment perm_from_json(const json& j) {
  return PermAssignment::from_json(json{{"degree", j.at("degree")}, {"images", j.at("images")}}.dump());
}

json abstract_json(const Word& w) {
  json out = json::array();
  for (const auto& l : w) out.push_back({l.gen, static_cast<int>(l.sign)});
  return out;
}

Word abstract_from_json(const json& j) {
  Word w;
  for (const auto& f : j) w.push_back(Letter{f.at(0).get<std::uint32_t>(), static_cast<std::int8_t>(f.at(1).get<int>())});
  return w;
}

// ---------------------------------------------------------------------------
// Commands. Each reads its inputs from a JSON object so `verify` can rebuild
// exactly what was run.

Outcome cmd_nf(const json& in) {
  Target t = target_from_source(in.at("group"));
  Word w = t.parse(in.at("word").get<std::string>());
  Outcome o;
  o.verdict = "normal-form";
  Word nf = t.normal_form(w);
  o.certificate = {{"normal_form", t.format(nf)}, {"length", nf.size()}, {"model", t.bs ? "bs" : "generic"}};
  return o;
}

Outcome cmd_wp(const json& in) {
  Target t = target_from_source(in.at("group"));
  Word w = t.parse(in.at("word").get<std::string>());
  Word nf = t.normal_form(w);
  Outcome o;
  o.verdict = nf.empty() ? "trivial" : "nontrivial";
  o.certificate = {{"normal_form", t.format(nf)}};
  return o;
}

const RaagPresentation& require_raag(const Target& t) {
  if (!t.model || !t.model->as_raag()) {
    throw Error(ErrorKind::Precondition, "conjugacy is implemented for right-angled Artin groups");
  }
  return *t.model->as_raag();
}

Outcome cmd_conj(const json& in) {
  Target t = target_from_source(in.at("group"));
  const auto& raag = require_raag(t);
  Word u = t.parse(in.at("u")), v = t.parse(in.at("v"));
  Outcome o;
  o.verdict = raag.conjugacy_problem(u, v) ? "conjugate" : "not-conjugate";
  o.certificate = {{"core_u", t.format(raag.cyclic_normal_form(u).core)},
                   {"core_v", t.format(raag.cyclic_normal_form(v).core)}};
  return o;
}

std::vector<std::pair<Word, Word>> parse_pairs(const Target& t, const json& in) {
  std::vector<std::pair<Word, Word>> pairs;
  for (const auto& p : in.at("pairs")) pairs.emplace_back(t.parse(p.at(0)), t.parse(p.at(1)));
  return pairs;
}

Outcome cmd_multi_conj(const json& in) {
  Target t = target_from_source(in.at("group"));
  const auto& raag = require_raag(t);
  auto pairs = parse_pairs(t, in);
  auto r = multiple_conjugacy(raag, pairs, in.at("radius").get<std::size_t>());
  Outcome o;
  o.verdict = to_string(r.verdict);
  o.consumed = {{"candidates_checked", r.candidates_checked}};
  if (r.verdict == Verdict::Yes) o.certificate = {{"witness", t.format(r.witness)}};
  if (r.verdict == Verdict::No) o.certificate = {{"failing_pair", r.failing_pair}, {"obstruction", r.obstruction}};
  if (r.verdict == Verdict::Unknown) o.code = kUnknown;
  return o;
}

Outcome cmd_member(const json& in) {
  Target t = target_from_source(in.at("group"));
  auto h = t.parse_list(in.at("sub"));
  Word g = t.parse(in.at("word").get<std::string>());
  SearchBudget b{in.at("length").get<std::size_t>(), in.at("degree").get<std::size_t>(),
                 in.at("steps").get<std::size_t>()};
  auto r = membership_semidecide(*t.model, h, g, b);
  Outcome o;
  o.verdict = to_string(r.verdict);
  o.consumed = {{"positive_steps", r.positive_steps},
                {"negative_steps", r.negative_steps},
                {"positive_exhausted", r.positive_exhausted},
                {"negative_exhausted", r.negative_exhausted}};
  if (r.verdict == Verdict::Yes) {
    o.certificate = {{"witness", t.format(r.witness)}, {"witness_generators", abstract_json(r.witness_abstract)}};
  } else if (r.verdict == Verdict::No) {
    const auto& c = *r.separation;
    o.certificate = perm_json(c.assignment);
    o.certificate["g_image"] = perm_cycles(c.g_image);
    o.certificate["subgroup_order"] = c.subgroup_order;
  } else {
    o.code = kUnknown;
  }
  return o;
}

Outcome cmd_separate(const json& in) {
  FinitePresentation p = presentation_from_source(in.at("presentation"));
  std::vector<Word> h;
  for (const auto& s : split_list(in.at("sub"))) h.push_back(p.alphabet.parse(s));
  Word g = p.alphabet.parse(in.at("word").get<std::string>());
  auto r = separate(p, h, g, in.at("degree").get<std::size_t>(), in.at("steps").get<std::size_t>());
  Outcome o;
  o.consumed = {{"nodes", r.nodes}, {"budget_exhausted", r.budget_exhausted}};
  if (r.certificate) {
    o.verdict = "separated";
    o.certificate = perm_json(r.certificate->assignment);
    o.certificate["g_image"] = perm_cycles(r.certificate->g_image);
    o.certificate["subgroup_order"] = r.certificate->subgroup_order;
  } else {
    o.verdict = "unknown";
    o.code = kUnknown;
  }
  return o;
}

json fiber_json(const SubdirectInput& s, const FiberReport& f) {
  json found = json::array();
  for (const auto& w : f.found) {
    found.push_back({{"word", s.names.format(w.abstract_word)},
                     {"element", {s.g1.alphabet().format(w.element.first), s.g2.alphabet().format(w.element.second)}}});
  }
  return {{"side", f.side}, {"radius_searched", f.radius_searched}, {"found", found}};
}

Outcome cmd_fiber(const json& in) {
  SubdirectInput s = subdirect_from_source(in.at("subdirect"));
  auto f = fiber_search(s, in.at("side").get<int>(), in.at("radius").get<std::size_t>());
  Outcome o;
  o.verdict = f.found.empty() ? "empty" : "found";
  o.certificate = fiber_json(s, f);
  o.consumed = {{"words_checked", f.words_checked}};
  return o;
}

Outcome cmd_classify(const json& in) {
  SubdirectInput s = subdirect_from_source(in.at("subdirect"));
  ClassifyBudget b{in.at("radius").get<std::size_t>(), in.at("max_cosets").get<std::size_t>()};
  auto r = classify_structure(s, b);
  Outcome o;
  o.verdict = r.bucket;
  o.certificate = json::parse(r.to_json(s));
  o.consumed = {{"cosets_defined", r.index_table.cosets_defined},
                {"fiber_words_checked", r.fiber1.words_checked + r.fiber2.words_checked}};
  if (r.bucket == "unknown") o.code = kUnknown;
  return o;
}

Outcome cmd_coset_cover(const json& in) {
  Target t = target_from_source(in.at("group"));
  auto r = coset_cover_check(*t.model, t.parse_list(in.at("sub")), t.parse_list(in.at("extra")),
                             t.parse_list(in.at("cosets")), t.parse(in.at("c")),
                             in.at("radius").get<std::size_t>(), in.at("witness_budget").get<std::size_t>());
  Outcome o;
  o.verdict = to_string(r.kind);
  json fs = json::array();
  for (const auto& f : r.factorisations) {
    fs.push_back({{"g", t.format(f.g)}, {"coset", f.coset}, {"power", f.power}, {"h", t.format(f.h)}});
  }
  o.certificate = {{"radius", r.radius}, {"decidable", r.decidable}, {"factorisations", fs}};
  if (r.kind != CoverResult::Kind::Covered) o.certificate["witness"] = t.format(r.witness);
  o.consumed = {{"elements_checked", r.elements_checked}};
  if (r.kind == CoverResult::Kind::Unknown) o.code = kUnknown;
  return o;
}

bs::Params bs_params(const json& in) { return bs::Params(in.at("m").get<long>(), in.at("n").get<long>()); }

Outcome cmd_bs_h1(const json& in) {
  auto p = bs_params(in);
  auto xi = bs::parse_xi_json(in.at("xi").get<std::string>());
  auto v = bs::h1_image(p, xi);
  Outcome o;
  o.verdict = v.is_zero() ? "zero" : "nonzero";
  o.certificate = {{"value", v.to_string()},
                   {"fraction", v.to_fraction_string()},
                   {"numerator", v.numerator().get_str()},
                   {"exponent", v.exponent()},
                   {"base", v.base().get_str()}};
  return o;
}

Outcome cmd_bs_power_identity(const json& in) {
  auto p = bs_params(in);
  bs::XiWord g;
  if (in.contains("g")) g = bs::parse_xi_json(in.at("g").get<std::string>());
  auto r = bs::conjugation_power_identity(p, in.at("M").get<unsigned>(), in.at("k").get<unsigned>(), g);
  Outcome o;
  o.verdict = r.holds ? "holds" : "fails";
  o.certificate = {{"base_exponent", r.base_exponent.get_str()},
                   {"exponent", r.exponent.get_str()},
                   {"stated_exponent", r.stated_exponent.get_str()},
                   {"stated_holds", r.stated_holds}};
  return o;
}

Outcome cmd_bs_power_in_n(const json& in) {
  auto p = bs_params(in);
  Int q = bs::power_in_N_exponent(p, in.at("M").get<unsigned>(), in.at("k").get<unsigned>());
  Outcome o;
  o.verdict = "exponent";
  o.certificate = {{"q", q.get_str()}};
  return o;
}

Outcome cmd_tc(const json& in) {
  FinitePresentation p = presentation_from_source(in.at("presentation"));
  std::vector<Word> h;
  for (const auto& s : split_list(in.at("sub"))) h.push_back(p.alphabet.parse(s));
  auto t = todd_coxeter(p, h, in.at("max_cosets").get<std::size_t>());
  Outcome o;
  o.consumed = {{"cosets_defined", t.cosets_defined}};
  if (!t.closed()) {
    o.verdict = "overflow";
    o.code = kUnknown;
    return o;
  }
  o.verdict = "closed";
  o.certificate = {{"index", t.index()}, {"table", json::parse(t.to_json())}};
  if (in.value("csv", false)) o.certificate["csv"] = t.to_csv(p.alphabet);
  return o;
}

Outcome cmd_rs(const json& in) {
  FinitePresentation p = presentation_from_source(in.at("presentation"));
  std::vector<Word> h;
  for (const auto& s : split_list(in.at("sub"))) h.push_back(p.alphabet.parse(s));
  auto t = todd_coxeter(p, h, in.at("max_cosets").get<std::size_t>());
  Outcome o;
  o.consumed = {{"cosets_defined", t.cosets_defined}};
  if (!t.closed()) {
    o.verdict = "overflow";
    o.code = kUnknown;
    return o;
  }
  auto s = reidemeister_schreier(p, t);
  o.verdict = "presented";
  json transversal = json::array();
  for (const auto& w : s.transversal) transversal.push_back(p.alphabet.format(w));
  o.certificate = {{"index", t.index()},
                   {"generator_count", s.presentation.alphabet.size()},
                   {"presentation", json::parse(s.presentation.to_json())},
                   {"transversal", transversal}};
  return o;
}

Outcome cmd_homs(const json& in) {
  FinitePresentation p = presentation_from_source(in.at("presentation"));
  auto r = enumerate_homs(p, in.at("degree").get<std::size_t>(), in.at("steps").get<std::size_t>());
  Outcome o;
  json list = json::array();
  for (const auto& a : r.homs) list.push_back(perm_json(a));
  o.verdict = r.budget_exhausted ? "partial" : "complete";
  o.certificate = {{"count", r.homs.size()}, {"assignments", list}};
  o.consumed = {{"nodes", r.nodes}};
  if (r.budget_exhausted) o.code = kUnknown;
  return o;
}

const GraphOfGroups& require_gog(const Target& t) {
  if (!t.model || !t.model->as_gog()) throw Error(ErrorKind::Precondition, "this command needs a graph of groups");
  return *t.model->as_gog();
}

Outcome cmd_wpd(const json& in) {
  Target t = target_from_source(in.at("group"));
  const auto& g = require_gog(t);
  auto cand = g.wpd_candidate();
  Outcome o;
  json choices = json::array();
  for (const auto& v : cand.vertex_choices) choices.push_back(to_string(v));
  auto iso = g.classify_isometry(cand.word);
  o.certificate = {{"element", t.format(cand.word)},
                   {"vertex_choices", choices},
                   {"isometry", to_string(iso)},
                   {"cyclic_length", g.cyclic_length(g.from_word(cand.word))}};
  auto check = g.check_relative_wpd(cand.word, in.at("radius").get<std::size_t>());
  o.verdict = to_string(check.kind);
  o.certificate["radius"] = check.radius;
  if (check.kind != WpdCheck::Kind::Verified) {
    o.certificate["vertex"] = check.vertex;
    o.certificate["h"] = to_string(check.h);
    o.certificate["note"] = check.note;
  }
  o.consumed = {{"candidates_checked", check.candidates_checked}};
  if (check.kind == WpdCheck::Kind::Unknown) o.code = kUnknown;
  return o;
}

Outcome cmd_kernel(const json& in) {
  Target t = target_from_source(in.at("group"));
  const auto& g = require_gog(t);
  auto k = g.kernel_of_action();
  Outcome o;
  o.verdict = to_string(k.kind);
  json ratios = json::array();
  for (const auto& r : k.stable_letter_ratios) {
    ratios.push_back({{"edge", r.edge}, {"m", r.m.get_str()}, {"n", r.n.get_str()}, {"unimodular", r.unimodular}});
  }
  o.certificate = {{"stable_letter_ratios", ratios}};
  if (k.kind == KernelOfAction::Kind::Cyclic) {
    o.certificate["generator"] = t.format(k.generator);
    o.certificate["base_vector"] = to_string(k.base_vector);
    o.certificate["power"] = k.k.get_str();
  }
  if (!k.note.empty()) o.certificate["note"] = k.note;
  if (k.kind == KernelOfAction::Kind::Unknown) o.code = kUnknown;
  return o;
}

Outcome cmd_check_class(const json& in) {
  Outcome o;
  auto graph_report = [&](const SimplicialGraph& gr) {
    bool coherent = check_droms_coherent(gr);
    o.verdict = coherent ? "coherent" : "not-coherent";
    o.certificate = {{"coherent", coherent}, {"dimension", dimension(gr)}, {"vertices", gr.vertex_count()},
                     {"edges", gr.edges().size()}};
  };
  if (in.contains("graph")) {
    graph_report(fixtures::graph(in.at("graph").get<std::string>()));
    return o;
  }
  Target t = target_from_source(in.at("group"));
  if (t.model->as_raag()) {
    graph_report(t.model->as_raag()->graph());
    return o;
  }
  const auto& g = require_gog(t);
  json loops = json::array();
  for (const auto& r : g.unimodular_loop_check()) {
    loops.push_back({{"edge", r.edge}, {"m", r.m.get_str()}, {"n", r.n.get_str()},
                     {"comparable", r.comparable}, {"unimodular", r.unimodular}});
  }
  bool isolated = g.has_isolated_edge_groups();
  o.verdict = isolated ? "isolated" : "not-isolated";
  o.certificate = {{"isolated_edge_groups", isolated}, {"loops", loops},
                   {"vertices", g.vertices().size()}, {"edges", g.edges().size()}};
  return o;
}

using Command = std::function<Outcome(const json&)>;

const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> table{
      {"nf", cmd_nf},
      {"wp", cmd_wp},
      {"conj", cmd_conj},
      {"multi-conj", cmd_multi_conj},
      {"member", cmd_member},
      {"separate", cmd_separate},
      {"fiber", cmd_fiber},
      {"classify", cmd_classify},
      {"coset-cover", cmd_coset_cover},
      {"bs-h1", cmd_bs_h1},
      {"bs-power-identity", cmd_bs_power_identity},
      {"bs-power-in-n", cmd_bs_power_in_n},
      {"tc", cmd_tc},
      {"rs", cmd_rs},
      {"homs", cmd_homs},
      {"wpd", cmd_wpd},
      {"kernel-of-action", cmd_kernel},
      {"check-class", cmd_check_class},
  };
  return table;
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

json make_report(const std::string& command, const json& inputs, const Outcome& o, const Globals& g) {
  json r;
  r["command"] = command;
  r["inputs"] = inputs;
  r["inputs_digest"] = "fnv1a64:" + hex64(fnv1a64(command + "\n" + inputs.dump()));
  r["verdict"] = o.verdict;
  r["certificate"] = o.certificate;
  r["budget"] = {{"steps", g.steps}, {"degree", g.degree}, {"length", g.length}};
  r["consumed"] = o.consumed;
  return r;
}

void print_human(std::ostream& out, const json& r) {
  out << r["command"].get<std::string>() << ": " << r["verdict"].get<std::string>() << "\n";
  for (const auto& [k, v] : r["certificate"].items()) {
    if (k == "csv") {
      out << v.get<std::string>();
      continue;
    }
    out << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
  for (const auto& [k, v] : r["consumed"].items()) out << "  [" << k << "] " << v.dump() << "\n";
}

// ---------------------------------------------------------------------------
// verify: certificate commands are re-checked directly, the rest by
// recomputation and comparison.

bool fail(std::string& why, std::string message) {
  why = std::move(message);
  return false;
}

bool verify_report(const json& r, std::string& why) {
  const std::string cmd = r.at("command");
  const json& in = r.at("inputs");
  const json& cert = r.at("certificate");
  const std::string verdict = r.at("verdict");

  if (cmd == "member" && (verdict == "yes" || verdict == "no")) {
    Target t = target_from_source(in.at("group"));
    auto h = t.parse_list(in.at("sub"));
    Word g = t.parse(in.at("word").get<std::string>());
    if (verdict == "yes") {
      Word wa = abstract_from_json(cert.at("witness_generators"));
      if (!verify_membership_witness(*t.model, h, g, wa)) return fail(why, "witness does not reproduce g");
      if (!t.model->equal(t.parse(cert.at("witness")), g)) return fail(why, "witness word differs from g");
      return true;
    }
    SeparationCertificate c;
    c.assignment = perm_from_json(cert);
    if (!verify_separation(t.model->presentation(), h, g, c)) return fail(why, "separating quotient does not check");
    return true;
  }
  if (cmd == "separate" && verdict == "separated") {
    FinitePresentation p = presentation_from_source(in.at("presentation"));
    std::vector<Word> h;
    for (const auto& s : split_list(in.at("sub"))) h.push_back(p.alphabet.parse(s));
    SeparationCertificate c;
    c.assignment = perm_from_json(cert);
    if (!verify_separation(p, h, p.alphabet.parse(in.at("word").get<std::string>()), c)) return fail(why, "separating quotient does not check");
    return true;
  }
  if (cmd == "multi-conj" && verdict == "yes") {
    Target t = target_from_source(in.at("group"));
    Word g = t.parse(cert.at("witness"));
    for (const auto& [u, v] : parse_pairs(t, in)) {
      if (!t.word_problem(g * u * g.inverse() * v.inverse())) return fail(why, "witness fails on a pair");
    }
    return true;
  }
  if (cmd == "tc" && verdict == "closed") {
    FinitePresentation p = presentation_from_source(in.at("presentation"));
    std::vector<Word> h;
    for (const auto& s : split_list(in.at("sub"))) h.push_back(p.alphabet.parse(s));
    why = validate_coset_table(p, h, CosetTable::from_json(cert.at("table").dump()));
    return why.empty();
  }
  if (cmd == "homs") {
    FinitePresentation p = presentation_from_source(in.at("presentation"));
    std::set<std::vector<Perm>> seen;
    for (const auto& a : cert.at("assignments")) {
      auto pa = perm_from_json(a);
      if (!is_homomorphism(p, pa)) return fail(why, "an assignment is not a homomorphism");
      if (!seen.insert(pa.images).second) return fail(why, "duplicate assignment");
    }
    return true;
  }
  if (cmd == "fiber") {
    SubdirectInput s = subdirect_from_source(in.at("subdirect"));
    const int side = in.at("side");
    for (const auto& f : cert.at("found")) {
      Word w = s.names.parse(f.at("word").get<std::string>());
      if (!s.factor(3 - side).word_problem(project(s, 3 - side, w))) return fail(why, "off-side projection is nontrivial");
      if (s.factor(side).word_problem(project(s, side, w))) return fail(why, "on-side projection is trivial");
    }
    return true;
  }
  if (cmd == "coset-cover") {
    Target t = target_from_source(in.at("group"));
    auto cosets = t.parse_list(in.at("cosets"));
    Word c = t.parse(in.at("c"));
    auto hgens = t.parse_list(in.at("sub"));
    for (const auto& e : t.parse_list(in.at("extra"))) hgens.push_back(e);
    for (const auto& f : cert.at("factorisations")) {
      Word g = t.parse(f.at("g")), h = t.parse(f.at("h"));
      long i = f.at("power");
      Word cpow;
      for (long k = 0; k < std::labs(i); ++k) cpow *= i > 0 ? c : c.inverse();
      Word rhs = h * cosets.at(f.at("coset").get<std::size_t>()) * cpow;
      if (!t.model->equal(g, rhs)) return fail(why, "factorisation does not multiply out");
      auto d = t.model->decide_membership(hgens, h);
      if (d && !*d) return fail(why, "h is not in the subgroup");
    }
    // fall through to recomputation for the verdict itself
  }
  if (cmd == "kernel-of-action" && verdict == "cyclic") {
    Target t = target_from_source(in.at("group"));
    Word k = t.parse(cert.at("generator"));
    for (std::uint32_t s = 0; s < t.alphabet().size(); ++s) {
      Word sg = Word::generator(s);
      Word conj = sg.inverse() * k * sg;
      if (!t.word_problem(conj * k.inverse()) && !t.word_problem(conj * k)) return fail(why, "generator is not normalised");
    }
  }

  auto it = commands().find(cmd);
  if (it == commands().end()) return fail(why, "unknown command '" + cmd + "'");
  Outcome o = it->second(in);
  if (o.verdict != verdict) return fail(why, "recomputed verdict '" + o.verdict + "' differs");
  if (o.certificate != cert) return fail(why, "recomputed certificate differs");
  return true;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"cgt: normal forms, word problems and subgroup procedures for RAAGs, graphs of groups and BS(m,n)"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals G;
  app.add_option("--budget-steps", G.steps, "Step budget for searches")->capture_default_str();
  app.add_option("--budget-degree", G.degree, "Largest permutation degree for quotient searches")->capture_default_str();
  app.add_option("--budget-length", G.length, "Word length / radius budget")->capture_default_str();
  app.add_flag("--json", G.json_out, "Print the run report as JSON");
  app.add_flag("--timing", G.timing, "Include wall time in the report");
  app.add_option("--fixture", G.fixture, "Built-in group: P4, P4', F2, F2', Z, Z2, P4_SPLITTING, TUBULAR_AB, TUBULAR_TWO, BS(m,n)");
  app.add_option("--group", G.group_file, "Group JSON file ({\"raag\":..} | {\"gog\":..} | {\"product\":[..]})");
  app.add_option("--presentation", G.presentation_file, "Presentation JSON file");

  json in = json::object();
  std::string word, u, v, sub, extra, cosets, c = "1", xi, gxi, subdirect_arg, graph, report_file;
  bool as_gog = false, csv = false;
  std::vector<std::string> pairs;
  std::size_t radius = 0, max_cosets = 1000, degree = 2, witness_budget = 3;
  int side = 1;
  long m = 0, n = 0;
  unsigned bigm = 0, k = 0;

  auto* nf = app.add_subcommand("nf", "Normal form of a word");
  nf->add_option("word", word)->required();
  nf->add_flag("--as-gog", as_gog, "Use the graph-of-groups model for BS(m,n)");
  auto* wp = app.add_subcommand("wp", "Word problem");
  wp->add_option("word", word)->required();
  wp->add_flag("--as-gog", as_gog, "Use the graph-of-groups model for BS(m,n)");
  auto* conj = app.add_subcommand("conj", "Conjugacy in a RAAG");
  conj->add_option("u", u)->required();
  conj->add_option("v", v)->required();
  auto* mconj = app.add_subcommand("multi-conj", "Simultaneous conjugacy of pairs in a RAAG");
  mconj->add_option("--pair", pairs, "u;v")->required();
  auto* member = app.add_subcommand("member", "Membership semi-decision");
  member->add_option("--sub", sub, "Comma-separated subgroup generators")->required();
  member->add_option("word", word)->required();
  auto* sep = app.add_subcommand("separate", "Separate g from a subgroup in a finite quotient");
  sep->add_option("--sub", sub, "Comma-separated subgroup generators")->required();
  sep->add_option("word", word)->required();
  auto* fiber = app.add_subcommand("fiber", "Search S for elements of L1 or L2");
  fiber->add_option("--subdirect", subdirect_arg, "Fixture name or JSON file")->required();
  fiber->add_option("--side", side)->check(CLI::Range(1, 2));
  fiber->add_option("--radius", radius);
  auto* classify = app.add_subcommand("classify", "Evidence-backed structure report for S <= G1 x G2");
  classify->add_option("--subdirect", subdirect_arg, "Fixture name or JSON file")->required();
  classify->add_option("--radius", radius, "Fiber search radius (default 3)");
  classify->add_option("--max-cosets", max_cosets)->capture_default_str();
  auto* cover = app.add_subcommand("coset-cover", "Check G = U H z_j <c> on a ball");
  cover->add_option("--sub", sub)->required();
  cover->add_option("--extra", extra);
  cover->add_option("--cosets", cosets)->required();
  cover->add_option("--c", c);
  cover->add_option("--radius", radius);
  cover->add_option("--witness-budget", witness_budget)->capture_default_str();
  auto* h1 = app.add_subcommand("bs-h1", "Image of an element of <<x>> in Z[1/mn]");
  h1->add_option("m", m)->required();
  h1->add_option("n", n)->required();
  h1->add_option("xi", xi, "[[i,sign],...]")->required();
  auto* pid = app.add_subcommand("bs-power-identity", "Check the conjugation-power identity");
  pid->add_option("m", m)->required();
  pid->add_option("n", n)->required();
  pid->add_option("M", bigm)->required();
  pid->add_option("k", k)->required();
  pid->add_option("--g", gxi, "Stabilising element as [[i,sign],...]");
  auto* pin = app.add_subcommand("bs-power-in-n", "Exponent q with x^q in N");
  pin->add_option("m", m)->required();
  pin->add_option("n", n)->required();
  pin->add_option("M", bigm)->required();
  pin->add_option("k", k)->required();
  auto* tc = app.add_subcommand("tc", "Todd-Coxeter coset enumeration");
  tc->add_option("--sub", sub);
  tc->add_option("--max-cosets", max_cosets)->capture_default_str();
  tc->add_flag("--csv", csv, "Include the coset table as CSV");
  auto* rs = app.add_subcommand("rs", "Reidemeister-Schreier presentation of a finite-index subgroup");
  rs->add_option("--sub", sub);
  rs->add_option("--max-cosets", max_cosets)->capture_default_str();
  auto* homs = app.add_subcommand("homs", "Enumerate homomorphisms to S_n");
  homs->add_option("--degree", degree)->capture_default_str();
  auto* wpd = app.add_subcommand("wpd", "Build a WPD candidate and check it");
  wpd->add_option("--radius", radius);
  app.add_subcommand("kernel-of-action", "Kernel of the action on the Bass-Serre tree");
  auto* cls = app.add_subcommand("check-class", "Coherence, dimension, isolated edge groups, unimodular loops");
  cls->add_option("--graph", graph, "Graph fixture: P4, C4, C5, K4, TRIANGLE, PATH5, STAR4, GEM");
  auto* verify = app.add_subcommand("verify", "Re-check the certificate in a JSON run report");
  verify->add_option("report", report_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kMalformed;
  }

  const auto t0 = std::chrono::steady_clock::now();
  CLI::App* sc = app.get_subcommands().front();
  const std::string cmd = sc->get_name();
  try {
    if (cmd == "verify") {
      json r = parse_json(read_file(report_file), "report");
      std::string why;
      bool ok = verify_report(r, why);
      out << (ok ? "verified" : "verification failed: " + why) << "\n";
      return ok ? kOk : kVerifyFailed;
    }

    const bool wants_radius_default = radius == 0;
    // Sources are resolved before the braced initialisers below: an exception
    // thrown from inside one leaks with GCC 11.
    json src;
    if (cmd == "nf" || cmd == "wp") {
      src = group_source(G, as_gog);
    } else if (cmd == "conj" || cmd == "multi-conj") {
      src = group_source(G, false);
    } else if (cmd == "member" || cmd == "coset-cover" || cmd == "wpd" || cmd == "kernel-of-action" ||
               (cmd == "check-class" && graph.empty())) {
      src = group_source(G, true);
    } else if (cmd == "separate" || cmd == "tc" || cmd == "rs" || cmd == "homs") {
      src = presentation_source(G);
    } else if (cmd == "fiber" || cmd == "classify") {
      src = subdirect_source(subdirect_arg);
    }
    if (cmd == "nf" || cmd == "wp") {
      in = {{"group", src}, {"word", word}};
    } else if (cmd == "conj") {
      in = {{"group", src}, {"u", u}, {"v", v}};
    } else if (cmd == "multi-conj") {
      json ps = json::array();
      for (const auto& p : pairs) {
        auto pos = p.find(';');
        if (pos == std::string::npos) throw Error(ErrorKind::MalformedInput, "--pair expects 'u;v'");
        ps.push_back({p.substr(0, pos), p.substr(pos + 1)});
      }
      in = {{"group", src}, {"pairs", ps}, {"radius", G.length}};
    } else if (cmd == "member") {
      in = {{"group", src}, {"sub", sub}, {"word", word},
            {"length", G.length}, {"degree", G.degree}, {"steps", G.steps}};
    } else if (cmd == "separate") {
      in = {{"presentation", src}, {"sub", sub}, {"word", word},
            {"degree", G.degree}, {"steps", G.steps}};
    } else if (cmd == "fiber") {
      in = {{"subdirect", src}, {"side", side}, {"radius", wants_radius_default ? 3 : radius}};
    } else if (cmd == "classify") {
      in = {{"subdirect", src}, {"radius", wants_radius_default ? 3 : radius},
            {"max_cosets", max_cosets}};
    } else if (cmd == "coset-cover") {
      in = {{"group", src}, {"sub", sub}, {"extra", extra}, {"cosets", cosets}, {"c", c},
            {"radius", wants_radius_default ? 3 : radius}, {"witness_budget", witness_budget}};
    } else if (cmd == "bs-h1") {
      in = {{"m", m}, {"n", n}, {"xi", xi}};
    } else if (cmd == "bs-power-identity") {
      in = {{"m", m}, {"n", n}, {"M", bigm}, {"k", k}};
      if (!gxi.empty()) in["g"] = gxi;
    } else if (cmd == "bs-power-in-n") {
      in = {{"m", m}, {"n", n}, {"M", bigm}, {"k", k}};
    } else if (cmd == "tc") {
      in = {{"presentation", src}, {"sub", sub}, {"max_cosets", max_cosets}, {"csv", csv}};
    } else if (cmd == "rs") {
      in = {{"presentation", src}, {"sub", sub}, {"max_cosets", max_cosets}};
    } else if (cmd == "homs") {
      in = {{"presentation", src}, {"degree", degree}, {"steps", G.steps}};
    } else if (cmd == "wpd") {
      in = {{"group", src}, {"radius", wants_radius_default ? 4 : radius}};
    } else if (cmd == "kernel-of-action") {
      in = {{"group", src}};
    } else if (cmd == "check-class") {
      if (!graph.empty()) {
        in = {{"graph", graph}};
      } else {
        in = {{"group", src}};
      }
    }

    Outcome o = commands().at(cmd)(in);
    json report = make_report(cmd, in, o, G);
    if (G.timing) {
      report["wall_time_ms"] =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
    if (G.json_out) {
      out << report.dump(2) << "\n";
    } else {
      print_human(out, report);
    }
    return o.code;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return e.kind() == ErrorKind::Budget ? kUnknown : kMalformed;
  } catch (const json::exception& e) {
    err << "error (malformed input): " << e.what() << "\n";
    return kMalformed;
  }
}

}  // namespace cgt::cli
