#include "bohm/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "bohm/catalog.hpp"
#include "bohm/clocked_trees.hpp"
#include "bohm/compare.hpp"

namespace bohm::cli {

namespace detail {
const std::map<std::string, std::string>& golden_table();
}

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::size_t depth = kDefaultDepth;
  std::size_t fuel = kDefaultFuel;
  bool atomic = false;
  std::string semantics;
  std::string defs_file;
  bool json = false;
  bool dot = false;
  bool closed_only = false;
  bool cyclic = false;
};

Semantics semantics_from(const std::string& name) {
  if (name == "bt") return Semantics::Bohm;
  if (name == "llt") return Semantics::LevyLongo;
  if (name == "bet") return Semantics::Berarducci;
  throw UsageError("unknown semantics '" + name + "' (expected bt, llt or bet)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string join_counts(const std::vector<std::size_t>& counts) {
  std::vector<std::string> parts;
  for (auto c : counts) parts.push_back(std::to_string(c));
  return join(parts, " ");
}

std::string simplicity_name(SimplicityStatus s) {
  switch (s) {
    case SimplicityStatus::Simple: return "simple";
    case SimplicityStatus::NotSimple: return "not simple";
    case SimplicityStatus::Unknown: return "unknown";
  }
  return "unknown";
}

Term prelude_term(const std::string& text) { return parse(text, prelude()); }

// ---- repro items -------------------------------------------------------------

std::string repro_spine_clocks() {
  std::ostringstream out;
  for (const char* text : {"Y0 f", "Y1 f"})
    out << text << ": " << join_counts(annotation_counts(clocked_bt(prelude_term(text), 6))) << '\n';
  return out.str();
}

std::string repro_bohm_sequence() {
  std::ostringstream out;
  for (int n = 2; n <= 6; ++n) {
    std::string text = "Y" + std::to_string(n) + " x";
    Term t = prelude_term(text);
    out << text << ": " << join_counts(annotation_counts(compact_cyclic(t))) << ' '
        << simplicity_name(check_simple(t).status) << '\n';
  }
  return out.str();
}

std::string repro_scott_reducts() {
  std::ostringstream out;
  for (int n = 2; n <= 6; ++n) {
    std::string text = "theta theta";
    for (int i = 0; i < n - 2; ++i) text += " S";
    text += " I x";
    Term t = prelude_term(text);
    out << text << ": " << join_counts(annotation_counts(compact_cyclic(t))) << ' '
        << simplicity_name(check_simple(t).status) << '\n';
  }
  return out.str();
}

std::string clock_at(const ClockTree& tree, const TreePath& path) {
  auto id = tree.at(path);
  if (!id || !tree.node(*id).clock) return "?";
  return std::to_string(tree.node(*id).clock->count);
}

std::string repro_plotkin_clocks() {
  std::ostringstream out;
  Term y1 = prelude_term("Y1");
  auto a = clocked_bt(plotkin_a(y1), 5);
  std::set<std::size_t> seen;
  for (auto c : annotation_counts(a)) seen.insert(c);
  out << "A_Y1 clocks to depth 5: " << join_counts({seen.begin(), seen.end()}) << '\n';
  auto b = clocked_bt(plotkin_b(y1), 5);
  std::vector<std::string> left, right;
  TreePath spine;
  for (int k = 0; k < 4; ++k) {
    left.push_back(clock_at(b, spine));
    TreePath r = spine;
    r.push_back(1);
    right.push_back(clock_at(b, r));
    spine.push_back(0);
  }
  out << "B_Y1 left spine: " << join(left, " ") << '\n';
  out << "B_Y1 right children: " << join(right, " ") << '\n';
  return out.str();
}

std::string repro_plotkin_zero_spine() {
  std::ostringstream out;
  for (const char* y : {"Y0", "Y1"}) {
    std::vector<std::string> clocks;
    for (const auto& c : spine_right_clocks({plotkin_bprime(prelude_term(y)), "f"}, 8))
      clocks.push_back(c.clock ? std::to_string(*c.clock) : "?");
    out << "B'_" << y << " clocks at (12)*2 to depth 8: " << join(clocks, " ") << '\n';
  }
  return out.str();
}

std::string repro_enumerators_one_two() {
  std::ostringstream out;
  for (const char* e : {"E1", "E2"})
    out << e << ": " << join_counts(annotation_counts(compact_cyclic(prelude_term(e)))) << '\n';
  auto v = discriminate(prelude_term("E1"), prelude_term("E2"));
  out << "E1 vs E2: " << conclusion_name(v.conclusion) << '\n';
  return out.str();
}

std::string repro_enumerator_three() {
  std::ostringstream out;
  out << "E3: " << join_counts(annotation_counts(compact_cyclic(prelude_term("E3")))) << '\n';
  auto v = discriminate(prelude_term("E1"), prelude_term("E3"));
  out << "E1 vs E3: " << conclusion_name(v.conclusion) << '\n';
  return out.str();
}

std::vector<Position> root_steps(const Term& t) {
  auto tree = compact_cyclic(t, kDefaultDepth, kDefaultFuel, true);
  if (!tree.root().clock) return {};
  return *tree.root().clock->steps;
}

std::string steps_string(const std::vector<Position>& steps) {
  Clock c;
  c.count = steps.size();
  c.steps = steps;
  return clock_string(c);
}

std::string repro_atomic_lists() {
  std::ostringstream out;
  auto a = root_steps(prelude_term("Y2 x"));
  auto b = root_steps(prelude_term("theta theta I x"));
  out << "Y2 x: " << steps_string(a) << '\n';
  out << "theta theta I x: " << steps_string(b) << '\n';
  bool ab = subseq_le(a, b), ba = subseq_le(b, a);
  out << "subsequence order: "
      << (ab && ba ? "equal" : ab ? "first below second" : ba ? "second below first" : "incomparable") << '\n';
  DiscriminateConfig config;
  config.atomic = true;
  auto v = discriminate(prelude_term("Y2"), prelude_term("U2"), config);
  out << "Y2 vs U2 (atomic): " << conclusion_name(v.conclusion) << '\n';
  return out.str();
}

std::string repro_scott_composite() {
  std::ostringstream out;
  auto steps = root_steps(Term::apply(scott_composite_reduct({2, 0, 1}), Term::free("x")));
  out << "clock: " << steps_string(steps) << '\n';
  out << "rise-fall patterns: " << rise_fall_count(steps) << '\n';
  return out.str();
}

std::string repro_levy_longo_loops() {
  std::ostringstream out;
  auto defs = parse_definitions("P = \\x y.x x; Q = \\x y z.x x;");
  for (const char* text : {"P P", "Q Q"}) {
    Term t = parse(text, defs);
    auto llt = compact_cyclic(t, kDefaultDepth, kDefaultFuel, false, Semantics::LevyLongo);
    auto bt = clocked_bt(t);
    std::string root = bt.root().kind == NodeKind::Bottom && !bt.root().assumed ? "⊥" : "not ⊥";
    out << text << ": llt clocks " << join_counts(annotation_counts(llt)) << ", bt " << root << '\n';
  }
  return out.str();
}

std::string repro_generating_vectors() {
  std::ostringstream out;
  for (std::size_t n = 0; n <= 4; ++n) {
    auto order = reducing_fpc_order(gvector(prelude_term("Y1"), n));
    out << "gvector Y1 " << n << ": " << (order ? std::to_string(*order) : "none") << '\n';
  }
  return out.str();
}

using ReproFn = std::string (*)();

const std::vector<std::pair<std::string, ReproFn>>& repro_table() {
  static const std::vector<std::pair<std::string, ReproFn>> table = {
      {"fig3", repro_spine_clocks},
      {"ex4-19", repro_bohm_sequence},
      {"ex4-20", repro_scott_reducts},
      {"fig4", repro_plotkin_clocks},
      {"lemma5-3", repro_plotkin_zero_spine},
      {"fig7", repro_enumerators_one_two},
      {"fig8", repro_enumerator_three},
      {"sec7-atomic", repro_atomic_lists},
      {"ex7-4", repro_scott_composite},
      {"ex8-3", repro_levy_longo_loops},
      {"thm3-8", repro_generating_vectors},
  };
  return table;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

// ---- commands ----------------------------------------------------------------

struct Command {
  Flags flags;
  std::string_view input;
  DefinitionTable defs = prelude();
  std::ostringstream out;
  std::ostringstream err;

  Term load(const std::string& text) const {
    return parse(text == "-" ? std::string(input) : text, defs);
  }
};

int tree_command(Command& c, Semantics semantics, const std::string& text) {
  const Flags& f = c.flags;
  if (!f.semantics.empty()) semantics = semantics_from(f.semantics);
  Term t = c.load(text);
  TreeOptions options;
  options.depth = f.depth;
  options.fuel = f.fuel;
  options.atomic = f.atomic;
  options.cyclic = f.cyclic || f.closed_only;
  ClockTree tree = build_tree(t, semantics, options);
  if (tree.root().kind == NodeKind::Unknown && tree.root().reason == UnknownReason::Fuel) {
    c.err << "fuel exhausted before the root was resolved\n";
    return kExhausted;
  }
  if (f.closed_only && !tree.closed()) {
    c.err << "tree is not closed within the given depth and fuel\n";
    return kExhausted;
  }
  if (f.json) c.out << tree_json(tree).dump(2) << '\n';
  else if (f.dot) c.out << render_dot(tree);
  else c.out << render_text(tree);
  return kOk;
}

int compare_command(Command& c, const std::string& m_text, const std::string& n_text, std::size_t bound,
                    const std::string& certify, const std::vector<std::string>& m_reducts,
                    const std::vector<std::string>& n_reducts) {
  DiscriminateConfig config;
  config.depth = c.flags.depth;
  config.fuel = c.flags.fuel;
  config.atomic = c.flags.atomic;
  config.reduct_bound = bound;
  if (!certify.empty()) {
    if (certify != "plotkin") throw UsageError("unknown certificate '" + certify + "' (expected plotkin)");
    config.certificate = plotkin_certificate();
  }
  for (const auto& r : m_reducts) config.m_reducts.push_back(c.load(r));
  for (const auto& r : n_reducts) config.n_reducts.push_back(c.load(r));
  Verdict v = discriminate(c.load(m_text), c.load(n_text), config);
  if (c.flags.json) {
    c.out << verdict_json(v).dump(2) << '\n';
  } else {
    const Evidence& e = v.evidence;
    c.out << conclusion_name(v.conclusion);
    if (v.justification != Justification::None) c.out << " / " << justification_name(v.justification);
    c.out << '\n';
    c.out << "  depth: " << e.depth << '\n';
    if (e.level) c.out << "  level: " << *e.level << '\n';
    c.out << "  closed trees: " << (e.m_closed ? "yes" : "no") << ", " << (e.n_closed ? "yes" : "no") << '\n';
    if (e.witness) c.out << "  witness: " << path_string(*e.witness) << '\n';
    if (e.m_reduct) c.out << "  simple reduct of first: " << pretty(*e.m_reduct) << '\n';
    if (e.n_reduct) c.out << "  simple reduct of second: " << pretty(*e.n_reduct) << '\n';
    if (e.reducts_checked) c.out << "  reducts checked: " << e.reducts_checked << '\n';
    if (e.improver) c.out << "  possible improver: " << pretty(*e.improver) << '\n';
    if (!e.note.empty()) c.out << "  note: " << e.note << '\n';
  }
  return v.conclusion == Conclusion::Inconvertible ? kOk : kInconclusive;
}

int catalog_command(Command& c, const std::vector<std::string>& words) {
  if (words.empty()) {
    if (c.flags.json) {
      auto list = nlohmann::json::array();
      for (const auto& e : catalog_entries())
        list.push_back({{"name", e.name}, {"params", e.params}, {"summary", e.summary}});
      c.out << list.dump(2) << '\n';
    } else {
      for (const auto& e : catalog_entries()) {
        std::string head = e.name + (e.params.empty() ? "" : " " + e.params);
        c.out << head << std::string(head.size() < 28 ? 28 - head.size() : 1, ' ') << e.summary << '\n';
      }
    }
    return kOk;
  }
  std::vector<std::string> args(words.begin() + 1, words.end());
  Term t = catalog(words.front(), args);
  if (c.flags.json)
    c.out << nlohmann::json({{"name", words.front()}, {"args", args}, {"term", pretty(t)}}).dump(2) << '\n';
  else
    c.out << pretty(t) << '\n';
  return kOk;
}

int check_simple_command(Command& c, const std::string& text) {
  auto report = check_simple(c.load(text), c.flags.depth, c.flags.fuel);
  std::string reason = report.reason ? (*report.reason == UnknownReason::Fuel ? "fuel" : "depth") : "";
  if (c.flags.json) {
    nlohmann::json j;
    j["status"] = simplicity_name(report.status);
    j["witness_node"] = report.witness_node ? nlohmann::json(path_string(*report.witness_node)) : nullptr;
    j["witness_redex"] = report.witness_redex ? nlohmann::json(report.witness_redex->str()) : nullptr;
    j["reason"] = report.reason ? nlohmann::json(reason) : nullptr;
    j["depth_checked"] = report.depth_checked;
    c.out << j.dump(2) << '\n';
  } else {
    c.out << simplicity_name(report.status);
    if (report.status == SimplicityStatus::NotSimple)
      c.out << ": redex at " << report.witness_redex->str() << " on the way to node "
            << path_string(*report.witness_node) << " is neither linear nor call-by-value";
    if (report.status == SimplicityStatus::Unknown) c.out << " (" << reason << ")";
    c.out << '\n';
  }
  return report.status == SimplicityStatus::Unknown ? kExhausted : kOk;
}

int repro_command(Command& c, const std::string& id) {
  std::vector<std::string> ids;
  if (id == "all") ids = repro_ids();
  else ids.push_back(id);
  int code = kOk;
  auto reports = nlohmann::json::array();
  for (const auto& item : ids) {
    ReproReport r;
    try {
      r = repro(item);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (!r.match) code = kExhausted;
    if (c.flags.json) {
      reports.push_back({{"id", r.id}, {"match", r.match}, {"computed", split_lines(r.computed)}});
      continue;
    }
    c.out << "== " << r.id << (r.match ? " ok" : " DIFF") << '\n' << r.computed;
    if (!r.match) c.out << r.diff;
  }
  if (c.flags.json) c.out << reports.dump(2) << '\n';
  return code;
}

}  // namespace

const std::vector<std::string>& repro_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [id, fn] : repro_table()) out.push_back(id);
    return out;
  }();
  return ids;
}

const std::string& golden(const std::string& id) { return detail::golden_table().at(id); }

ReproReport repro(const std::string& id) {
  const auto& table = repro_table();
  auto it = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.first == id; });
  if (it == table.end()) throw std::invalid_argument("unknown repro id '" + id + "'");
  ReproReport r;
  r.id = id;
  r.computed = it->second();
  r.golden = golden(id);
  r.match = r.computed == r.golden;
  if (!r.match) r.diff = unified_diff(r.golden, r.computed, "golden/" + id, "computed/" + id);
  return r;
}

std::string unified_diff(const std::string& expected, const std::string& actual, const std::string& expected_name,
                         const std::string& actual_name) {
  if (expected == actual) return "";
  auto a = split_lines(expected);
  auto b = split_lines(actual);
  // Longest common subsequence table, filled from the back.
  std::vector<std::vector<std::size_t>> lcs(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
  for (std::size_t i = a.size(); i-- > 0;)
    for (std::size_t j = b.size(); j-- > 0;)
      lcs[i][j] = a[i] == b[j] ? lcs[i + 1][j + 1] + 1 : std::max(lcs[i + 1][j], lcs[i][j + 1]);
  std::ostringstream out;
  out << "--- " << expected_name << "\n+++ " << actual_name << '\n';
  out << "@@ -" << (a.empty() ? 0 : 1) << ',' << a.size() << " +" << (b.empty() ? 0 : 1) << ',' << b.size()
      << " @@\n";
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (i < a.size() && j < b.size() && a[i] == b[j]) {
      out << ' ' << a[i++] << '\n';
      ++j;
    } else if (i < a.size() && (j == b.size() || lcs[i + 1][j] >= lcs[i][j + 1])) {
      out << '-' << a[i++] << '\n';
    } else {
      out << '+' << b[j++] << '\n';
    }
  }
  return out.str();
}

Result run(const std::vector<std::string>& args, std::string_view input) {
  Command c;
  c.input = input;
  Flags& f = c.flags;

  CLI::App app{"Clocked Böhm, Lévy-Longo and Berarducci trees of lambda terms", "bohmclock"};
  app.require_subcommand(1);
  app.fallthrough();

  auto common = [&](CLI::App* sub) {
    sub->add_option("--depth", f.depth, "tree depth bound")->capture_default_str();
    sub->add_option("--fuel", f.fuel, "head-reduction steps per node")->capture_default_str();
    sub->add_flag("--atomic", f.atomic, "record the position of every head step");
    sub->add_option("--defs", f.defs_file, "definitions file with lines `name = term;`");
    sub->add_flag("--json", f.json, "machine-readable output");
  };

  std::string term_text, second_text, repro_id = "all", certify;
  std::size_t bound = 2000;
  std::vector<std::string> words, m_reducts, n_reducts;

  std::map<std::string, Semantics> tree_commands = {
      {"bt", Semantics::Bohm}, {"llt", Semantics::LevyLongo}, {"bet", Semantics::Berarducci}};
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, sem] : tree_commands) {
    std::string what = name == "bt" ? "Böhm" : name == "llt" ? "Lévy-Longo" : "Berarducci";
    auto* sub = app.add_subcommand(name, "print the clocked " + what + " tree of a term");
    common(sub);
    sub->add_option("--semantics", f.semantics, "bt, llt or bet");
    sub->add_flag("--dot", f.dot, "Graphviz output");
    sub->add_flag("--cyclic", f.cyclic, "fold repeated subtrees into back edges");
    sub->add_flag("--closed-only", f.closed_only, "fail unless the folded tree is closed");
    sub->add_option("term", term_text, "term, or - for standard input")->required();
    subs[name] = sub;
  }
  auto* compare = app.add_subcommand("compare", "try to prove two terms inconvertible");
  common(compare);
  compare->add_option("--bound", bound, "reducts enumerated in the general step")->capture_default_str();
  compare->add_option("--certify", certify, "certificate for the general step (plotkin)");
  compare->add_option("--first-reduct", m_reducts, "candidate simple reduct of the first term");
  compare->add_option("--second-reduct", n_reducts, "candidate simple reduct of the second term");
  compare->add_option("first", term_text, "first term")->required();
  compare->add_option("second", second_text, "second term")->required();
  auto* cat = app.add_subcommand("catalog", "list catalog entries or print one");
  cat->add_flag("--json", f.json, "machine-readable output");
  cat->add_option("entry", words, "entry name followed by its parameters");
  auto* rep = app.add_subcommand("repro", "recompute a reproduction item and diff it against its golden");
  rep->add_flag("--json", f.json, "machine-readable output");
  rep->add_option("id", repro_id, "item id or all")->capture_default_str();
  auto* simple = app.add_subcommand("check-simple", "check whether a term is simple");
  common(simple);
  simple->add_option("term", term_text, "term, or - for standard input")->required();

  Result result;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    int code = app.exit(e, out, err);
    result.out = out.str();
    result.err = err.str();
    result.code = code == 0 ? kOk : kUsage;
    return result;
  }

  int code = kOk;
  try {
    if (f.json && f.dot) throw UsageError("--json and --dot are exclusive");
    if (!f.defs_file.empty()) c.defs = parse_definitions(read_file(f.defs_file), prelude());
    for (const auto& [name, sem] : tree_commands)
      if (subs[name]->parsed()) code = tree_command(c, sem, term_text);
    if (compare->parsed())
      code = compare_command(c, term_text, second_text, bound, certify, m_reducts, n_reducts);
    if (cat->parsed()) code = catalog_command(c, words);
    if (rep->parsed()) code = repro_command(c, repro_id);
    if (simple->parsed()) code = check_simple_command(c, term_text);
  } catch (const ParseError& e) {
    c.err << "parse error: " << e.what() << '\n';
    code = kUsage;
  } catch (const UsageError& e) {
    c.err << e.what() << '\n';
    code = kUsage;
  } catch (const std::invalid_argument& e) {
    c.err << e.what() << '\n';
    code = kUsage;
  }
  result.out = c.out.str();
  result.err = c.err.str();
  result.code = code;
  return result;
}

}  // namespace bohm::cli
