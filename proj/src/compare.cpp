#include "bohm/compare.hpp"

#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace bohm {

std::string relation_name(Relation r) {
  switch (r) {
    case Relation::LE: return "le";
    case Relation::EQ: return "eq";
    case Relation::GE: return "ge";
    case Relation::SubseqLE: return "subseq-le";
    case Relation::ListEQ: return "list-eq";
    case Relation::SubseqGE: return "subseq-ge";
  }
  return "eq";
}

std::string truth_name(Truth t) {
  switch (t) {
    case Truth::False: return "false";
    case Truth::True: return "true";
    case Truth::Undefined: return "undefined";
  }
  return "undefined";
}

bool is_list_relation(Relation r) {
  return r == Relation::SubseqLE || r == Relation::ListEQ || r == Relation::SubseqGE;
}

bool subseq_le(const std::vector<Position>& q, const std::vector<Position>& p) {
  std::size_t i = 0;
  for (std::size_t j = 0; j < p.size() && i < q.size(); ++j)
    if (q[i] == p[j]) ++i;
  return i == q.size();
}

bool relate(const Clock& a, const Clock& b, Relation r) {
  if (is_list_relation(r) && (!a.steps || !b.steps))
    throw std::invalid_argument("list relation needs atomic clocks");
  switch (r) {
    case Relation::LE: return a.count <= b.count;
    case Relation::EQ: return a.count == b.count;
    case Relation::GE: return a.count >= b.count;
    case Relation::SubseqLE: return subseq_le(*a.steps, *b.steps);
    case Relation::ListEQ: return *a.steps == *b.steps;
    case Relation::SubseqGE: return subseq_le(*b.steps, *a.steps);
  }
  return false;
}

namespace {

bool node_holds(const TreeNode& a, const TreeNode& b, Relation r) {
  if (a.clock && b.clock) return relate(*a.clock, *b.clock, r);
  return !a.clock && !b.clock;
}

using Pair = std::pair<NodeId, NodeId>;

}  // namespace

Truth compare_at(const ClockTree& a, const ClockTree& b, const TreePath& path, Relation r) {
  auto x = a.at(path);
  auto y = b.at(path);
  if (!x || !y) return Truth::Undefined;
  const TreeNode& nx = a.node(*x);
  const TreeNode& ny = b.node(*y);
  if (nx.kind == NodeKind::Unknown || ny.kind == NodeKind::Unknown) return Truth::Undefined;
  return node_holds(nx, ny, r) ? Truth::True : Truth::False;
}

Truth holds_globally(const ClockTree& a, const ClockTree& b, Relation r) {
  std::set<Pair> seen;
  std::vector<Pair> work{{a.follow(0), b.follow(0)}};
  bool undefined = false;
  while (!work.empty()) {
    Pair p = work.back();
    work.pop_back();
    if (!seen.insert(p).second) continue;
    const TreeNode& nx = a.node(p.first);
    const TreeNode& ny = b.node(p.second);
    if (nx.kind == NodeKind::Unknown || ny.kind == NodeKind::Unknown) {
      undefined = true;
      continue;
    }
    if (!same_local_shape(nx, ny) || !node_holds(nx, ny, r)) return Truth::False;
    for (std::size_t i = 0; i < nx.children.size(); ++i)
      work.emplace_back(a.follow(nx.children[i]), b.follow(ny.children[i]));
  }
  return undefined ? Truth::Undefined : Truth::True;
}

EventualResult holds_eventually(const ClockTree& a, const ClockTree& b, Relation r) {
  constexpr std::size_t kLayerCap = 100000;
  EventualResult out;
  std::set<Pair> layer{{a.follow(0), b.follow(0)}};
  std::map<Pair, TreePath> paths{{*layer.begin(), {}}};
  std::map<std::set<Pair>, std::size_t> seen;
  std::optional<std::size_t> last_violation;
  bool unknown = false;
  std::size_t depth = 0;
  for (;; ++depth) {
    if (layer.empty()) break;
    if (auto it = seen.find(layer); it != seen.end()) {
      // Layers repeat from it->second on, so do their violations.
      if (last_violation && *last_violation >= it->second) {
        out.truth = Truth::False;
        out.certified = true;
        out.depth_explored = depth;
        return out;
      }
      break;
    }
    if (depth >= kLayerCap) {
      unknown = true;
      break;
    }
    seen.emplace(layer, depth);
    std::set<Pair> next;
    for (const auto& p : layer) {
      const TreeNode& nx = a.node(p.first);
      const TreeNode& ny = b.node(p.second);
      if (nx.kind == NodeKind::Unknown || ny.kind == NodeKind::Unknown) {
        unknown = true;
        continue;
      }
      const TreePath& here = paths.at(p);
      if (!same_local_shape(nx, ny)) {
        out.truth = Truth::False;
        out.certified = true;
        out.witness = here;
        out.depth_explored = depth;
        return out;
      }
      if (!node_holds(nx, ny, r)) {
        last_violation = depth;
        out.witness = here;
      }
      for (std::size_t i = 0; i < nx.children.size(); ++i) {
        Pair c{a.follow(nx.children[i]), b.follow(ny.children[i])};
        if (!paths.count(c)) {
          TreePath cp = here;
          cp.push_back(i);
          paths.emplace(c, std::move(cp));
        }
        next.insert(c);
      }
    }
    layer = std::move(next);
  }
  out.depth_explored = depth;
  out.level = last_violation ? *last_violation + 1 : 0;
  out.truth = unknown ? Truth::Undefined : Truth::True;
  out.certified = !unknown;
  return out;
}

std::string conclusion_name(Conclusion c) {
  return c == Conclusion::Inconvertible ? "Inconvertible" : "Inconclusive";
}

std::string justification_name(Justification j) {
  switch (j) {
    case Justification::None: return "none";
    case Justification::DifferentBT: return "DifferentBT";
    case Justification::SimpleEventualMismatch: return "SimpleEventualMismatch";
    case Justification::SimpleNoImprovement: return "SimpleNoImprovement";
    case Justification::GeneralNoReductImproves: return "GeneralNoReductImproves";
  }
  return "none";
}

nlohmann::json verdict_json(const Verdict& v) {
  auto opt_term = [](const std::optional<Term>& t) {
    return t ? nlohmann::json(pretty(*t)) : nlohmann::json(nullptr);
  };
  const Evidence& e = v.evidence;
  nlohmann::json ev;
  ev["depth"] = e.depth;
  ev["level"] = e.level ? nlohmann::json(*e.level) : nlohmann::json(nullptr);
  ev["m_closed"] = e.m_closed;
  ev["n_closed"] = e.n_closed;
  ev["m_simple"] = e.m_simple;
  ev["n_simple"] = e.n_simple;
  ev["witness"] = e.witness ? nlohmann::json(path_string(*e.witness)) : nlohmann::json(nullptr);
  ev["m_reduct"] = opt_term(e.m_reduct);
  ev["n_reduct"] = opt_term(e.n_reduct);
  ev["reducts_checked"] = e.reducts_checked;
  ev["improver"] = opt_term(e.improver);
  ev["note"] = e.note;
  nlohmann::json j;
  j["conclusion"] = conclusion_name(v.conclusion);
  j["justification"] = justification_name(v.justification);
  j["evidence"] = ev;
  return j;
}

namespace {

std::optional<TreePath> shape_mismatch(const ClockTree& a, const ClockTree& b) {
  std::set<Pair> seen;
  std::deque<std::pair<Pair, TreePath>> work{{{a.follow(0), b.follow(0)}, {}}};
  while (!work.empty()) {
    auto [p, path] = std::move(work.front());
    work.pop_front();
    if (!seen.insert(p).second) continue;
    const TreeNode& nx = a.node(p.first);
    const TreeNode& ny = b.node(p.second);
    if (nx.kind == NodeKind::Unknown || ny.kind == NodeKind::Unknown) continue;
    if (!same_local_shape(nx, ny)) return path;
    for (std::size_t i = 0; i < nx.children.size(); ++i) {
      TreePath cp = path;
      cp.push_back(i);
      work.emplace_back(Pair{a.follow(nx.children[i]), b.follow(ny.children[i])}, std::move(cp));
    }
  }
  return std::nullopt;
}

bool simple_and_closed(const Term& t, const DiscriminateConfig& config) {
  return check_simple(t, config.depth, config.fuel).status == SimplicityStatus::Simple;
}

ClockTree compact(const Term& t, const DiscriminateConfig& config, std::size_t depth) {
  return compact_cyclic(t, depth, config.fuel, config.atomic);
}

bool joinable(const Term& a, const Term& b, const DiscriminateConfig& config) {
  JoinBudget budget;
  budget.max_terms = config.reduct_bound;
  budget.size_cap = config.size_cap;
  return find_common_reduct(a, b, budget).has_value();
}

std::optional<Term> pick_simple(const Term& t, const std::vector<Term>& supplied, const DiscriminateConfig& config) {
  for (const auto& r : supplied)
    if (simple_and_closed(r, config) && joinable(t, r, config)) return r;
  return simple_reduct(t, config);
}

// A term convertible to t whose compact tree is closed.
std::optional<Term> closed_form(const Term& t, const DiscriminateConfig& config) {
  if (compact(t, config, config.depth).closed()) return t;
  Term inner = normalize_inner(t, config.inner_fuel);
  if (compact(inner, config, config.depth).closed()) return inner;
  return std::nullopt;
}

}  // namespace

std::optional<Term> simple_reduct(const Term& t, const DiscriminateConfig& config) {
  // Each leftmost step saves at most one head step, so a root that runs out
  // of fuel stays out of reach for every candidate below.
  if (head_reduce(t, HeadTarget::Hnf, config.fuel).kind == OutcomeKind::FuelExhausted) return std::nullopt;
  std::unordered_set<Term, TermHash> tried;
  Term cur = t;
  for (std::size_t i = 0; i <= config.pre_steps; ++i) {
    for (const Term& cand : {cur, normalize_inner(cur, config.inner_fuel)}) {
      if (cand.size() > config.size_cap || !tried.insert(cand).second) continue;
      if (simple_and_closed(cand, config)) return cand;
    }
    auto redexes = redex_positions(cur);
    if (redexes.empty()) break;
    cur = contract_at(cur, redexes.front());
    if (cur.size() > config.size_cap) break;
  }
  return std::nullopt;
}

Verdict discriminate(const Term& m, const Term& n, const DiscriminateConfig& config) {
  Verdict v;
  Evidence& ev = v.evidence;
  ev.depth = config.depth;
  ClockTree tm = compact(m, config, config.depth);
  ClockTree tn = compact(n, config, config.depth);
  ev.m_closed = tm.closed();
  ev.n_closed = tn.closed();

  if (auto w = shape_mismatch(tm, tn)) {
    v.conclusion = Conclusion::Inconvertible;
    v.justification = Justification::DifferentBT;
    ev.witness = w;
    return v;
  }

  const Relation eq = config.atomic ? Relation::ListEQ : Relation::EQ;
  const Relation le = config.atomic ? Relation::SubseqLE : Relation::LE;

  auto ms = pick_simple(m, config.m_reducts, config);
  auto ns = pick_simple(n, config.n_reducts, config);
  ev.m_simple = ms.has_value();
  ev.n_simple = ns.has_value();
  ev.m_reduct = ms;
  ev.n_reduct = ns;

  if (ms && ns) {
    auto res = holds_eventually(compact(*ms, config, config.depth), compact(*ns, config, config.depth), eq);
    if (res.truth == Truth::False) {
      v.conclusion = Conclusion::Inconvertible;
      v.justification = Justification::SimpleEventualMismatch;
      ev.witness = res.witness;
      return v;
    }
    if (res.truth == Truth::True) ev.level = res.level;
  }

  // A simple side must improve eventually on anything convertible to it.
  auto no_improvement = [&](const Term& simple, const Term& other, bool m_side) {
    auto target = other;
    if (auto c = closed_form(other, config)) target = *c;
    else return false;
    auto res = holds_eventually(compact(simple, config, config.depth), compact(target, config, config.depth), le);
    if (res.truth != Truth::False) return false;
    v.conclusion = Conclusion::Inconvertible;
    v.justification = Justification::SimpleNoImprovement;
    ev.witness = res.witness;
    ev.note = m_side ? "first term does not improve eventually on the second"
                     : "second term does not improve eventually on the first";
    return true;
  };
  if (ms && no_improvement(*ms, ns ? *ns : n, true)) return v;
  if (ns && no_improvement(*ns, ms ? *ms : m, false)) return v;

  // Breadth-first reducts of m; any of them improving globally on n blocks a
  // conclusion.
  ClockTree target = compact(n, config, config.reduct_depth);
  std::unordered_set<Term, TermHash> seen{m};
  std::deque<Term> queue{m};
  std::vector<Term> reducts;
  bool exhausted = true;
  while (!queue.empty()) {
    if (reducts.size() >= config.reduct_bound) {
      exhausted = false;
      break;
    }
    Term r = std::move(queue.front());
    queue.pop_front();
    reducts.push_back(r);
    if (holds_globally(compact(r, config, config.reduct_depth), target, le) != Truth::False) {
      ev.improver = r;
      break;
    }
    for (auto& s : one_step_reducts(r)) {
      if (s.size() > config.size_cap) {
        exhausted = false;
        continue;
      }
      if (seen.insert(s).second) queue.push_back(std::move(s));
    }
  }
  ev.reducts_checked = reducts.size();
  if (ev.improver) {
    ev.note = "a reduct of the first term may improve globally on the second";
    return v;
  }
  if (config.certificate && config.certificate(m, n, reducts)) {
    v.conclusion = Conclusion::Inconvertible;
    v.justification = Justification::GeneralNoReductImproves;
    ev.note = "no enumerated reduct improves globally; certificate covers the rest";
    return v;
  }
  ev.note = exhausted ? "all reducts checked, none improves globally; no certificate supplied"
                      : "no enumerated reduct improves globally; bound reached without certificate";
  return v;
}

}  // namespace bohm
