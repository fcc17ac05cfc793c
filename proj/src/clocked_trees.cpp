#include "bohm/clocked_trees.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

namespace bohm {

std::string path_string(const TreePath& path) {
  if (path.empty()) return "e";
  bool small = std::all_of(path.begin(), path.end(), [](std::size_t i) { return i < 10; });
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (!small && i > 0) out += '.';
    out += std::to_string(path[i]);
  }
  return out;
}

NodeId ClockTree::follow(NodeId id) const {
  while (nodes_[id].kind == NodeKind::BackEdge) id = nodes_[id].target;
  return id;
}

std::optional<NodeId> ClockTree::child(NodeId id, std::size_t index) const {
  const TreeNode& n = nodes_[follow(id)];
  if (index >= n.children.size()) return std::nullopt;
  return follow(n.children[index]);
}

std::optional<NodeId> ClockTree::at(const TreePath& path) const {
  NodeId cur = follow(0);
  for (auto i : path) {
    auto next = child(cur, i);
    if (!next) return std::nullopt;
    cur = *next;
  }
  return cur;
}

bool ClockTree::closed() const {
  return std::none_of(nodes_.begin(), nodes_.end(), [](const TreeNode& n) {
    return n.kind == NodeKind::Unknown || (n.kind == NodeKind::Bottom && n.assumed);
  });
}

bool ClockTree::has_back_edges() const {
  return std::any_of(nodes_.begin(), nodes_.end(),
                     [](const TreeNode& n) { return n.kind == NodeKind::BackEdge; });
}

Position child_offset(const TreeNode& node, std::size_t index) {
  std::vector<std::uint8_t> steps;
  switch (node.kind) {
    case NodeKind::Hnf:
      steps.assign(node.binders.size(), 0);
      steps.insert(steps.end(), node.children.size() - 1 - index, 1);
      steps.push_back(2);
      break;
    case NodeKind::Lambda: steps.push_back(0); break;
    case NodeKind::Apply: steps.push_back(index == 0 ? 1 : 2); break;
    default: throw std::logic_error("node has no children");
  }
  return Position(std::move(steps));
}

std::optional<Position> applicative_position(const ClockTree& tree, const TreePath& path) {
  NodeId cur = tree.follow(0);
  Position out;
  for (auto i : path) {
    const TreeNode& n = tree.node(cur);
    if (i >= n.children.size()) return std::nullopt;
    out.append(child_offset(n, i));
    cur = tree.follow(n.children[i]);
  }
  return out;
}

namespace {

void collect_loose(const Term& t, std::uint32_t depth, std::set<std::uint32_t>& out) {
  if (t.loose() <= depth) return;
  switch (t.kind()) {
    case TermKind::Bound: out.insert(t.index() - depth); return;
    case TermKind::Free: return;
    case TermKind::Lambda: collect_loose(t.body(), depth + 1, out); return;
    case TermKind::Apply:
      collect_loose(t.fn(), depth, out);
      collect_loose(t.arg(), depth, out);
      return;
  }
}

// Memo key: loose indices become absolute binder levels, so two generators
// match only when they are the same term over the same enclosing binders.
Term level_key(const Term& t, std::size_t outer, std::uint32_t depth = 0) {
  if (t.loose() <= depth) return t;
  switch (t.kind()) {
    case TermKind::Bound: return Term::free("\x01" + std::to_string(outer - 1 - (t.index() - depth)));
    case TermKind::Free: return t;
    case TermKind::Lambda: return Term::lambda(t.name(), level_key(t.body(), outer, depth + 1));
    case TermKind::Apply: return Term::apply(level_key(t.fn(), outer, depth), level_key(t.arg(), outer, depth));
  }
  return t;
}

HeadTarget target_of(Semantics s) {
  switch (s) {
    case Semantics::Bohm: return HeadTarget::Hnf;
    case Semantics::LevyLongo: return HeadTarget::Whnf;
    case Semantics::Berarducci: return HeadTarget::RootStable;
  }
  return HeadTarget::Hnf;
}

}  // namespace

class TreeBuilder {
 public:
  TreeBuilder(Semantics semantics, const TreeOptions& options, const ReductionObserver& observer)
      : semantics_(semantics), options_(options), observer_(observer) {}

  ClockTree run(const Term& t) {
    tree_.semantics_ = semantics_;
    tree_.atomic_ = options_.atomic;
    globals_ = free_vars(t);
    std::vector<std::string> names;
    build(t, options_.depth, {}, Position(), std::nullopt, names);
    return std::move(tree_);
  }

 private:
  NodeId add(TreeNode n) {
    tree_.nodes_.push_back(std::move(n));
    return tree_.nodes_.size() - 1;
  }

  bool is_ancestor(NodeId candidate, std::optional<NodeId> from) const {
    while (from) {
      if (*from == candidate) return true;
      from = tree_.nodes_[*from].parent;
    }
    return false;
  }

  NodeId build(const Term& gen, std::size_t depth, TreePath path, Position pos, std::optional<NodeId> parent,
               std::vector<std::string>& names) {
    TreeNode node;
    node.path = std::move(path);
    node.position = std::move(pos);
    node.parent = parent;
    node.generator = gen;

    if (options_.cyclic) {
      if (auto it = memo_.find(level_key(gen, names.size())); it != memo_.end()) {
        node.kind = NodeKind::BackEdge;
        node.target = it->second;
        node.shared = !is_ancestor(it->second, parent);
        node.phase = tree_.nodes_[it->second].position;
        if (!node.shared) node.period = node.position.suffix_after(node.phase);
        return add(std::move(node));
      }
    }
    if (depth == 0) {
      node.kind = NodeKind::Unknown;
      node.reason = UnknownReason::Depth;
      return add(std::move(node));
    }

    HeadOptions ho;
    ho.fuel = options_.fuel;
    ho.trace_cap = options_.trace_cap;
    ho.keep_trace = options_.keep_trace;
    HeadOutcome out = head_reduce(gen, target_of(semantics_), ho);

    if (out.kind == OutcomeKind::ProvenDivergent) {
      node.kind = NodeKind::Bottom;
      NodeId id = add(std::move(node));
      if (observer_) observer_(id, out);
      return id;
    }
    if (out.kind == OutcomeKind::FuelExhausted) {
      if (options_.assume_bottom_on_fuel) {
        node.kind = NodeKind::Bottom;
        node.assumed = true;
      } else {
        node.kind = NodeKind::Unknown;
        node.reason = UnknownReason::Fuel;
      }
      return add(std::move(node));
    }

    Clock clock;
    clock.count = out.count();
    if (options_.atomic) clock.steps = out.steps;
    node.clock = std::move(clock);

    const Term& r = *out.result;
    std::vector<Term> kids;
    std::size_t pushed = 0;
    switch (semantics_) {
      case Semantics::Bohm: {
        const Term* cur = &r;
        std::vector<std::string> hints;
        while (cur->is_lambda()) {
          hints.push_back(cur->name());
          cur = &cur->body();
        }
        node.kind = NodeKind::Hnf;
        node.binders = block_names(r, hints, names);
        while (cur->is_apply()) {
          kids.push_back(cur->arg());
          cur = &cur->fn();
        }
        std::reverse(kids.begin(), kids.end());
        node.head = head_of(*cur, node.binders, names);
        pushed = node.binders.size();
        break;
      }
      case Semantics::LevyLongo:
        if (r.is_lambda()) {
          node.kind = NodeKind::Lambda;
          node.binders = block_names(r, {r.name()}, names);
          kids.push_back(r.body());
          pushed = 1;
        } else {
          node.kind = NodeKind::Hnf;
          const Term* cur = &r;
          while (cur->is_apply()) {
            kids.push_back(cur->arg());
            cur = &cur->fn();
          }
          std::reverse(kids.begin(), kids.end());
          node.head = head_of(*cur, {}, names);
        }
        break;
      case Semantics::Berarducci:
        if (r.is_lambda()) {
          node.kind = NodeKind::Lambda;
          node.binders = block_names(r, {r.name()}, names);
          kids.push_back(r.body());
          pushed = 1;
        } else if (r.is_apply()) {
          node.kind = NodeKind::Apply;
          kids.push_back(r.fn());
          kids.push_back(r.arg());
        } else {
          node.kind = NodeKind::Hnf;
          node.head = head_of(r, {}, names);
        }
        break;
    }

    // Children are added later; record the arity for child_offset.
    node.children.assign(kids.size(), 0);
    std::vector<std::string> block = node.binders;
    TreePath base_path = node.path;
    Position base_pos = node.position;
    NodeId id = add(std::move(node));
    if (options_.cyclic) memo_.emplace(level_key(gen, names.size()), id);
    if (observer_) observer_(id, out);

    for (const auto& b : block) names.push_back(b);
    for (std::size_t i = 0; i < kids.size(); ++i) {
      TreePath cp = base_path;
      cp.push_back(i);
      Position pp = base_pos + child_offset(tree_.nodes_[id], i);
      NodeId c = build(kids[i], depth - 1, std::move(cp), std::move(pp), id, names);
      tree_.nodes_[id].children[i] = c;
    }
    names.resize(names.size() - pushed);
    return id;
  }

  // Display names for a binder block that keep every reference in `r` intact.
  std::vector<std::string> block_names(const Term& r, const std::vector<std::string>& hints,
                                       const std::vector<std::string>& names) const {
    std::set<std::uint32_t> loose;
    collect_loose(r, 0, loose);
    std::set<std::string> taken = globals_;
    for (auto i : loose)
      if (i < names.size()) taken.insert(names[names.size() - 1 - i]);
    std::vector<std::string> out;
    for (const auto& h : hints) {
      std::string n = fresh_name(h.empty() ? "x" : h, taken);
      taken.insert(n);
      out.push_back(std::move(n));
    }
    return out;
  }

  HeadVar head_of(const Term& h, const std::vector<std::string>& block, const std::vector<std::string>& names) const {
    HeadVar v;
    if (h.is_free()) {
      v.free = true;
      v.name = h.name();
      return v;
    }
    if (!h.is_bound()) throw std::logic_error("head is not a variable");
    v.index = h.index();
    std::size_t n = block.size();
    if (v.index < n) {
      v.name = block[n - 1 - v.index];
    } else {
      std::size_t outer = v.index - n;
      v.name = outer < names.size() ? names[names.size() - 1 - outer] : h.name();
    }
    return v;
  }

  Semantics semantics_;
  TreeOptions options_;
  ReductionObserver observer_;
  ClockTree tree_;
  std::set<std::string> globals_;
  std::unordered_map<Term, NodeId, TermHash> memo_;
};

ClockTree build_tree(const Term& t, Semantics semantics, const TreeOptions& options,
                     const ReductionObserver& observer) {
  return TreeBuilder(semantics, options, observer).run(t);
}

namespace {

ClockTree build_plain(const Term& t, Semantics s, std::size_t depth, std::size_t fuel, bool atomic, bool cyclic) {
  TreeOptions o;
  o.depth = depth;
  o.fuel = fuel;
  o.atomic = atomic;
  o.cyclic = cyclic;
  return build_tree(t, s, o);
}

}  // namespace

ClockTree clocked_bt(const Term& t, std::size_t depth, std::size_t fuel, bool atomic) {
  return build_plain(t, Semantics::Bohm, depth, fuel, atomic, false);
}

ClockTree clocked_llt(const Term& t, std::size_t depth, std::size_t fuel, bool atomic) {
  return build_plain(t, Semantics::LevyLongo, depth, fuel, atomic, false);
}

ClockTree clocked_bet(const Term& t, std::size_t depth, std::size_t fuel, bool atomic) {
  return build_plain(t, Semantics::Berarducci, depth, fuel, atomic, false);
}

ClockTree compact_cyclic(const Term& t, std::size_t depth, std::size_t fuel, bool atomic, Semantics semantics) {
  return build_plain(t, semantics, depth, fuel, atomic, true);
}

ClockTree strip(const ClockTree& tree) {
  ClockTree out = tree;
  out.annotated_ = false;
  out.atomic_ = false;
  for (auto& n : out.nodes_) n.clock.reset();
  return out;
}

bool same_local_shape(const TreeNode& a, const TreeNode& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::Hnf:
      return a.binders.size() == b.binders.size() && a.head == b.head && a.children.size() == b.children.size();
    case NodeKind::Unknown: return a.reason == b.reason;
    default: return true;
  }
}

bool same_shape(const ClockTree& a, const ClockTree& b) {
  std::set<std::pair<NodeId, NodeId>> seen;
  std::vector<std::pair<NodeId, NodeId>> work{{a.follow(0), b.follow(0)}};
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    if (!seen.insert({x, y}).second) continue;
    const TreeNode& nx = a.node(x);
    const TreeNode& ny = b.node(y);
    if (!same_local_shape(nx, ny)) return false;
    for (std::size_t i = 0; i < nx.children.size(); ++i)
      work.emplace_back(a.follow(nx.children[i]), b.follow(ny.children[i]));
  }
  return true;
}

std::vector<Cycle> periodicity_report(const ClockTree& tree) {
  std::vector<Cycle> out;
  for (const auto& n : tree.nodes()) {
    if (n.kind != NodeKind::BackEdge) continue;
    Cycle c;
    c.sigma = n.position;
    c.phase = n.phase;
    c.period = n.period;
    c.sigma_path = n.path;
    c.phase_path = tree.node(n.target).path;
    c.shared = n.shared;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<std::size_t> annotation_counts(const ClockTree& tree) {
  std::vector<std::size_t> out;
  for (const auto& n : tree.nodes())
    if (n.clock) out.push_back(n.clock->count);
  return out;
}

SimplicityReport check_simple(const Term& t, std::size_t depth, std::size_t fuel) {
  SimplicityReport report;
  TreeOptions o;
  o.depth = depth;
  o.fuel = fuel;
  o.cyclic = true;
  o.keep_trace = true;
  std::optional<std::pair<NodeId, std::pair<Position, RedexClass>>> witness;
  ClockTree tree = build_tree(t, Semantics::Bohm, o, [&](NodeId id, const HeadOutcome& out) {
    // A term without hnf is simple by definition.
    if (witness || !out.resolved()) return;
    for (std::size_t i = 0; i < out.steps.size(); ++i) {
      RedexClass c = classify_redex(out.trace[i], out.steps[i]);
      if (!c.simple()) {
        witness = std::make_pair(id, std::make_pair(out.steps[i], c));
        return;
      }
    }
  });
  for (const auto& n : tree.nodes()) report.depth_checked = std::max(report.depth_checked, n.path.size());
  if (witness) {
    report.status = SimplicityStatus::NotSimple;
    report.witness_node = tree.node(witness->first).path;
    report.witness_redex = witness->second.first;
    report.witness_class = witness->second.second;
    return report;
  }
  for (const auto& n : tree.nodes()) {
    if (n.kind != NodeKind::Unknown) continue;
    if (!report.reason || n.reason == UnknownReason::Fuel) report.reason = n.reason;
  }
  report.status = report.reason ? SimplicityStatus::Unknown : SimplicityStatus::Simple;
  return report;
}

}  // namespace bohm
