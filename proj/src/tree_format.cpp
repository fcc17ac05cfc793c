#include <set>
#include <sstream>

#include "bohm/clocked_trees.hpp"

namespace bohm {

std::string clock_string(const Clock& clock) {
  if (!clock.steps) return std::to_string(clock.count);
  std::string out = "⟨";
  for (std::size_t i = 0; i < clock.steps->size(); ++i) {
    if (i) out += ',';
    out += (*clock.steps)[i].str();
  }
  return out + "⟩";
}

namespace {

std::string kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Hnf: return "hnf";
    case NodeKind::Lambda: return "lambda";
    case NodeKind::Apply: return "apply";
    case NodeKind::Bottom: return "bottom";
    case NodeKind::Unknown: return "unknown";
    case NodeKind::BackEdge: return "backedge";
  }
  return "unknown";
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string label(const TreeNode& n) {
  std::string body;
  switch (n.kind) {
    case NodeKind::Hnf:
      body = n.binders.empty() ? n.head.name : "λ" + join(n.binders, " ") + "." + n.head.name;
      break;
    case NodeKind::Lambda: body = "λ" + n.binders.front() + "."; break;
    case NodeKind::Apply: body = "@"; break;
    case NodeKind::Bottom: return n.assumed ? "⊥? (assumed, fuel exhausted)" : "⊥";
    case NodeKind::Unknown: return n.reason == UnknownReason::Fuel ? "? (fuel)" : "? (depth)";
    case NodeKind::BackEdge: return "";
  }
  if (n.clock) return "[" + clock_string(*n.clock) + "] " + body;
  return body;
}

std::set<NodeId> targets(const ClockTree& tree) {
  std::set<NodeId> out;
  for (const auto& n : tree.nodes())
    if (n.kind == NodeKind::BackEdge) out.insert(n.target);
  return out;
}

void text(const ClockTree& tree, NodeId id, std::size_t indent, const std::set<NodeId>& marked,
          std::ostream& out) {
  const TreeNode& n = tree.node(id);
  out << std::string(indent * 2, ' ');
  if (n.kind == NodeKind::BackEdge) {
    out << (n.shared ? "-> #" : "↺ #") << n.target;
    if (!n.shared) out << " (phase " << n.phase.str() << ", period " << n.period.str() << ")";
    out << '\n';
    return;
  }
  if (marked.count(id)) out << '#' << id << ' ';
  out << label(n) << '\n';
  for (auto c : n.children) text(tree, c, indent + 1, marked, out);
}

nlohmann::json node_json(const ClockTree& tree, NodeId id) {
  const TreeNode& n = tree.node(id);
  nlohmann::json j;
  j["id"] = id;
  j["kind"] = kind_name(n.kind);
  if (n.clock) {
    if (n.clock->steps) {
      auto arr = nlohmann::json::array();
      for (const auto& p : *n.clock->steps) arr.push_back(p.str());
      j["clock"] = arr;
    } else {
      j["clock"] = n.clock->count;
    }
  }
  switch (n.kind) {
    case NodeKind::Hnf:
      j["binders"] = n.binders;
      j["head"] = n.head.name;
      break;
    case NodeKind::Lambda: j["binders"] = n.binders; break;
    case NodeKind::Bottom:
      if (n.assumed) j["assumed"] = true;
      break;
    case NodeKind::Unknown: j["reason"] = n.reason == UnknownReason::Fuel ? "fuel" : "depth"; break;
    case NodeKind::BackEdge: {
      nlohmann::json b;
      b["target"] = n.target;
      b["phase"] = n.phase.str();
      b["period"] = n.shared ? nlohmann::json(nullptr) : nlohmann::json(n.period.str());
      b["shared"] = n.shared;
      j["backedge"] = b;
      break;
    }
    case NodeKind::Apply: break;
  }
  if (n.kind == NodeKind::Hnf || n.kind == NodeKind::Lambda || n.kind == NodeKind::Apply) {
    auto kids = nlohmann::json::array();
    for (auto c : n.children) kids.push_back(node_json(tree, c));
    j["children"] = kids;
  }
  return j;
}

std::string semantics_name(Semantics s) {
  switch (s) {
    case Semantics::Bohm: return "bt";
    case Semantics::LevyLongo: return "llt";
    case Semantics::Berarducci: return "bet";
  }
  return "bt";
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string render_text(const ClockTree& tree) {
  std::ostringstream out;
  text(tree, 0, 0, targets(tree), out);
  return out.str();
}

nlohmann::json tree_json(const ClockTree& tree) {
  nlohmann::json j;
  j["semantics"] = semantics_name(tree.semantics());
  j["atomic"] = tree.atomic();
  j["closed"] = tree.closed();
  j["tree"] = node_json(tree, 0);
  return j;
}

std::string render_dot(const ClockTree& tree) {
  std::ostringstream out;
  out << "digraph clocktree {\n  node [shape=box, fontname=\"monospace\"];\n";
  for (NodeId id = 0; id < tree.size(); ++id) {
    const TreeNode& n = tree.node(id);
    if (n.kind == NodeKind::BackEdge) continue;
    out << "  n" << id << " [label=\"" << dot_escape(label(n)) << "\"";
    if (n.kind == NodeKind::Unknown || n.kind == NodeKind::Bottom) out << ", shape=plaintext";
    out << "];\n";
  }
  for (NodeId id = 0; id < tree.size(); ++id) {
    const TreeNode& n = tree.node(id);
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      const TreeNode& c = tree.node(n.children[i]);
      if (c.kind == NodeKind::BackEdge) {
        out << "  n" << id << " -> n" << c.target << " [style=dashed, label=\"";
        if (c.shared) out << "shared";
        else out << "(" << c.phase.str() << ", " << c.period.str() << ")";
        out << "\"];\n";
      } else {
        out << "  n" << id << " -> n" << n.children[i] << ";\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace bohm
