#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bohm/reduction.hpp"
#include "bohm/term.hpp"

namespace bohm {

inline constexpr std::size_t kDefaultDepth = 12;

// Böhm (hnf), Lévy-Longo (whnf) and Berarducci (root-stable) trees.
enum class Semantics { Bohm, LevyLongo, Berarducci };

enum class NodeKind { Hnf, Lambda, Apply, Bottom, Unknown, BackEdge };
enum class UnknownReason { Fuel, Depth };

using NodeId = std::size_t;
// Tree coordinates in hnf-notation: the 0-based index of the child taken at
// each node.
using TreePath = std::vector<std::size_t>;
std::string path_string(const TreePath& path);

struct Clock {
  std::size_t count = 0;
  // Present for atomic clocks: the position of every head step.
  std::optional<std::vector<Position>> steps;
};

struct HeadVar {
  bool free = false;
  // de Bruijn index seen from under the node's own binders.
  std::uint32_t index = 0;
  std::string name;

  bool operator==(const HeadVar& o) const {
    return free == o.free && (free ? name == o.name : index == o.index);
  }
};

struct TreeNode {
  NodeKind kind = NodeKind::Unknown;
  std::optional<Clock> clock;
  std::vector<std::string> binders;
  HeadVar head;
  std::vector<NodeId> children;
  UnknownReason reason = UnknownReason::Depth;
  // Bottom obtained by treating exhausted fuel as divergence.
  bool assumed = false;

  // Back edges point at an earlier node with the same generating term. A
  // shared edge targets a node that is not an ancestor.
  NodeId target = 0;
  bool shared = false;
  Position phase;
  Position period;

  TreePath path;
  // Applicative position of the node inside the tree read as a term.
  Position position;
  std::optional<NodeId> parent;
  std::optional<Term> generator;
};

struct TreeOptions {
  std::size_t depth = kDefaultDepth;
  std::size_t fuel = kDefaultFuel;
  std::size_t trace_cap = kDefaultTraceCap;
  bool atomic = false;
  bool cyclic = false;
  bool assume_bottom_on_fuel = false;
  // Keep head-reduction traces for the observer.
  bool keep_trace = false;
};

class ClockTree {
 public:
  Semantics semantics() const { return semantics_; }
  bool atomic() const { return atomic_; }
  bool annotated() const { return annotated_; }
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& node(NodeId id) const { return nodes_.at(id); }
  const TreeNode& root() const { return nodes_.front(); }
  std::size_t size() const { return nodes_.size(); }

  // Resolves back edges to their target.
  NodeId follow(NodeId id) const;
  std::optional<NodeId> child(NodeId id, std::size_t index) const;
  std::optional<NodeId> at(const TreePath& path) const;
  // Every frontier is a back edge or a proven bottom.
  bool closed() const;
  bool has_back_edges() const;

 private:
  friend class TreeBuilder;
  friend ClockTree strip(const ClockTree& tree);

  Semantics semantics_ = Semantics::Bohm;
  bool atomic_ = false;
  bool annotated_ = true;
  std::vector<TreeNode> nodes_;
};

// Applicative offset of child `index` below a node.
Position child_offset(const TreeNode& node, std::size_t index);
// Converts hnf-notation to applicative coordinates along a tree.
std::optional<Position> applicative_position(const ClockTree& tree, const TreePath& path);

using ReductionObserver = std::function<void(NodeId, const HeadOutcome&)>;

ClockTree build_tree(const Term& t, Semantics semantics, const TreeOptions& options,
                     const ReductionObserver& observer = {});

ClockTree clocked_bt(const Term& t, std::size_t depth = kDefaultDepth, std::size_t fuel = kDefaultFuel,
                     bool atomic = false);
ClockTree clocked_llt(const Term& t, std::size_t depth = kDefaultDepth, std::size_t fuel = kDefaultFuel,
                      bool atomic = false);
ClockTree clocked_bet(const Term& t, std::size_t depth = kDefaultDepth, std::size_t fuel = kDefaultFuel,
                      bool atomic = false);
// Like clocked_bt, but a node whose generating term already produced a node
// becomes a back edge to it.
ClockTree compact_cyclic(const Term& t, std::size_t depth = kDefaultDepth, std::size_t fuel = kDefaultFuel,
                         bool atomic = false, Semantics semantics = Semantics::Bohm);

ClockTree strip(const ClockTree& tree);

// The two trees unfold to the same unannotated tree. Unknown nodes only match
// Unknown nodes with the same reason.
bool same_shape(const ClockTree& a, const ClockTree& b);

// Local shape of two resolved nodes: kind, binder count, head and arity.
bool same_local_shape(const TreeNode& a, const TreeNode& b);

struct Cycle {
  Position sigma;
  Position phase;
  Position period;
  TreePath sigma_path;
  TreePath phase_path;
  bool shared = false;
};

std::vector<Cycle> periodicity_report(const ClockTree& tree);

// All clock annotations in depth-first order, one per annotated node.
std::vector<std::size_t> annotation_counts(const ClockTree& tree);

enum class SimplicityStatus { Simple, NotSimple, Unknown };

struct SimplicityReport {
  SimplicityStatus status = SimplicityStatus::Unknown;
  std::optional<TreePath> witness_node;
  std::optional<Position> witness_redex;
  RedexClass witness_class;
  std::optional<UnknownReason> reason;
  std::size_t depth_checked = 0;
};

SimplicityReport check_simple(const Term& t, std::size_t depth = kDefaultDepth, std::size_t fuel = kDefaultFuel);

std::string clock_string(const Clock& clock);
std::string render_text(const ClockTree& tree);
nlohmann::json tree_json(const ClockTree& tree);
std::string render_dot(const ClockTree& tree);

}  // namespace bohm
