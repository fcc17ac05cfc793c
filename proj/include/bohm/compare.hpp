#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bohm/clocked_trees.hpp"

namespace bohm {

// Count relations compare Clock::count; list relations compare atomic step
// lists and need atomic trees.
enum class Relation { LE, EQ, GE, SubseqLE, ListEQ, SubseqGE };

enum class Truth { False, True, Undefined };

std::string relation_name(Relation r);
std::string truth_name(Truth t);
bool is_list_relation(Relation r);

// q embeds order-preservingly into p.
bool subseq_le(const std::vector<Position>& q, const std::vector<Position>& p);

// Throws std::invalid_argument when a list relation meets a clock without steps.
bool relate(const Clock& a, const Clock& b, Relation r);

Truth compare_at(const ClockTree& a, const ClockTree& b, const TreePath& path, Relation r);

// The trees have the same unannotated shape and r holds at every node.
// False is definite: it comes from a resolved node pair. Unknown nodes
// make the answer Undefined otherwise.
Truth holds_globally(const ClockTree& a, const ClockTree& b, Relation r);

struct EventualResult {
  Truth truth = Truth::Undefined;
  // Smallest depth from which r holds at every node seen.
  std::size_t level = 0;
  // Every layer was explored: the answer covers all depths.
  bool certified = false;
  std::size_t depth_explored = 0;
  std::optional<TreePath> witness;
};

// Decides r from some depth on by iterating the sets of node pairs per depth
// until a set repeats.
EventualResult holds_eventually(const ClockTree& a, const ClockTree& b, Relation r);

enum class Conclusion { Inconvertible, Inconclusive };
enum class Justification { None, DifferentBT, SimpleEventualMismatch, SimpleNoImprovement, GeneralNoReductImproves };

std::string conclusion_name(Conclusion c);
std::string justification_name(Justification j);

struct Evidence {
  std::size_t depth = 0;
  std::optional<std::size_t> level;
  bool m_closed = false;
  bool n_closed = false;
  bool m_simple = false;
  bool n_simple = false;
  std::optional<TreePath> witness;
  std::optional<Term> m_reduct;
  std::optional<Term> n_reduct;
  std::size_t reducts_checked = 0;
  // A reduct of m whose tree improves on n's, or could not be ruled out.
  std::optional<Term> improver;
  std::string note;
};

struct Verdict {
  Conclusion conclusion = Conclusion::Inconclusive;
  Justification justification = Justification::None;
  Evidence evidence;
};

nlohmann::json verdict_json(const Verdict& v);

// Certifies that the enumerated reducts of m stand for all of them. Called
// only when none of them improves globally on n.
using ReductCertificate =
    std::function<bool(const Term& m, const Term& n, const std::vector<Term>& reducts)>;

struct DiscriminateConfig {
  std::size_t depth = kDefaultDepth;
  std::size_t fuel = kDefaultFuel;
  bool atomic = false;
  // Leftmost reduction steps tried when looking for simple reducts.
  std::size_t pre_steps = 64;
  std::size_t inner_fuel = 200;
  // Reducts supplied by the caller; used only if joinable with the term.
  std::vector<Term> m_reducts;
  std::vector<Term> n_reducts;
  std::size_t reduct_bound = 2000;
  std::size_t size_cap = 500;
  // Depth of the trees built for enumerated reducts.
  std::size_t reduct_depth = 6;
  ReductCertificate certificate;
};

Verdict discriminate(const Term& m, const Term& n, const DiscriminateConfig& config = {});

// A reduct of t that is simple with a closed compact tree, found along the
// leftmost reduction sequence, possibly after normalizing inner subterms.
std::optional<Term> simple_reduct(const Term& t, const DiscriminateConfig& config);

}  // namespace bohm
