#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bohm/term.hpp"

namespace bohm {

inline constexpr std::size_t kDefaultFuel = 10000;
inline constexpr std::size_t kDefaultTraceCap = 10000;
// Head reduction gives up, as if out of fuel, once a reduct grows past this.
inline constexpr std::size_t kDefaultSizeCap = std::size_t{1} << 18;

enum class HeadTarget { Hnf, Whnf, RootStable };

enum class OutcomeKind { Resolved, ProvenDivergent, FuelExhausted };

struct HeadOutcome {
  OutcomeKind kind = OutcomeKind::FuelExhausted;
  // Position of every contracted redex, relative to the reduced term.
  std::vector<Position> steps;
  std::optional<Term> result;
  // Term before each step, filled when a trace was requested. For divergence
  // the trace holds two entries whose matrices (bodies under the leading
  // abstractions for the hnf target, whole terms otherwise) coincide.
  std::vector<Term> trace;

  bool resolved() const { return kind == OutcomeKind::Resolved; }
  std::size_t count() const { return steps.size(); }
};

struct HeadOptions {
  std::size_t fuel = kDefaultFuel;
  std::size_t trace_cap = kDefaultTraceCap;
  std::size_t size_cap = kDefaultSizeCap;
  bool keep_trace = false;
};

// Position 0^n 1^m of the head redex of λx1..xn.(λy.M) N N1..Nm, if any.
std::optional<Position> head_redex_position(const Term& t);
bool is_hnf(const Term& t);
bool is_whnf(const Term& t);

// Contracts the beta-redex at p; throws if p is not a redex.
Term contract_at(const Term& t, const Position& p);

HeadOutcome head_reduce(const Term& t, HeadTarget target, const HeadOptions& options);
HeadOutcome head_reduce(const Term& t, HeadTarget target, std::size_t fuel = kDefaultFuel);

bool is_redex(const Term& t);
std::vector<Position> redex_positions(const Term& t);
bool is_normal_form(const Term& t);
std::vector<Term> one_step_reducts(const Term& t);

// Complete development of the given redex occurrences.
Term develop(const Term& t, const std::vector<Position>& redexes);
Term gross_knuth(const Term& t);

struct RedexClass {
  bool linear = false;
  bool call_by_value = false;
  bool simple() const { return linear || call_by_value; }
};

RedexClass classify_redex(const Term& t, const Position& p);

// Leftmost-outermost normalization; empty on divergence or exhausted fuel.
std::optional<Term> normalize(const Term& t, std::size_t fuel = kDefaultFuel);

// Replaces every subterm that normalizes within `fuel` by its normal form,
// outermost first. The result is always a reduct of t.
Term normalize_inner(const Term& t, std::size_t fuel);

// Smallest k such that `y x` head-reduces in k steps to `x (y x)`.
std::optional<std::size_t> reducing_fpc_order(const Term& y, std::size_t fuel = kDefaultFuel);

struct JoinBudget {
  std::size_t max_terms = 2000;
  std::size_t size_cap = 500;
  // Try normal forms and inner normalization before the breadth-first search.
  bool shortcuts = true;
  std::size_t shortcut_fuel = 2000;
};

// Searches for a common reduct of a and b.
std::optional<Term> find_common_reduct(const Term& a, const Term& b, const JoinBudget& budget = {});

}  // namespace bohm
