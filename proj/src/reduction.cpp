#include "bohm/reduction.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

namespace bohm {

namespace {

using TermSet = std::unordered_set<Term, TermHash>;

// λx1..xn. head a1 .. am
struct Spine {
  std::vector<std::string> binders;
  Term head;
  std::vector<Term> args;
};

Spine decompose(const Term& t, bool under_binders) {
  std::vector<std::string> binders;
  const Term* cur = &t;
  if (under_binders) {
    while (cur->is_lambda()) {
      binders.push_back(cur->name());
      cur = &cur->body();
    }
  }
  std::vector<Term> args;
  while (cur->is_apply()) {
    args.push_back(cur->arg());
    cur = &cur->fn();
  }
  std::reverse(args.begin(), args.end());
  return {std::move(binders), *cur, std::move(args)};
}

const Term& matrix(const Term& t) {
  const Term* cur = &t;
  while (cur->is_lambda()) cur = &cur->body();
  return *cur;
}

// One head step at the level selected by `under_binders`.
std::optional<std::pair<Term, Position>> head_step(const Term& t, bool under_binders) {
  Spine s = decompose(t, under_binders);
  if (!s.head.is_lambda() || s.args.empty()) return std::nullopt;
  Term reduced = instantiate(s.head.body(), s.args.front());
  for (std::size_t i = 1; i < s.args.size(); ++i) reduced = Term::apply(std::move(reduced), s.args[i]);
  std::vector<std::uint8_t> steps(s.binders.size(), 0);
  steps.insert(steps.end(), s.args.size() - 1, 1);
  return std::make_pair(lambdas(s.binders, std::move(reduced)), Position(std::move(steps)));
}

Position prefixed(std::uint8_t step, const Position& p) {
  std::vector<std::uint8_t> steps{step};
  steps.insert(steps.end(), p.steps().begin(), p.steps().end());
  return Position(std::move(steps));
}

class Reducer {
 public:
  Reducer(const HeadOptions& options) : options_(options), fuel_left_(options.fuel) {}

  HeadOutcome run(const Term& start, HeadTarget target) {
    if (target == HeadTarget::RootStable) return root_stable(start);
    return head_normal(start, target == HeadTarget::Hnf);
  }

 private:
  HeadOutcome head_normal(const Term& start, bool under_binders) {
    HeadOutcome out;
    TermSet seen;
    Term t = start;
    while (true) {
      if (!under_binders && t.is_lambda()) return resolved(std::move(out), t);
      const Term& key = under_binders ? matrix(t) : t;
      if (seen.size() < options_.trace_cap && !seen.insert(key).second) {
        if (options_.keep_trace) out.trace.push_back(t);
        out.kind = OutcomeKind::ProvenDivergent;
        return out;
      }
      auto step = head_step(t, under_binders);
      if (!step) return resolved(std::move(out), t);
      if (fuel_left_ == 0) {
        out.kind = OutcomeKind::FuelExhausted;
        return out;
      }
      --fuel_left_;
      if (options_.keep_trace) out.trace.push_back(t);
      out.steps.push_back(std::move(step->second));
      t = std::move(step->first);
      if (t.size() > options_.size_cap) {
        out.kind = OutcomeKind::FuelExhausted;
        return out;
      }
    }
  }

  HeadOutcome root_stable(const Term& start) {
    HeadOutcome out;
    TermSet seen;
    Term t = start;
    while (true) {
      if (!t.is_apply()) return resolved(std::move(out), t);
      if (seen.size() < options_.trace_cap && !seen.insert(t).second) {
        if (options_.keep_trace) out.trace.push_back(t);
        out.kind = OutcomeKind::ProvenDivergent;
        return out;
      }
      // The application is root-stable unless its function side can become
      // an abstraction, which head reduction to whnf decides.
      HeadOutcome side = head_normal(t.fn(), false);
      if (side.kind == OutcomeKind::ProvenDivergent) return resolved(std::move(out), t);
      if (side.kind == OutcomeKind::FuelExhausted) {
        out.kind = OutcomeKind::FuelExhausted;
        return out;
      }
      if (!side.result->is_lambda()) return resolved(std::move(out), t);
      for (std::size_t i = 0; i < side.steps.size(); ++i) {
        if (options_.keep_trace) out.trace.push_back(Term::apply(side.trace[i], t.arg()));
        out.steps.push_back(prefixed(1, side.steps[i]));
      }
      Term redex = Term::apply(*side.result, t.arg());
      if (fuel_left_ == 0) {
        out.kind = OutcomeKind::FuelExhausted;
        return out;
      }
      --fuel_left_;
      if (options_.keep_trace) out.trace.push_back(redex);
      out.steps.push_back(Position{});
      t = instantiate(side.result->body(), t.arg());
      if (t.size() > options_.size_cap) {
        out.kind = OutcomeKind::FuelExhausted;
        return out;
      }
    }
  }

  static HeadOutcome resolved(HeadOutcome out, const Term& t) {
    out.kind = OutcomeKind::Resolved;
    out.result = t;
    return out;
  }

  HeadOptions options_;
  std::size_t fuel_left_;
};

void collect_redexes(const Term& t, std::vector<std::uint8_t>& path, std::vector<Position>& out) {
  switch (t.kind()) {
    case TermKind::Bound:
    case TermKind::Free: return;
    case TermKind::Lambda:
      path.push_back(0);
      collect_redexes(t.body(), path, out);
      path.pop_back();
      return;
    case TermKind::Apply:
      if (t.fn().is_lambda()) out.emplace_back(path);
      path.push_back(1);
      collect_redexes(t.fn(), path, out);
      path.back() = 2;
      collect_redexes(t.arg(), path, out);
      path.pop_back();
      return;
  }
}

Term develop_rec(const Term& t, std::vector<std::uint8_t>& path, const std::set<Position>* marks) {
  switch (t.kind()) {
    case TermKind::Bound:
    case TermKind::Free: return t;
    case TermKind::Lambda: {
      path.push_back(0);
      Term body = develop_rec(t.body(), path, marks);
      path.pop_back();
      return body.same_node(t.body()) ? t : Term::lambda(t.name(), std::move(body));
    }
    case TermKind::Apply: {
      bool marked = marks ? marks->count(Position(path)) > 0 : t.fn().is_lambda();
      if (marked) {
        if (!t.fn().is_lambda()) throw std::invalid_argument("not a redex at " + Position(path).str());
        path.push_back(1);
        path.push_back(0);
        Term body = develop_rec(t.fn().body(), path, marks);
        path.pop_back();
        path.back() = 2;
        Term arg = develop_rec(t.arg(), path, marks);
        path.pop_back();
        return instantiate(body, arg);
      }
      path.push_back(1);
      Term fn = develop_rec(t.fn(), path, marks);
      path.back() = 2;
      Term arg = develop_rec(t.arg(), path, marks);
      path.pop_back();
      if (fn.same_node(t.fn()) && arg.same_node(t.arg())) return t;
      return Term::apply(std::move(fn), std::move(arg));
    }
  }
  return t;
}

constexpr std::size_t kNormalizeSizeCap = 1u << 20;

std::optional<Term> normalize_rec(const Term& t, std::size_t& fuel) {
  HeadOptions options;
  options.fuel = fuel;
  HeadOutcome head = head_reduce(t, HeadTarget::Hnf, options);
  fuel -= std::min(fuel, head.count());
  if (!head.resolved() || head.result->size() > kNormalizeSizeCap) return std::nullopt;
  Spine s = decompose(*head.result, true);
  Term out = s.head;
  for (const auto& a : s.args) {
    auto nf = normalize_rec(a, fuel);
    if (!nf) return std::nullopt;
    out = Term::apply(std::move(out), *nf);
  }
  return lambdas(s.binders, std::move(out));
}

}  // namespace

std::optional<Position> head_redex_position(const Term& t) {
  auto step = head_step(t, true);
  if (!step) return std::nullopt;
  return step->second;
}

bool is_hnf(const Term& t) { return !head_step(t, true).has_value(); }

bool is_whnf(const Term& t) { return t.is_lambda() || !head_step(t, false).has_value(); }

bool is_redex(const Term& t) { return t.is_apply() && t.fn().is_lambda(); }

Term contract_at(const Term& t, const Position& p) {
  Term r = subterm_at(t, p);
  if (!is_redex(r)) throw std::invalid_argument("no redex at position " + p.str());
  return replace_at(t, p, instantiate(r.fn().body(), r.arg()));
}

HeadOutcome head_reduce(const Term& t, HeadTarget target, const HeadOptions& options) {
  return Reducer(options).run(t, target);
}

HeadOutcome head_reduce(const Term& t, HeadTarget target, std::size_t fuel) {
  HeadOptions options;
  options.fuel = fuel;
  return head_reduce(t, target, options);
}

std::vector<Position> redex_positions(const Term& t) {
  std::vector<Position> out;
  std::vector<std::uint8_t> path;
  collect_redexes(t, path, out);
  return out;
}

bool is_normal_form(const Term& t) {
  switch (t.kind()) {
    case TermKind::Bound:
    case TermKind::Free: return true;
    case TermKind::Lambda: return is_normal_form(t.body());
    case TermKind::Apply: return !t.fn().is_lambda() && is_normal_form(t.fn()) && is_normal_form(t.arg());
  }
  return true;
}

std::vector<Term> one_step_reducts(const Term& t) {
  std::vector<Term> out;
  for (const auto& p : redex_positions(t)) out.push_back(contract_at(t, p));
  return out;
}

Term develop(const Term& t, const std::vector<Position>& redexes) {
  std::set<Position> marks(redexes.begin(), redexes.end());
  for (const auto& p : marks) {
    auto r = try_subterm_at(t, p);
    if (!r || !is_redex(*r)) throw std::invalid_argument("not a redex at " + p.str());
  }
  std::vector<std::uint8_t> path;
  return develop_rec(t, path, &marks);
}

Term gross_knuth(const Term& t) {
  std::vector<std::uint8_t> path;
  return develop_rec(t, path, nullptr);
}

RedexClass classify_redex(const Term& t, const Position& p) {
  Term r = subterm_at(t, p);
  if (!is_redex(r)) throw std::invalid_argument("no redex at position " + p.str());
  RedexClass c;
  c.linear = count_index(r.fn().body(), 0) <= 1;
  c.call_by_value = is_normal_form(r.arg());
  return c;
}

std::optional<Term> normalize(const Term& t, std::size_t fuel) { return normalize_rec(t, fuel); }

Term normalize_inner(const Term& t, std::size_t fuel) {
  if (auto nf = normalize(t, fuel)) return *nf;
  switch (t.kind()) {
    case TermKind::Bound:
    case TermKind::Free: return t;
    case TermKind::Lambda: return Term::lambda(t.name(), normalize_inner(t.body(), fuel));
    case TermKind::Apply:
      return Term::apply(normalize_inner(t.fn(), fuel), normalize_inner(t.arg(), fuel));
  }
  return t;
}

std::optional<std::size_t> reducing_fpc_order(const Term& y, std::size_t fuel) {
  Term x = Term::free(fresh_name("x", free_vars(y)));
  Term yx = Term::apply(y, x);
  HeadOutcome out = head_reduce(yx, HeadTarget::Hnf, fuel);
  if (out.resolved() && *out.result == Term::apply(x, yx)) return out.count();
  return std::nullopt;
}

std::optional<Term> find_common_reduct(const Term& a, const Term& b, const JoinBudget& budget) {
  if (a == b) return a;
  std::vector<Term> seeds_a{a}, seeds_b{b};
  if (budget.shortcuts) {
    auto na = normalize(a, budget.shortcut_fuel);
    auto nb = normalize(b, budget.shortcut_fuel);
    if (na && nb && *na == *nb) return na;
    seeds_a.push_back(normalize_inner(a, budget.shortcut_fuel / 10));
    seeds_b.push_back(normalize_inner(b, budget.shortcut_fuel / 10));
  }

  TermSet seen[2];
  std::vector<Term> frontier[2];
  for (int side = 0; side < 2; ++side) {
    for (const auto& s : side == 0 ? seeds_a : seeds_b) {
      if (seen[1 - side].count(s)) return s;
      if (seen[side].insert(s).second) frontier[side].push_back(s);
    }
  }
  std::size_t total = seen[0].size() + seen[1].size();
  while (total < budget.max_terms && (!frontier[0].empty() || !frontier[1].empty())) {
    int side = frontier[0].empty() ? 1
               : frontier[1].empty() ? 0
               : (seen[0].size() <= seen[1].size() ? 0 : 1);
    std::vector<Term> next;
    for (const auto& t : frontier[side]) {
      for (auto& r : one_step_reducts(t)) {
        if (r.size() > budget.size_cap) continue;
        if (seen[1 - side].count(r)) return r;
        if (seen[side].insert(r).second) {
          next.push_back(std::move(r));
          if (++total >= budget.max_terms) return std::nullopt;
        }
      }
    }
    frontier[side] = std::move(next);
  }
  return std::nullopt;
}

}  // namespace bohm
