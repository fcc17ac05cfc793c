#include "properties.hpp"

#include <algorithm>

#include "bohm/catalog.hpp"
#include "bohm/compare.hpp"

namespace bohm::checks {

namespace {

constexpr std::size_t kDepth = 5;
constexpr std::size_t kFuel = 300;
constexpr std::size_t kSizeCap = 400;

const std::vector<std::string>& seeds() {
  static const std::vector<std::string> list = {
      "Y0 f", "Y1 f", "Y2 x", "Y3 x", "theta theta I x", "theta theta S I x", "U2 x", "E1", "E3",
      "S S S I x", "\\x.x (I x) (K x y)", "Y0 (\\f n.n (f n))", "B Y0 S I x", "eta eta (K x)",
      "(\\x.x x) (\\y z.z (y y))", "Y1 (\\f.\\a.a f a)", "S (K x) I y", "omega (\\w z.z (w w))"};
  return list;
}

const std::vector<std::string>& atoms() {
  static const std::vector<std::string> list = {"I", "K", "S", "B", "Y0", "Y1", "delta", "eta",
                                                "omega", "theta", "x", "y", "f"};
  return list;
}

Term prelude_term(const std::string& text) { return parse(text, prelude()); }

void walk_pair(const ClockTree& a, NodeId x, const ClockTree& b, NodeId y, std::size_t& differing) {
  const TreeNode& p = a.node(a.follow(x));
  const TreeNode& q = b.node(b.follow(y));
  if (!p.clock || !q.clock) return;
  if (p.clock->count != q.clock->count) ++differing;
  std::size_t arity = std::min(p.children.size(), q.children.size());
  for (std::size_t i = 0; i < arity; ++i) walk_pair(a, p.children[i], b, q.children[i], differing);
}

}  // namespace

Term random_term(std::mt19937& rng, int depth, std::uint32_t binders) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 5);
  int choice = pick(rng);
  if (choice <= 1) {
    if (binders > 0 && (choice == 0 || rng() % 3 != 0))
      return Term::bound(static_cast<std::uint32_t>(rng() % binders), "v");
    static const char* names[] = {"x", "y", "f"};
    return Term::free(names[rng() % 3]);
  }
  if (choice == 2) return Term::lambda("v", random_term(rng, depth - 1, binders + 1));
  if (choice == 3) {
    Term body = random_term(rng, depth - 1, binders + 1);
    return Term::apply(Term::lambda("v", body), random_term(rng, depth - 2, binders));
  }
  return Term::apply(random_term(rng, depth - 1, binders), random_term(rng, depth - 1, binders));
}

Term corpus_term(std::mt19937& rng) {
  switch (rng() % 3) {
    case 0: return prelude_term(seeds()[rng() % seeds().size()]);
    case 1: {
      Term t = prelude_term(atoms()[rng() % atoms().size()]);
      for (std::size_t k = 1 + rng() % 4; k > 0; --k) t = Term::apply(t, prelude_term(atoms()[rng() % atoms().size()]));
      return t;
    }
    default: return random_term(rng, 6);
  }
}

Term random_reduction(const Term& t, std::size_t steps, std::mt19937& rng, std::size_t* performed) {
  Term current = t;
  std::size_t done = 0;
  for (; done < steps; ++done) {
    auto redexes = redex_positions(current);
    if (redexes.empty()) break;
    Term next = contract_at(current, redexes[rng() % redexes.size()]);
    if (next.size() > kSizeCap) break;
    current = next;
  }
  if (performed) *performed = done;
  return current;
}

std::size_t differing_annotations(const Term& m, const Term& n, std::size_t depth, std::size_t fuel) {
  auto a = clocked_bt(m, depth, fuel);
  auto b = clocked_bt(n, depth, fuel);
  std::size_t differing = 0;
  walk_pair(a, 0, b, 0, differing);
  return differing;
}

PropertyResult check_acceleration(unsigned seed, std::size_t cases, bool atomic) {
  std::mt19937 rng(seed);
  PropertyResult r;
  Relation relation = atomic ? Relation::SubseqLE : Relation::LE;
  while (r.cases < cases) {
    Term m = corpus_term(rng);
    std::size_t done = 0;
    Term n = random_reduction(m, 1 + rng() % 4, rng, &done);
    if (done == 0) continue;
    ++r.cases;
    auto tm = clocked_bt(m, kDepth, kFuel, atomic);
    auto tn = clocked_bt(n, kDepth, kFuel, atomic);
    if (holds_globally(tn, tm, relation) == Truth::False) r.fail(pretty(m) + "  ->>  " + pretty(n));
  }
  return r;
}

PropertyResult check_simple_invariance(unsigned seed, std::size_t cases) {
  std::mt19937 rng(seed);
  PropertyResult r;
  while (r.cases < cases) {
    Term m = corpus_term(rng);
    if (check_simple(m, kDepth, kFuel).status != SimplicityStatus::Simple) continue;
    std::size_t done = 0;
    Term n = random_reduction(m, 1 + rng() % 3, rng, &done);
    if (done == 0) continue;
    ++r.cases;
    std::size_t differing = differing_annotations(m, n, kDepth, kFuel);
    if (differing > done)
      r.fail(pretty(m) + "  ->" + std::to_string(done) + "  " + pretty(n) + ": " + std::to_string(differing) +
             " annotations differ");
  }
  return r;
}

PropertyResult check_subseq_laws(unsigned seed, std::size_t cases) {
  std::mt19937 rng(seed);
  PropertyResult r;
  const char* alphabet[] = {"e", "1", "11", "2", "12"};
  auto list = [&] {
    std::vector<Position> out(rng() % 7);
    for (auto& p : out) p = Position::parse(alphabet[rng() % 5]);
    return out;
  };
  for (; r.cases < cases; ++r.cases) {
    auto a = list(), b = list(), c = list();
    if (!subseq_le(a, a)) r.fail("reflexivity");
    if (subseq_le(a, b) && subseq_le(b, a) && a != b) r.fail("antisymmetry");
    if (subseq_le(a, b) && subseq_le(b, c) && !subseq_le(a, c)) r.fail("transitivity");
  }
  return r;
}

PropertyResult check_round_trip(unsigned seed, std::size_t cases) {
  std::mt19937 rng(seed);
  PropertyResult r;
  for (; r.cases < cases; ++r.cases) {
    Term t = random_term(rng, 7);
    std::string text = pretty(t);
    try {
      Term back = parse(text);
      if (!(back == t) || pretty(back) != text) r.fail(text);
    } catch (const ParseError& e) {
      r.fail(text + ": " + e.what());
    }
  }
  return r;
}

PropertyResult check_balance_preservation(unsigned seed, std::size_t cases) {
  std::mt19937 rng(seed);
  PropertyResult r;
  while (r.cases < cases) {
    LabeledTerm lt = label_plotkin_a(prelude_term(rng() % 2 ? "Y1" : "Y0"));
    for (int step = 0; step < 5 && r.cases < cases; ++step) {
      Term next = rng() % 4 == 0 ? gross_knuth(lt.term) : symmetric_development(lt, rng);
      if (next.size() > 4000) break;
      lt.term = next;
      ++r.cases;
      if (!is_balanced(lt)) r.fail(pretty(lt.term));
    }
  }
  return r;
}

PropertyResult check_verdict_soundness(unsigned seed, std::size_t pairs) {
  std::mt19937 rng(seed);
  PropertyResult r;
  DiscriminateConfig config;
  config.depth = 6;
  config.reduct_bound = 50;
  config.reduct_depth = 4;
  config.pre_steps = 16;
  config.fuel = kFuel;
  JoinBudget budget;
  budget.max_terms = 500;
  for (std::size_t attempts = 0; r.cases < pairs && attempts < 10 * pairs; ++attempts) {
    Term t = corpus_term(rng);
    Term a = random_reduction(t, rng() % 3, rng);
    Term b = random_reduction(t, 1 + rng() % 3, rng);
    if (!find_common_reduct(a, b, budget)) continue;
    ++r.cases;
    config.atomic = rng() % 4 == 0;
    auto v = discriminate(a, b, config);
    if (v.conclusion == Conclusion::Inconvertible)
      r.fail(pretty(a) + "  vs  " + pretty(b) + ": " + justification_name(v.justification));
  }
  return r;
}

}  // namespace bohm::checks
