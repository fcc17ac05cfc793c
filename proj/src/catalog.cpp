#include "bohm/catalog.hpp"

#include <charconv>
#include <stdexcept>

#include "bohm/reduction.hpp"

namespace bohm {

namespace {

const DefinitionTable& base() {
  static const DefinitionTable table = parse_definitions(R"(
    I = \x.x;
    K = \x y.x;
    S = \x y z.x z (y z);
    B = \x y z.x (y z);
    A = B S;
    SS = \a b c.b c (a b c);
    delta = \a b.b (a b);
    omega = \x.x x;
    Omega = omega omega;
    eta = \x f.f (x x f);
    theta = \a b c.b c (a a b c);
    Y0 = \f.(\x.f (x x)) (\x.f (x x));
    Y1 = eta eta;
  )");
  return table;
}

Term P(std::string_view text) { return parse(text, base()); }

Term append_copies(Term t, const Term& x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) t = Term::apply(std::move(t), x);
  return t;
}

std::size_t to_count(const std::string& text) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::invalid_argument("expected a non-negative integer, got '" + text + "'");
  return value;
}

// Abstracts the named free variables, outermost first.
Term abstract_all(const std::vector<std::string>& names, Term body) {
  for (auto it = names.rbegin(); it != names.rend(); ++it) body = abstract(body, *it);
  return body;
}

}  // namespace

Term combinator(std::string_view name) {
  if (const Term* t = base().find(name)) return *t;
  throw std::invalid_argument("unknown combinator '" + std::string(name) + "'");
}

Term omega_of(const Term& f) {
  std::string x = fresh_name("x", free_vars(f));
  Term xx = Term::apply(Term::free(x), Term::free(x));
  return Term::lambda(x, abstract(Term::apply(f, xx), x).body());
}

Term bohm_seq(std::size_t n) {
  if (n == 0) return combinator("Y0");
  return append_copies(combinator("Y1"), combinator("delta"), n - 1);
}

Term scott_seq(std::size_t n) {
  Term t = Term::apply(combinator("B"), combinator("Y0"));
  return Term::apply(append_copies(std::move(t), combinator("S"), n), combinator("I"));
}

Term gvector(const Term& y, std::size_t n) {
  Term ss = Term::apply(combinator("S"), combinator("S"));
  return Term::apply(append_copies(Term::apply(y, ss), combinator("S"), n), combinator("I"));
}

Term bbb_scheme(const Term& y, std::size_t n) {
  Term t = apply_all(combinator("B"), {combinator("B"), combinator("B"), y});
  t = append_copies(std::move(t), combinator("A"), n);
  return append_copies(std::move(t), combinator("I"), 2);
}

Term dummy_scheme(const Term& y, const std::vector<Term>& dummies) {
  // Q = λy p1..pn x.x (y p1..pn x)
  std::vector<std::string> binders{"y"};
  std::vector<Term> args;
  for (std::size_t i = 1; i <= dummies.size(); ++i) {
    binders.push_back("p" + std::to_string(i));
    args.push_back(Term::free(binders.back()));
  }
  binders.push_back("x");
  args.push_back(Term::free("x"));
  Term body = Term::apply(Term::free("x"), apply_all(Term::free("y"), args));
  Term q = abstract_all(binders, body);
  return apply_all(y, [&] {
    std::vector<Term> all{q};
    all.insert(all.end(), dummies.begin(), dummies.end());
    return all;
  }());
}

Term theta() {
  return *normalize(omega_of(Term::apply(combinator("S"), combinator("S"))));
}

namespace {

// Binder names for the Plotkin terms that capture nothing from y or f.
std::pair<std::string, std::string> plotkin_binders(const Term& y, const std::string& f, const char* first,
                                                    const char* second) {
  auto taken = free_vars(y);
  taken.insert(f);
  std::string a = fresh_name(first, taken);
  taken.insert(a);
  return {a, fresh_name(second, taken)};
}

}  // namespace

Term plotkin_a(const Term& y, const std::string& f) {
  std::string z = plotkin_binders(y, f, "z", "z").first;
  return Term::apply(y, abstract_all({z}, apply_all(Term::free(f), {Term::free(z), Term::free(z)})));
}

Term plotkin_b(const Term& y, const std::string& f) {
  auto [x, v] = plotkin_binders(y, f, "x", "y");
  Term inner = Term::apply(y, abstract_all({v}, apply_all(Term::free(f), {Term::free(x), Term::free(v)})));
  return Term::apply(y, abstract_all({x}, inner));
}

Term plotkin_bprime(const Term& y, const std::string& f) {
  auto [x, v] = plotkin_binders(y, f, "x", "y");
  Term fx = Term::apply(Term::free(f), Term::free(x));
  Term inner = Term::apply(y, abstract_all({v}, Term::apply(fx, Term::free(v))));
  Term body = Term::apply(fx, Term::apply(fx, inner));
  return Term::apply(y, abstract_all({x}, body));
}

Term enumerator(int which) {
  switch (which) {
    case 1: return P("omega (\\w.\\z.z (\\a b c.a b ((w w b) (w w c))))");
    case 2: return P("omega (\\w.\\z.z (\\a b c.a b (S (\\z.z b) (\\z.z c) (w w))))");
    case 3: return P("\\z.z (omega (\\w a b c.a b (S b c (w w))))");
    default: throw std::invalid_argument("enumerators are numbered 1 to 3");
  }
}

Term scott_composite(const std::vector<std::size_t>& ns) {
  Term t = combinator("Y0");
  Term ss = Term::apply(combinator("S"), combinator("S"));
  for (auto n : ns) {
    t = append_copies(Term::apply(std::move(t), ss), combinator("S"), n);
    t = Term::apply(std::move(t), combinator("I"));
  }
  return t;
}

Term scott_composite_reduct(const std::vector<std::size_t>& ns) {
  if (ns.empty()) throw std::invalid_argument("scott composite needs at least one count");
  Term th = theta();
  Term t = append_copies(Term::apply(th, th), combinator("S"), ns.front());
  t = Term::apply(std::move(t), combinator("I"));
  for (std::size_t i = 1; i < ns.size(); ++i) {
    t = append_copies(Term::apply(std::move(t), combinator("SS")), combinator("S"), ns[i]);
    t = Term::apply(std::move(t), combinator("I"));
  }
  return t;
}

Term wfpc_flipflop() {
  Term f = P("\\f g x.x (g f g x)");
  Term g = P("\\f g x.x (f f g x)");
  return apply_all(f, {f, g});
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"i", "", "identity"},
      {"k", "", "λx y.x"},
      {"s", "", "λx y z.x z (y z)"},
      {"b", "", "λx y z.x (y z)"},
      {"delta", "", "λa b.b (a b), postfixing it to an fpc gives an fpc"},
      {"eta", "", "λx f.f (x x f)"},
      {"theta", "", "normal form of λx.S S (x x)"},
      {"y0", "", "Curry's fpc"},
      {"y1", "", "Turing's fpc η η"},
      {"bohm-seq", "N", "Y1 followed by N-1 copies of delta (N = 0 gives Y0)"},
      {"scott-seq", "N", "B Y0 S..S I with N copies of S"},
      {"gvector", "Y N", "Y (S S) S..S I with N copies of S"},
      {"bbb-scheme", "Y N", "B B B Y A..A I I with N copies of A = B S"},
      {"dummy-scheme", "Y P...", "Y Q P1..Pn with Q = λy p1..pn x.x (y p1..pn x)"},
      {"e1", "", "CL enumerator with ww applied inside"},
      {"e2", "", "CL enumerator built with S"},
      {"e3", "", "CL enumerator with the pairing outside"},
      {"plotkin-a", "Y", "Y (λz.f z z)"},
      {"plotkin-b", "Y", "Y (λx.Y (λy.f x y))"},
      {"plotkin-bprime", "Y", "Y (λx.f x (f x (Y (λy.f x y))))"},
      {"scott-composite", "N...", "Y0 G_n1 .. G_nk with G_n = [ ] (S S) S..S I"},
      {"scott-composite-reduct", "N...", "θ θ G'_n1 G*_n2 .. G*_nk"},
      {"wfpc-flipflop", "", "F F G, a looping combinator alternating two forms"},
  };
  return entries;
}

Term catalog(std::string_view name, const std::vector<std::string>& args) {
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi)
      throw std::invalid_argument("bad arity for catalog entry '" + std::string(name) + "'");
  };
  auto term_arg = [&](std::size_t i) { return parse(args.at(i), prelude()); };
  auto counts = [&] {
    std::vector<std::size_t> out;
    for (const auto& a : args) out.push_back(to_count(a));
    return out;
  };
  static const std::vector<std::pair<std::string_view, std::string_view>> plain = {
      {"i", "I"}, {"k", "K"}, {"s", "S"}, {"b", "B"}, {"delta", "delta"},
      {"eta", "eta"}, {"y0", "Y0"}, {"y1", "Y1"},
  };
  for (const auto& [key, comb] : plain) {
    if (name != key) continue;
    arity(0, 0);
    return combinator(comb);
  }
  if (name == "theta") return arity(0, 0), theta();
  if (name == "bohm-seq") return arity(1, 1), bohm_seq(to_count(args[0]));
  if (name == "scott-seq") return arity(1, 1), scott_seq(to_count(args[0]));
  if (name == "gvector") return arity(2, 2), gvector(term_arg(0), to_count(args[1]));
  if (name == "bbb-scheme") return arity(2, 2), bbb_scheme(term_arg(0), to_count(args[1]));
  if (name == "dummy-scheme") {
    arity(1, 64);
    std::vector<Term> dummies;
    for (std::size_t i = 1; i < args.size(); ++i) dummies.push_back(term_arg(i));
    return dummy_scheme(term_arg(0), dummies);
  }
  if (name == "e1") return arity(0, 0), enumerator(1);
  if (name == "e2") return arity(0, 0), enumerator(2);
  if (name == "e3") return arity(0, 0), enumerator(3);
  if (name == "plotkin-a") return arity(1, 1), plotkin_a(term_arg(0));
  if (name == "plotkin-b") return arity(1, 1), plotkin_b(term_arg(0));
  if (name == "plotkin-bprime") return arity(1, 1), plotkin_bprime(term_arg(0));
  if (name == "scott-composite") return arity(1, 64), scott_composite(counts());
  if (name == "scott-composite-reduct") return arity(1, 64), scott_composite_reduct(counts());
  if (name == "wfpc-flipflop") return arity(0, 0), wfpc_flipflop();
  throw std::invalid_argument("unknown catalog entry '" + std::string(name) + "'");
}

const DefinitionTable& prelude() {
  static const DefinitionTable table = [] {
    DefinitionTable t;
    for (const char* name : {"I", "K", "S", "B", "A", "SS", "Omega", "omega", "delta", "eta"})
      t.define(name, combinator(name));
    t.define("theta", theta());
    for (std::size_t n = 0; n <= 9; ++n) t.define("Y" + std::to_string(n), bohm_seq(n));
    for (std::size_t n = 0; n <= 9; ++n) t.define("U" + std::to_string(n), scott_seq(n));
    for (int i = 1; i <= 3; ++i) t.define("E" + std::to_string(i), enumerator(i));
    return t;
  }();
  return table;
}

CLTerm CLTerm::k() { return CLTerm(); }

CLTerm CLTerm::s() {
  CLTerm t;
  t.kind_ = Kind::S;
  return t;
}

CLTerm CLTerm::apply(CLTerm fn, CLTerm arg) {
  CLTerm t;
  t.kind_ = Kind::Apply;
  t.pair_ = std::make_shared<const Pair>(Pair{std::move(fn), std::move(arg)});
  return t;
}

const CLTerm& CLTerm::fn() const {
  if (!pair_) throw std::logic_error("not an application");
  return pair_->fn;
}

const CLTerm& CLTerm::arg() const {
  if (!pair_) throw std::logic_error("not an application");
  return pair_->arg;
}

std::string CLTerm::str() const {
  switch (kind_) {
    case Kind::K: return "K";
    case Kind::S: return "S";
    case Kind::Apply: {
      std::string right = arg().str();
      if (arg().kind() == Kind::Apply) right = "(" + right + ")";
      return fn().str() + " " + right;
    }
  }
  return "";
}

Term encode_cl(const CLTerm& m) {
  Term z = Term::free("z");
  switch (m.kind()) {
    case CLTerm::Kind::K:
      return abstract_all({"z"}, apply_all(z, {combinator("K"), combinator("K"), combinator("I")}));
    case CLTerm::Kind::S:
      return abstract_all({"z"}, apply_all(z, {combinator("K"), combinator("S"), combinator("I")}));
    case CLTerm::Kind::Apply: {
      Term ki = Term::apply(combinator("K"), combinator("I"));
      return abstract_all({"z"}, apply_all(z, {ki, encode_cl(m.fn()), encode_cl(m.arg())}));
    }
  }
  return z;
}

Term cl_to_lambda(const CLTerm& m) {
  switch (m.kind()) {
    case CLTerm::Kind::K: return combinator("K");
    case CLTerm::Kind::S: return combinator("S");
    case CLTerm::Kind::Apply: return Term::apply(cl_to_lambda(m.fn()), cl_to_lambda(m.arg()));
  }
  return combinator("K");
}

CLTerm random_cl(std::mt19937& rng, std::size_t max_depth) {
  if (max_depth == 0 || rng() % 3 == 0) return rng() % 2 ? CLTerm::k() : CLTerm::s();
  return CLTerm::apply(random_cl(rng, max_depth - 1), random_cl(rng, max_depth - 1));
}

bool evaluator_check(const Term& e, const CLTerm& m, std::size_t fuel) {
  Term lhs = Term::apply(e, encode_cl(m));
  Term rhs = cl_to_lambda(m);
  auto nl = normalize(lhs, fuel);
  auto nr = normalize(rhs, fuel);
  if (nl && nr) return *nl == *nr;
  JoinBudget budget;
  budget.shortcut_fuel = fuel;
  return find_common_reduct(lhs, rhs, budget).has_value();
}

LabeledTerm label_plotkin_a(const Term& y) {
  std::string label = fresh_name("fstar", free_vars(y));
  return {plotkin_a(y, label), label};
}

namespace {

// Matches `label s u`.
const Term* labeled_pair(const Term& t, const std::string& label, const Term** second) {
  if (!t.is_apply() || !t.fn().is_apply()) return nullptr;
  const Term& head = t.fn().fn();
  if (!head.is_free() || head.name() != label) return nullptr;
  *second = &t.arg();
  return &t.fn().arg();
}

void choose_marks(const Term& t, const std::string& label, std::vector<std::uint8_t>& path, std::mt19937& rng,
                  std::vector<Position>& out) {
  const Term* u = nullptr;
  if (const Term* s = labeled_pair(t, label, &u); s && *s == *u) {
    std::vector<std::uint8_t> inner;
    std::vector<Position> sub;
    choose_marks(*s, label, inner, rng, sub);
    Position here(path);
    for (const auto& p : sub) {
      out.push_back(here + Position({1, 2}) + p);
      out.push_back(here + Position({2}) + p);
    }
    return;
  }
  switch (t.kind()) {
    case TermKind::Bound:
    case TermKind::Free: return;
    case TermKind::Lambda:
      path.push_back(0);
      choose_marks(t.body(), label, path, rng, out);
      path.pop_back();
      return;
    case TermKind::Apply:
      if (t.fn().is_lambda() && rng() % 2) out.emplace_back(path);
      path.push_back(1);
      choose_marks(t.fn(), label, path, rng, out);
      path.back() = 2;
      choose_marks(t.arg(), label, path, rng, out);
      path.pop_back();
      return;
  }
}

}  // namespace

bool is_balanced(const LabeledTerm& t) {
  std::vector<const Term*> work{&t.term};
  while (!work.empty()) {
    const Term* cur = work.back();
    work.pop_back();
    const Term* u = nullptr;
    if (const Term* s = labeled_pair(*cur, t.label, &u); s && !(*s == *u)) return false;
    if (cur->is_lambda()) work.push_back(&cur->body());
    if (cur->is_apply()) {
      work.push_back(&cur->fn());
      work.push_back(&cur->arg());
    }
  }
  return true;
}

std::vector<SpineClock> spine_right_clocks(const LabeledTerm& t, std::size_t depth, std::size_t fuel) {
  std::vector<SpineClock> out;
  Term cur = t.term;
  Position prefix;
  for (std::size_t k = 0; k < depth; ++k) {
    auto hnf = head_reduce(cur, HeadTarget::Hnf, fuel);
    if (!hnf.resolved()) break;
    const Term* right = nullptr;
    const Term* left = labeled_pair(*hnf.result, t.label, &right);
    if (!left) break;
    auto rc = head_reduce(*right, HeadTarget::Hnf, fuel);
    SpineClock sc;
    sc.position = prefix + Position({2});
    if (rc.resolved()) sc.clock = rc.count();
    out.push_back(std::move(sc));
    if (!rc.resolved()) break;
    prefix.append(Position({1, 2}));
    cur = *left;
  }
  return out;
}

std::optional<PlotkinWitness> plotkin_nonzero_witness(const LabeledTerm& t, std::size_t depth, std::size_t fuel) {
  for (const auto& sc : spine_right_clocks(t, depth, fuel))
    if (sc.clock && *sc.clock > 0) return PlotkinWitness{sc.position, *sc.clock};
  return std::nullopt;
}

Term symmetric_development(const LabeledTerm& t, std::mt19937& rng) {
  std::vector<std::uint8_t> path;
  std::vector<Position> marks;
  choose_marks(t.term, t.label, path, rng, marks);
  return develop(t.term, marks);
}

ReductCertificate plotkin_certificate(std::size_t depth, std::size_t fuel) {
  return [depth, fuel](const Term& m, const Term& n, const std::vector<Term>& reducts) {
    // m must be y (λz.f z z) with y closed, so every f in a reduct descends
    // from the displayed one.
    if (!m.is_apply() || !free_vars(m.fn()).empty()) return false;
    const Term& arg = m.arg();
    if (!arg.is_lambda()) return false;
    const Term& body = arg.body();
    const Term* second = nullptr;
    if (!body.is_apply() || !body.fn().is_apply() || !body.fn().fn().is_free()) return false;
    std::string f = body.fn().fn().name();
    const Term* first = labeled_pair(body, f, &second);
    if (!first || !first->is_bound() || first->index() != 0 || !second->is_bound() || second->index() != 0)
      return false;
    if (!reducing_fpc_order(m.fn(), fuel) && !has_fpc_spine(m.fn(), depth, fuel)) return false;

    auto clocks = spine_right_clocks({n, f}, depth, fuel);
    if (clocks.size() < depth) return false;
    for (const auto& c : clocks)
      if (!c.clock || *c.clock != 0) return false;
    for (const auto& r : reducts) {
      LabeledTerm lr{r, f};
      if (is_balanced(lr) && !plotkin_nonzero_witness(lr, depth, fuel)) return false;
    }
    return true;
  };
}

bool has_fpc_spine(const Term& y, std::size_t depth, std::size_t fuel) {
  Term x = Term::free(fresh_name("x", free_vars(y)));
  Term cur = Term::apply(y, x);
  for (std::size_t k = 0; k < depth; ++k) {
    auto out = head_reduce(cur, HeadTarget::Hnf, fuel);
    if (!out.resolved()) return false;
    const Term& r = *out.result;
    if (!r.is_apply() || !(r.fn() == x)) return false;
    cur = r.arg();
  }
  return true;
}

std::size_t rise_fall_count(const std::vector<Position>& steps) {
  std::vector<long> ones;
  for (const auto& p : steps) {
    bool all_ones = std::all_of(p.steps().begin(), p.steps().end(), [](std::uint8_t s) { return s == 1; });
    ones.push_back(all_ones ? static_cast<long>(p.size()) : -100);
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i + 4 < ones.size(); ++i) {
    long l = ones[i];
    if (l < 2) continue;
    if (ones[i + 1] == l + 1 && ones[i + 2] == l && ones[i + 3] == l - 1 && ones[i + 4] == l - 2) ++count;
  }
  return count;
}

}  // namespace bohm
