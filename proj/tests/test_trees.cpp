#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bohm/clocked_trees.hpp"

using namespace bohm;

namespace {

const DefinitionTable& defs() {
  static const DefinitionTable table = parse_definitions(R"(
    I = \x.x;
    K = \x y.x;
    S = \x y z.x z (y z);
    omega = \x.x x;
    Omega = omega omega;
    eta = \x f.f (x x f);
    B = \x y z.x (y z);
    delta = \a b.b (a b);
    theta = \a b c.b c (a a b c);
    Y0 = \f.(\x.f (x x)) (\x.f (x x));
    Y1 = eta eta;
    P = \x y.x x;
    Q = \x y z.x x;
    E1 = omega (\w.\z.z (\a b c.a b ((w w b) (w w c))));
    E2 = omega (\w.\z.z (\a b c.a b (S (\z.z b) (\z.z c) (w w))));
    E3 = \z.z (omega (\w a b c.a b (S b c (w w))));
  )");
  return table;
}

Term T(const std::string& text) { return parse(text, defs()); }

std::string repeat(const std::string& word, int n) {
  std::string out;
  for (int i = 0; i < n; ++i) out += " " + word;
  return out;
}

std::vector<std::string> strs(const std::vector<Position>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.str());
  return out;
}

using Counts = std::vector<std::size_t>;

}  // namespace

TEST_CASE("spine clocks of Y0 f and Y1 f") {
  auto y0 = clocked_bt(T("Y0 f"), 6);
  auto y1 = clocked_bt(T("Y1 f"), 6);
  CHECK(annotation_counts(y0) == Counts{2, 1, 1, 1, 1, 1});
  CHECK(annotation_counts(y1) == Counts{2, 2, 2, 2, 2, 2});
  CHECK(same_shape(strip(y0), strip(y1)));
  CHECK_FALSE(y0.closed());
  CHECK(y0.node(y0.size() - 1).reason == UnknownReason::Depth);
  CHECK(render_text(y0).rfind("[2] f\n  [1] f\n", 0) == 0);
}

TEST_CASE("compact trees of periodic terms") {
  auto y1 = compact_cyclic(T("Y1 f"));
  CHECK(y1.closed());
  CHECK(annotation_counts(y1) == Counts{2});
  auto cycles = periodicity_report(y1);
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].sigma.str() == "2");
  CHECK(cycles[0].phase.str() == "e");
  CHECK(cycles[0].period.str() == "2");

  Term w = T("\\w z.z (w w) (w w)");
  auto m = compact_cyclic(Term::apply(w, w));
  CHECK(m.closed());
  auto mc = periodicity_report(m);
  REQUIRE(mc.size() == 2);
  CHECK(mc[0].period.str() == "012");
  CHECK(mc[1].period.str() == "02");
  CHECK(path_string(mc[0].sigma_path) == "0");
  CHECK(path_string(mc[1].sigma_path) == "1");
}

TEST_CASE("Böhm sequence clocks") {
  for (int n = 2; n <= 6; ++n) {
    Term t = T("Y1" + repeat("delta", n - 1) + " x");
    auto tree = compact_cyclic(t);
    CHECK(tree.closed());
    CHECK(annotation_counts(tree) == Counts{static_cast<std::size_t>(2 * n)});
    CHECK(check_simple(t).status == SimplicityStatus::Simple);
  }
}

TEST_CASE("theta reduct clocks") {
  for (int n = 2; n <= 6; ++n) {
    Term t = T("theta theta" + repeat("S", n - 2) + " I x");
    auto tree = compact_cyclic(t);
    CHECK(tree.closed());
    CHECK(annotation_counts(tree) == Counts{static_cast<std::size_t>(3 * n - 2)});
    CHECK(check_simple(t).status == SimplicityStatus::Simple);
  }
}

TEST_CASE("atomic clocks") {
  auto a = compact_cyclic(T("Y1 delta x"), kDefaultDepth, kDefaultFuel, true);
  REQUIRE(a.root().clock);
  CHECK(strs(*a.root().clock->steps) == std::vector<std::string>{"11", "1", "1", "e"});
  CHECK(clock_string(*a.root().clock) == "⟨11,1,1,e⟩");
  auto b = compact_cyclic(T("theta theta I x"), kDefaultDepth, kDefaultFuel, true);
  CHECK(strs(*b.root().clock->steps) == std::vector<std::string>{"11", "1", "e", "1"});
  // every node of the unfolded tree carries the same list
  auto unfolded = clocked_bt(T("Y1 delta x"), 4, kDefaultFuel, true);
  for (const auto& n : unfolded.nodes())
    if (n.clock) CHECK(strs(*n.clock->steps) == std::vector<std::string>{"11", "1", "1", "e"});
}

TEST_CASE("enumerator trees") {
  auto e1 = compact_cyclic(T("E1"));
  auto e2 = compact_cyclic(T("E2"));
  auto e3 = compact_cyclic(T("E3"));
  CHECK(e1.closed());
  CHECK(e2.closed());
  CHECK(e3.closed());
  CHECK(annotation_counts(e1) == Counts{2, 0, 0, 2, 2});
  // Head reduction reaches the hnf of the middle node in six steps and the
  // right child in three.
  CHECK(annotation_counts(e2) == Counts{2, 0, 0, 6, 3});
  CHECK(annotation_counts(e3) == Counts{0, 2, 0, 3, 1, 0, 3, 0, 0});
  CHECK(same_shape(strip(e1), strip(e2)));
  CHECK(same_shape(strip(e1), strip(e3)));

  auto cycles = periodicity_report(e1);
  REQUIRE(cycles.size() == 2);
  CHECK(path_string(cycles[0].sigma_path) == "010");
  CHECK(path_string(cycles[1].sigma_path) == "0110");
  CHECK(cycles[0].phase.str() == "02");
  CHECK(cycles[0].period.str() == "000212");
  CHECK(cycles[1].period.str() == "000222");
}

TEST_CASE("Lévy-Longo and Böhm trees of P P and Q Q") {
  auto pp = compact_cyclic(T("P P"), kDefaultDepth, kDefaultFuel, false, Semantics::LevyLongo);
  CHECK(pp.closed());
  CHECK(annotation_counts(pp) == Counts{1});
  CHECK(pp.root().kind == NodeKind::Lambda);
  auto qq = compact_cyclic(T("Q Q"), kDefaultDepth, kDefaultFuel, false, Semantics::LevyLongo);
  CHECK(qq.closed());
  CHECK(annotation_counts(qq) == Counts{1, 0});

  for (const char* text : {"P P", "Q Q"}) {
    auto bt = clocked_bt(T(text));
    REQUIRE(bt.size() == 1);
    CHECK(bt.root().kind == NodeKind::Bottom);
    CHECK_FALSE(bt.root().assumed);
    CHECK(bt.closed());
  }
}

TEST_CASE("Berarducci trees") {
  auto xo = clocked_bet(T("x Omega"));
  REQUIRE(xo.root().kind == NodeKind::Apply);
  CHECK(xo.node(*xo.child(0, 0)).kind == NodeKind::Hnf);
  CHECK(xo.node(*xo.child(0, 1)).kind == NodeKind::Bottom);
  CHECK(xo.closed());
  CHECK(clocked_bet(T("Omega")).root().kind == NodeKind::Bottom);
  auto dd = clocked_bet(T("delta delta (delta delta)"), kDefaultDepth, 200);
  CHECK(dd.root().kind == NodeKind::Unknown);
  CHECK(dd.root().reason == UnknownReason::Fuel);

  TreeOptions assume;
  assume.fuel = 200;
  assume.assume_bottom_on_fuel = true;
  auto assumed = build_tree(T("delta delta (delta delta)"), Semantics::Berarducci, assume);
  CHECK(assumed.root().assumed);
  CHECK_FALSE(assumed.closed());
}

TEST_CASE("strip removes annotations only") {
  auto a = clocked_bt(T("Y0 f"), 5);
  auto s = strip(a);
  CHECK_FALSE(s.annotated());
  CHECK(annotation_counts(s).empty());
  CHECK(same_shape(a, s));
  CHECK_FALSE(same_shape(clocked_bt(T("Y0 f"), 5), clocked_bt(T("Y0 g"), 5)));
}

TEST_CASE("simplicity") {
  CHECK(check_simple(T("Y0 f")).status == SimplicityStatus::Simple);
  CHECK(check_simple(T("Omega")).status == SimplicityStatus::Simple);
  auto plotkin = check_simple(T("Y1 (\\z.f z z)"));
  CHECK(plotkin.status == SimplicityStatus::NotSimple);
  REQUIRE(plotkin.witness_node);
  CHECK_FALSE(plotkin.witness_class.simple());
  auto starved = check_simple(T("Y1 f"), kDefaultDepth, 1);
  CHECK(starved.status == SimplicityStatus::Unknown);
  CHECK(starved.reason == UnknownReason::Fuel);
}

TEST_CASE("renderers") {
  auto t = compact_cyclic(T("Y1 f"));
  CHECK(render_text(t) == "#0 [2] f\n  ↺ #0 (phase e, period 2)\n");
  auto j = tree_json(t);
  CHECK(j["semantics"] == "bt");
  CHECK(j["closed"] == true);
  CHECK(j["tree"]["clock"] == 2);
  CHECK(j["tree"]["children"][0]["backedge"]["period"] == "2");
  CHECK(j.dump() == tree_json(compact_cyclic(T("Y1 f"))).dump());
  auto dot = render_dot(t);
  CHECK(dot.find("style=dashed, label=\"(e, 2)\"") != std::string::npos);
  auto atomic = compact_cyclic(T("Y1 delta x"), kDefaultDepth, kDefaultFuel, true);
  CHECK(tree_json(atomic)["tree"]["clock"] == nlohmann::json::array({"11", "1", "1", "e"}));
}

TEST_CASE("tree invariants over a corpus") {
  std::vector<std::string> corpus = {
      "Y0 f", "Y1 f", "Y1 delta x", "theta theta S I x", "E1", "E2", "E3", "x Omega", "\\x.x (I x) (K x)",
      "S S S", "Y0 (\\m z.z m m)", "B", "K I Omega",
  };
  for (const auto& text : corpus) {
    CAPTURE(text);
    Term t = parse(text, defs());
    auto atomic = clocked_bt(t, 5, kDefaultFuel, true);
    // atomic lists have one position per counted step
    for (const auto& n : atomic.nodes())
      if (n.clock) CHECK(n.clock->steps->size() == n.clock->count);
    // more fuel does not change a tree that was already complete
    auto small = clocked_bt(t, 5, 2000);
    auto large = clocked_bt(t, 5, 20000);
    if (std::none_of(small.nodes().begin(), small.nodes().end(),
                     [](const TreeNode& n) { return n.kind == NodeKind::Unknown && n.reason == UnknownReason::Fuel; })) {
      CHECK(annotation_counts(small) == annotation_counts(large));
      CHECK(same_shape(small, large));
    }
    // the compact tree unfolds to the plain tree
    auto compact = compact_cyclic(t, 5);
    for (const auto& n : large.nodes()) {
      if (n.kind == NodeKind::Unknown) continue;
      auto c = compact.at(n.path);
      REQUIRE(c);
      const TreeNode& cn = compact.node(*c);
      if (cn.kind == NodeKind::Unknown) continue;
      CHECK(same_local_shape(n, cn));
      CHECK((n.clock.has_value() == cn.clock.has_value()));
      if (n.clock && cn.clock) CHECK(n.clock->count == cn.clock->count);
      CHECK(applicative_position(large, n.path) == n.position);
    }
  }
}
