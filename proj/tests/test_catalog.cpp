#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bohm/catalog.hpp"

using namespace bohm;

namespace {

Term T(const std::string& text) { return parse(text, prelude()); }

std::vector<std::string> strs(const std::vector<Position>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.str());
  return out;
}

std::vector<Position> ones(std::initializer_list<int> lengths) {
  std::vector<Position> out;
  for (int l : lengths) out.emplace_back(std::vector<std::uint8_t>(static_cast<std::size_t>(l), 1));
  return out;
}

}  // namespace

TEST_CASE("catalog spellings") {
  CHECK(bohm_seq(1) == T("(\\x f.f (x x f)) (\\x f.f (x x f))"));
  CHECK(catalog("delta") == T("\\a b.b (a b)"));
  CHECK(theta() == T("\\a b c.b c (a a b c)"));
  CHECK(catalog("y0") == T("\\f.(\\x.f (x x)) (\\x.f (x x))"));
  CHECK(catalog("bohm-seq", {"3"}) == T("Y1 delta delta"));
  CHECK(catalog("scott-seq", {"2"}) == T("B Y0 S S I"));
  CHECK(catalog("gvector", {"Y1", "2"}) == T("Y1 (S S) S S I"));
  CHECK(catalog("bbb-scheme", {"Y0", "1"}) == T("B B B Y0 (B S) I I"));
  CHECK(catalog("dummy-scheme", {"Y1", "K"}) == T("Y1 (\\y p x.x (y p x)) K"));
  CHECK(catalog("plotkin-a", {"Y1"}) == T("Y1 (\\z.f z z)"));
  CHECK(catalog("plotkin-b", {"Y1"}) == T("Y1 (\\x.Y1 (\\y.f x y))"));
  CHECK(catalog("plotkin-bprime", {"Y0"}) == T("Y0 (\\x.f x (f x (Y0 (\\y.f x y))))"));
  CHECK(catalog("scott-composite", {"2", "0"}) == T("Y0 (S S) S S I (S S) I"));
  CHECK(catalog("scott-composite-reduct", {"2", "0", "1"}) == T("theta theta S S I SS I SS S I"));
  CHECK(catalog("e1") == T("E1"));
  CHECK(catalog("wfpc-flipflop") == T("(\\f g x.x (g f g x)) (\\f g x.x (g f g x)) (\\f g x.x (f f g x))"));
  CHECK_THROWS_AS(catalog("nope"), std::invalid_argument);
  CHECK_THROWS_AS(catalog("bohm-seq"), std::invalid_argument);
  CHECK_THROWS_AS(catalog("bohm-seq", {"x"}), std::invalid_argument);
  for (const auto& e : catalog_entries()) {
    CAPTURE(e.name);
    std::vector<std::string> args;
    if (e.params.find('Y') != std::string::npos) args.push_back("Y1");
    if (e.params.find('N') != std::string::npos) args.push_back("1");
    if (e.params.find('P') != std::string::npos) args.push_back("K");
    CHECK_NOTHROW(catalog(e.name, args));
  }
  CHECK(free_vars(T("U3 E2 theta")).empty());
}

TEST_CASE("scott sequence start") {
  CHECK(find_common_reduct(scott_seq(0), T("Y0")).has_value());
}

TEST_CASE("fixed point evidence") {
  std::vector<Term> fpcs = {T("Y0"), T("Y1"), T("Y4"), scott_seq(3), gvector(T("Y1"), 2), bbb_scheme(T("Y0"), 3),
                            dummy_scheme(T("Y1"), {T("K"), T("S")}), scott_composite({2, 0, 1}), wfpc_flipflop()};
  for (const auto& y : fpcs) {
    CAPTURE(pretty(y));
    CHECK(has_fpc_spine(y, 10));
    auto tree = strip(clocked_bt(Term::apply(y, T("x")), 8));
    for (const auto& n : tree.nodes()) {
      if (n.kind == NodeKind::Unknown) continue;
      CHECK(n.kind == NodeKind::Hnf);
      CHECK(n.head.name == "x");
      CHECK(n.children.size() == 1);
    }
  }
  CHECK_FALSE(has_fpc_spine(T("I"), 3));
}

TEST_CASE("reducing orders of the generating vector") {
  for (std::size_t n = 0; n <= 4; ++n) CHECK(reducing_fpc_order(gvector(T("Y1"), n)) == 3 * n + 9);
}

TEST_CASE("CL coding") {
  CHECK(encode_cl(CLTerm::k()) == T("\\z.z K K I"));
  CHECK(encode_cl(CLTerm::s()) == T("\\z.z K S I"));
  CHECK(encode_cl(CLTerm::apply(CLTerm::k(), CLTerm::s())) == T("\\z.z (K I) (\\z.z K K I) (\\z.z K S I)"));
  CHECK(CLTerm::apply(CLTerm::s(), CLTerm::apply(CLTerm::k(), CLTerm::k())).str() == "S (K K)");
  CHECK(evaluator_check(T("E1"), CLTerm::k()));
  CHECK(evaluator_check(T("E3"), CLTerm::s()));
  CHECK_FALSE(evaluator_check(T("I"), CLTerm::k()));

  std::mt19937 rng(5);
  int checked = 0;
  while (checked < 20) {
    CLTerm m = random_cl(rng, 4);
    if (!normalize(cl_to_lambda(m), 500)) continue;
    ++checked;
    CAPTURE(m.str());
    for (int i = 1; i <= 3; ++i) CHECK(evaluator_check(enumerator(i), m));
  }
}

TEST_CASE("Plotkin terms: trees and labels") {
  auto a = clocked_bt(T("Y1 (\\z.f z z)"), 5);
  for (const auto& n : a.nodes())
    if (n.kind != NodeKind::Unknown) CHECK(n.clock->count == 3);

  auto b = clocked_bt(plotkin_b(T("Y1")), 5);
  CHECK(b.root().clock->count == 6);
  CHECK(b.node(*b.at({0})).clock->count == 6);
  CHECK(b.node(*b.at({0, 0})).clock->count == 6);
  CHECK(b.node(*b.at({1})).clock->count == 3);
  CHECK(b.node(*b.at({1, 1})).clock->count == 3);
  CHECK(b.node(*b.at({0, 1})).clock->count == 3);

  auto labeled = label_plotkin_a(T("Y1"));
  CHECK(labeled.label == "fstar");
  CHECK(labeled.term == T("Y1 (\\z.fstar z z)"));
  CHECK(free_vars(labeled.term) == std::set<std::string>{"fstar"});
  CHECK(label_plotkin_a(T("\\y.fstar")).label == "fstar1");

  CHECK(is_balanced(labeled));
  CHECK_FALSE(is_balanced({T("fstar a b"), "fstar"}));
  CHECK(is_balanced({T("fstar (I a) (I a)"), "fstar"}));
  Term gk = label_plotkin_a(T("Y0")).term;
  for (int i = 0; i < 5; ++i) {
    gk = gross_knuth(gk);
    CHECK(is_balanced({gk, "fstar"}));
  }
}

TEST_CASE("Plotkin witnesses") {
  auto w = plotkin_nonzero_witness(label_plotkin_a(T("Y1")), 8);
  REQUIRE(w);
  CHECK(w->position.str() == "2");
  CHECK(w->clock == 3);
  for (const char* y : {"Y0", "Y1"}) {
    auto clocks = spine_right_clocks({plotkin_bprime(T(y)), "f"}, 8);
    REQUIRE(clocks.size() == 8);
    for (const auto& c : clocks) CHECK(c.clock == std::optional<std::size_t>(0));
    CHECK(clocks[2].position.str() == "12122");
    CHECK_FALSE(plotkin_nonzero_witness({plotkin_bprime(T(y)), "f"}, 8));
  }

  std::mt19937 rng(3);
  LabeledTerm start = label_plotkin_a(T("Y1"));
  for (int i = 0; i < 50; ++i) {
    Term t = start.term;
    for (int k = 0; k <= i % 6; ++k) {
      Term next = symmetric_development({t, start.label}, rng);
      if (next.size() > 3000) break;
      t = next;
    }
    LabeledTerm lt{t, start.label};
    REQUIRE(is_balanced(lt));
    CHECK(plotkin_nonzero_witness(lt, 12).has_value());
  }
}

TEST_CASE("balance is preserved by symmetric developments") {
  std::mt19937 rng(17);
  int cases = 0;
  for (const char* y : {"Y0", "Y1"}) {
    for (int run = 0; run < 50; ++run) {
      LabeledTerm lt = label_plotkin_a(T(y));
      for (int step = 0; step < 5; ++step) {
        Term next = run % 5 == 0 ? gross_knuth(lt.term) : symmetric_development(lt, rng);
        if (next.size() > 4000) break;
        lt.term = next;
        CHECK(is_balanced(lt));
        ++cases;
      }
    }
  }
  CHECK(cases >= 500);
}

TEST_CASE("Plotkin discrimination through the certificate") {
  DiscriminateConfig config;
  config.reduct_bound = 40;
  config.certificate = plotkin_certificate();
  auto v = discriminate(plotkin_a(T("Y1")), plotkin_bprime(T("Y1")), config);
  CHECK(v.conclusion == Conclusion::Inconvertible);
  CHECK(v.justification == Justification::GeneralNoReductImproves);
  CHECK(v.evidence.reducts_checked == 40);

  DiscriminateConfig bare = config;
  bare.certificate = nullptr;
  auto w = discriminate(plotkin_a(T("Y1")), plotkin_bprime(T("Y1")), bare);
  CHECK(w.conclusion == Conclusion::Inconclusive);
}

TEST_CASE("atomic clock of the Scott composite reduct") {
  Term y = scott_composite_reduct({2, 0, 1});
  Term yx = Term::apply(y, T("x"));
  CHECK(find_common_reduct(Term::apply(scott_composite({2, 0, 1}), T("x")), yx).has_value());
  auto tree = compact_cyclic(yx, 6, kDefaultFuel, true);
  REQUIRE(tree.root().clock);
  auto steps = *tree.root().clock->steps;
  CHECK(steps == ones({9, 8, 7, 8, 7, 6, 7, 6, 5, 6, 5, 4, 3, 4, 3, 2, 1, 2, 1, 0, 1}));
  CHECK(rise_fall_count(steps) == 2);
  CHECK(check_simple(yx).status == SimplicityStatus::Simple);
  CHECK(rise_fall_count(ones({2, 3, 2, 1, 0})) == 1);
  CHECK(rise_fall_count(ones({2, 3, 2, 1})) == 0);
}
