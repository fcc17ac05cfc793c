#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "bohm/compare.hpp"
#include "bohm/term.hpp"

namespace bohm {

// Combinators: I, K, S, B, A (= B S), delta, omega, eta, theta, Y0, Y1, SS
// (the normal form of S S). Throws std::invalid_argument for other names.
Term combinator(std::string_view name);

// λx.f (x x)
Term omega_of(const Term& f);

Term bohm_seq(std::size_t n);
Term scott_seq(std::size_t n);
// y (S S) S..S I with n copies of S.
Term gvector(const Term& y, std::size_t n);
// B B B y A..A I I with n copies of A.
Term bbb_scheme(const Term& y, std::size_t n);
// y Q P1..Pn with Q = λy p1..pn x.x (y p1..pn x).
Term dummy_scheme(const Term& y, const std::vector<Term>& dummies);
Term theta();

Term plotkin_a(const Term& y, const std::string& f = "f");
Term plotkin_b(const Term& y, const std::string& f = "f");
Term plotkin_bprime(const Term& y, const std::string& f = "f");

Term enumerator(int which);

// Y0 G_n1 .. G_nk with G_n = [ ] (S S) S..S I.
Term scott_composite(const std::vector<std::size_t>& ns);
// θ θ G'_n1 G*_n2 .. G*_nk, the simple reduct of scott_composite, where
// G'_n = [ ] S..S I and G*_n = [ ] SS S..S I with SS in normal form.
Term scott_composite_reduct(const std::vector<std::size_t>& ns);

// F F G with F = λf g x.x (g f g x) and G = λf g x.x (f f g x).
Term wfpc_flipflop();

struct CatalogEntry {
  std::string name;
  std::string params;
  std::string summary;
};

const std::vector<CatalogEntry>& catalog_entries();

// Looks up a catalog name; `args` are the textual parameters (numbers, or
// terms parsed against the prelude).
Term catalog(std::string_view name, const std::vector<std::string>& args = {});

// Named terms available to every parsed input: I K S B A SS Omega omega delta
// eta theta Y0..Y9 U0..U9 E1 E2 E3.
const DefinitionTable& prelude();

class CLTerm {
 public:
  enum class Kind { K, S, Apply };

  static CLTerm k();
  static CLTerm s();
  static CLTerm apply(CLTerm fn, CLTerm arg);

  Kind kind() const { return kind_; }
  const CLTerm& fn() const;
  const CLTerm& arg() const;
  std::string str() const;

 private:
  struct Pair;
  Kind kind_ = Kind::K;
  std::shared_ptr<const Pair> pair_;
};

struct CLTerm::Pair {
  CLTerm fn;
  CLTerm arg;
};

Term encode_cl(const CLTerm& m);
Term cl_to_lambda(const CLTerm& m);
CLTerm random_cl(std::mt19937& rng, std::size_t max_depth);

// e applied to the code of m is joinable with m read as a λ-term.
bool evaluator_check(const Term& e, const CLTerm& m, std::size_t fuel = kDefaultFuel);

// A term with one free variable marking the residuals of the displayed f.
struct LabeledTerm {
  Term term;
  std::string label;
};

LabeledTerm label_plotkin_a(const Term& y);
// Every subterm label s u has s α-equal to u.
bool is_balanced(const LabeledTerm& t);

struct SpineClock {
  Position position;
  std::optional<std::size_t> clock;
};

// Clocks of the right children along the left spine, at applicative
// positions (12)^k 2 for k below depth. Stops where the spine is not a binary
// application of the label or a clock is unresolved.
std::vector<SpineClock> spine_right_clocks(const LabeledTerm& t, std::size_t depth, std::size_t fuel = kDefaultFuel);

struct PlotkinWitness {
  Position position;
  std::size_t clock = 0;
};

std::optional<PlotkinWitness> plotkin_nonzero_witness(const LabeledTerm& t, std::size_t depth,
                                                      std::size_t fuel = kDefaultFuel);

// One complete development of a random redex set that treats both arguments
// of every label s s alike.
Term symmetric_development(const LabeledTerm& t, std::mt19937& rng);

// strip(clocked_bt(y x)) starts with `depth` levels of x (x (..)).
bool has_fpc_spine(const Term& y, std::size_t depth, std::size_t fuel = kDefaultFuel);

// Certificate for m = A_Y against n: all right-spine clocks of n are zero to
// `depth`, while every balanced reduct of A_Y keeps a nonzero one.
ReductCertificate plotkin_certificate(std::size_t depth = 8, std::size_t fuel = kDefaultFuel);

// Occurrences of 1^l, 1^(l+1), 1^l, 1^(l-1), 1^(l-2) in a list of positions.
std::size_t rise_fall_count(const std::vector<Position>& steps);

}  // namespace bohm
