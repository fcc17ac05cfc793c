#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bohm {

// A path into a term: 0 enters an abstraction body, 1 the function side of
// an application, 2 its argument. The empty path renders as "e".
class Position {
 public:
  Position() = default;
  explicit Position(std::vector<std::uint8_t> steps);

  static Position parse(std::string_view text);

  const std::vector<std::uint8_t>& steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }
  bool empty() const { return steps_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return steps_[i]; }

  Position child(std::uint8_t step) const;
  Position operator+(const Position& rest) const;
  Position& append(const Position& rest);
  bool is_prefix_of(const Position& other) const;
  Position suffix_after(const Position& prefix) const;

  std::string str() const;

  auto operator<=>(const Position&) const = default;
  bool operator==(const Position&) const = default;

 private:
  std::vector<std::uint8_t> steps_;
};

enum class TermKind : std::uint8_t { Bound, Free, Lambda, Apply };

struct TermNode;

// Immutable, shared lambda term in de Bruijn form. Binders and bound
// variables keep a display name; equality ignores those names, so `==` is
// alpha-equivalence.
class Term {
 public:
  static Term bound(std::uint32_t index, std::string hint = "x");
  static Term free(std::string name);
  static Term lambda(std::string binder, Term body);
  static Term apply(Term fn, Term arg);
  static Term apply(Term fn, std::initializer_list<Term> args);

  TermKind kind() const;
  bool is_bound() const { return kind() == TermKind::Bound; }
  bool is_free() const { return kind() == TermKind::Free; }
  bool is_var() const { return is_bound() || is_free(); }
  bool is_lambda() const { return kind() == TermKind::Lambda; }
  bool is_apply() const { return kind() == TermKind::Apply; }

  std::uint32_t index() const;
  const std::string& name() const;
  const Term& body() const;
  const Term& fn() const;
  const Term& arg() const;

  std::size_t hash() const;
  std::size_t size() const;
  // One more than the largest de Bruijn index not bound inside the term.
  std::uint32_t loose() const;
  bool closed_indices() const { return loose() == 0; }

  bool same_node(const Term& other) const { return node_ == other.node_; }
  friend bool operator==(const Term& a, const Term& b);

 private:
  explicit Term(std::shared_ptr<const TermNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const TermNode> node_;
};

struct TermNode {
  TermKind kind;
  std::uint32_t index = 0;
  std::uint32_t loose = 0;
  std::size_t size = 1;
  std::size_t hash = 0;
  std::string name;
  std::optional<Term> left;
  std::optional<Term> right;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

Term apply_all(Term head, const std::vector<Term>& args);
Term lambdas(const std::vector<std::string>& binders, Term body);

// Adds `delta` to every de Bruijn index >= cutoff.
Term shift(const Term& t, std::int64_t delta, std::uint32_t cutoff = 0);
// Beta instantiation: body[0 := arg] with the remaining indices lowered.
Term instantiate(const Term& body, const Term& arg);
// Capture-avoiding replacement of free variable `name` by `replacement`.
Term substitute(const Term& t, std::string_view name, const Term& replacement);
// Turns free variable `name` into the binder of a new abstraction.
Term abstract(const Term& t, const std::string& name);

std::set<std::string> free_vars(const Term& t);
bool occurs_free(const Term& t, std::string_view name);
std::size_t count_index(const Term& t, std::uint32_t index);

Term subterm_at(const Term& t, const Position& p);
std::optional<Term> try_subterm_at(const Term& t, const Position& p);
Term replace_at(const Term& t, const Position& p, const Term& replacement);
std::vector<Position> positions(const Term& t);

enum class IterateSide { Left, Right };
// Left: a b b ... b (n copies, left-nested). Right: a (a (... (a b))).
Term iterate(IterateSide side, const Term& a, const Term& b, std::size_t n);

// A fresh name based on `base` that avoids `taken`: the base itself or the
// base with the smallest numeric suffix that is free.
std::string fresh_name(const std::string& base, const std::set<std::string>& taken);

std::string pretty(const Term& t);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownConstant : public ParseError {
 public:
  UnknownConstant(const std::string& name, std::size_t offset);
  const std::string& constant() const { return name_; }

 private:
  std::string name_;
};

// Named closed terms, expanded at parse time. Insertion order is kept.
class DefinitionTable {
 public:
  void define(const std::string& name, const Term& value);
  const Term* find(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }
  const std::vector<std::pair<std::string, Term>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, Term>> entries_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// An unbound identifier that names a definition expands to it. An unbound
// identifier starting with an upper-case letter must be defined; other
// unbound identifiers are free variables.
Term parse(std::string_view text, const DefinitionTable& defs = {});

// Lines of the form `name = term;` with `#` comments. Each definition may use
// the ones before it and must be closed.
DefinitionTable parse_definitions(std::string_view text, DefinitionTable base = {});

}  // namespace bohm
