#include "bohm/term.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace bohm {

namespace {

// Sizes saturate: shared subterms can make the tree size astronomically large.
constexpr std::size_t kSizeLimit = std::size_t{1} << 60;

std::size_t sat_add(std::size_t a, std::size_t b) { return std::min(kSizeLimit, a + b + 1); }

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

// ---- Position ---------------------------------------------------------------

Position::Position(std::vector<std::uint8_t> steps) : steps_(std::move(steps)) {
  for (auto s : steps_)
    if (s > 2) throw std::invalid_argument("position step must be 0, 1 or 2");
}

Position Position::parse(std::string_view text) {
  if (text == "e" || text.empty()) return {};
  std::vector<std::uint8_t> steps;
  for (char c : text) {
    if (c < '0' || c > '2') throw std::invalid_argument("bad position: " + std::string(text));
    steps.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return Position(std::move(steps));
}

Position Position::child(std::uint8_t step) const {
  Position p = *this;
  p.steps_.push_back(step);
  return p;
}

Position Position::operator+(const Position& rest) const {
  Position p = *this;
  return p.append(rest);
}

Position& Position::append(const Position& rest) {
  steps_.insert(steps_.end(), rest.steps_.begin(), rest.steps_.end());
  return *this;
}

bool Position::is_prefix_of(const Position& other) const {
  return steps_.size() <= other.steps_.size() &&
         std::equal(steps_.begin(), steps_.end(), other.steps_.begin());
}

Position Position::suffix_after(const Position& prefix) const {
  if (!prefix.is_prefix_of(*this)) throw std::invalid_argument("not a prefix");
  return Position(std::vector<std::uint8_t>(steps_.begin() + prefix.size(), steps_.end()));
}

std::string Position::str() const {
  if (steps_.empty()) return "e";
  std::string out;
  for (auto s : steps_) out.push_back(static_cast<char>('0' + s));
  return out;
}

// ---- Term -------------------------------------------------------------------

Term Term::bound(std::uint32_t index, std::string hint) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Bound;
  n->index = index;
  n->loose = index + 1;
  n->hash = mix(0x51, index);
  n->name = std::move(hint);
  return Term(std::move(n));
}

Term Term::free(std::string name) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Free;
  n->hash = mix(0x7f, std::hash<std::string>{}(name));
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::lambda(std::string binder, Term body) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Lambda;
  n->loose = body.loose() > 0 ? body.loose() - 1 : 0;
  n->size = sat_add(body.size(), 0);
  n->hash = mix(0x3b, body.hash());
  n->name = std::move(binder);
  n->left = std::move(body);
  return Term(std::move(n));
}

Term Term::apply(Term fn, Term arg) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Apply;
  n->loose = std::max(fn.loose(), arg.loose());
  n->size = sat_add(fn.size(), arg.size());
  n->hash = mix(mix(0x2d, fn.hash()), arg.hash());
  n->left = std::move(fn);
  n->right = std::move(arg);
  return Term(std::move(n));
}

Term Term::apply(Term fn, std::initializer_list<Term> args) {
  for (const auto& a : args) fn = apply(std::move(fn), a);
  return fn;
}

TermKind Term::kind() const { return node_->kind; }
std::uint32_t Term::index() const { return node_->index; }
const std::string& Term::name() const { return node_->name; }
const Term& Term::body() const { return *node_->left; }
const Term& Term::fn() const { return *node_->left; }
const Term& Term::arg() const { return *node_->right; }
std::size_t Term::hash() const { return node_->hash; }
std::size_t Term::size() const { return node_->size; }
std::uint32_t Term::loose() const { return node_->loose; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::Bound: return a.index() == b.index();
    case TermKind::Free: return a.name() == b.name();
    case TermKind::Lambda: return a.body() == b.body();
    case TermKind::Apply: return a.fn() == b.fn() && a.arg() == b.arg();
  }
  return false;
}

Term apply_all(Term head, const std::vector<Term>& args) {
  for (const auto& a : args) head = Term::apply(std::move(head), a);
  return head;
}

Term lambdas(const std::vector<std::string>& binders, Term body) {
  for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = Term::lambda(*it, std::move(body));
  return body;
}

// ---- index manipulation -------------------------------------------------------

Term shift(const Term& t, std::int64_t delta, std::uint32_t cutoff) {
  if (delta == 0 || t.loose() <= cutoff) return t;
  switch (t.kind()) {
    case TermKind::Bound: {
      auto moved = static_cast<std::int64_t>(t.index()) + delta;
      if (moved < 0) throw std::logic_error("negative de Bruijn index");
      return Term::bound(static_cast<std::uint32_t>(moved), t.name());
    }
    case TermKind::Free: return t;
    case TermKind::Lambda: return Term::lambda(t.name(), shift(t.body(), delta, cutoff + 1));
    case TermKind::Apply:
      return Term::apply(shift(t.fn(), delta, cutoff), shift(t.arg(), delta, cutoff));
  }
  return t;
}

namespace {

Term instantiate_at(const Term& t, std::uint32_t depth, const Term& arg) {
  if (t.loose() <= depth) return t;
  switch (t.kind()) {
    case TermKind::Bound:
      if (t.index() == depth) return shift(arg, depth);
      return Term::bound(t.index() - 1, t.name());
    case TermKind::Free: return t;
    case TermKind::Lambda: return Term::lambda(t.name(), instantiate_at(t.body(), depth + 1, arg));
    case TermKind::Apply:
      return Term::apply(instantiate_at(t.fn(), depth, arg), instantiate_at(t.arg(), depth, arg));
  }
  return t;
}

Term substitute_at(const Term& t, std::string_view name, const Term& rep, std::uint32_t depth,
                   bool& changed) {
  switch (t.kind()) {
    case TermKind::Bound: return t;
    case TermKind::Free:
      if (t.name() == name) {
        changed = true;
        return shift(rep, depth);
      }
      return t;
    case TermKind::Lambda: {
      bool c = false;
      Term b = substitute_at(t.body(), name, rep, depth + 1, c);
      if (!c) return t;
      changed = true;
      return Term::lambda(t.name(), std::move(b));
    }
    case TermKind::Apply: {
      bool c1 = false, c2 = false;
      Term f = substitute_at(t.fn(), name, rep, depth, c1);
      Term a = substitute_at(t.arg(), name, rep, depth, c2);
      if (!c1 && !c2) return t;
      changed = true;
      return Term::apply(std::move(f), std::move(a));
    }
  }
  return t;
}

Term abstract_at(const Term& t, const std::string& name, std::uint32_t depth) {
  switch (t.kind()) {
    case TermKind::Bound:
      return t.index() >= depth ? Term::bound(t.index() + 1, t.name()) : t;
    case TermKind::Free: return t.name() == name ? Term::bound(depth, name) : t;
    case TermKind::Lambda: return Term::lambda(t.name(), abstract_at(t.body(), name, depth + 1));
    case TermKind::Apply:
      return Term::apply(abstract_at(t.fn(), name, depth), abstract_at(t.arg(), name, depth));
  }
  return t;
}

void collect_free(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Bound: return;
    case TermKind::Free: out.insert(t.name()); return;
    case TermKind::Lambda: collect_free(t.body(), out); return;
    case TermKind::Apply:
      collect_free(t.fn(), out);
      collect_free(t.arg(), out);
      return;
  }
}

}  // namespace

Term instantiate(const Term& body, const Term& arg) { return instantiate_at(body, 0, arg); }

Term substitute(const Term& t, std::string_view name, const Term& replacement) {
  bool changed = false;
  return substitute_at(t, name, replacement, 0, changed);
}

Term abstract(const Term& t, const std::string& name) {
  return Term::lambda(name, abstract_at(t, name, 0));
}

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  collect_free(t, out);
  return out;
}

bool occurs_free(const Term& t, std::string_view name) {
  switch (t.kind()) {
    case TermKind::Bound: return false;
    case TermKind::Free: return t.name() == name;
    case TermKind::Lambda: return occurs_free(t.body(), name);
    case TermKind::Apply: return occurs_free(t.fn(), name) || occurs_free(t.arg(), name);
  }
  return false;
}

std::size_t count_index(const Term& t, std::uint32_t index) {
  if (t.loose() <= index) return 0;
  switch (t.kind()) {
    case TermKind::Bound: return t.index() == index ? 1 : 0;
    case TermKind::Free: return 0;
    case TermKind::Lambda: return count_index(t.body(), index + 1);
    case TermKind::Apply: return count_index(t.fn(), index) + count_index(t.arg(), index);
  }
  return 0;
}

// ---- positions ----------------------------------------------------------------

std::optional<Term> try_subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (auto step : p.steps()) {
    if (step == 0 && cur->is_lambda()) cur = &cur->body();
    else if (step == 1 && cur->is_apply()) cur = &cur->fn();
    else if (step == 2 && cur->is_apply()) cur = &cur->arg();
    else return std::nullopt;
  }
  return *cur;
}

Term subterm_at(const Term& t, const Position& p) {
  auto s = try_subterm_at(t, p);
  if (!s) throw std::out_of_range("no subterm at position " + p.str());
  return *s;
}

namespace {

Term replace_from(const Term& t, const Position& p, std::size_t i, const Term& rep) {
  if (i == p.size()) return rep;
  auto step = p[i];
  if (step == 0 && t.is_lambda()) return Term::lambda(t.name(), replace_from(t.body(), p, i + 1, rep));
  if (step == 1 && t.is_apply()) return Term::apply(replace_from(t.fn(), p, i + 1, rep), t.arg());
  if (step == 2 && t.is_apply()) return Term::apply(t.fn(), replace_from(t.arg(), p, i + 1, rep));
  throw std::out_of_range("no subterm at position " + p.str());
}

void collect_positions(const Term& t, Position& cur, std::vector<Position>& out) {
  out.push_back(cur);
  if (t.is_lambda()) {
    cur = cur.child(0);
    collect_positions(t.body(), cur, out);
    cur = Position(std::vector<std::uint8_t>(cur.steps().begin(), cur.steps().end() - 1));
  } else if (t.is_apply()) {
    Position saved = cur;
    cur = saved.child(1);
    collect_positions(t.fn(), cur, out);
    cur = saved.child(2);
    collect_positions(t.arg(), cur, out);
    cur = saved;
  }
}

}  // namespace

Term replace_at(const Term& t, const Position& p, const Term& replacement) {
  return replace_from(t, p, 0, replacement);
}

std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  collect_positions(t, cur, out);
  return out;
}

Term iterate(IterateSide side, const Term& a, const Term& b, std::size_t n) {
  Term out = side == IterateSide::Left ? a : b;
  for (std::size_t i = 0; i < n; ++i)
    out = side == IterateSide::Left ? Term::apply(out, b) : Term::apply(a, out);
  return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.count(base)) return base;
  for (std::size_t i = 1;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (!taken.count(candidate)) return candidate;
  }
}

// ---- printing -----------------------------------------------------------------

namespace {

class Printer {
 public:
  explicit Printer(const Term& root) : globals_(free_vars(root)) {}

  void term(const Term& t, std::ostream& out) {
    if (t.is_lambda()) {
      out << '\\';
      const Term* cur = &t;
      bool first = true;
      std::size_t pushed = 0;
      while (cur->is_lambda()) {
        std::string name = binder_name(*cur);
        if (!first) out << ' ';
        out << name;
        first = false;
        names_.push_back(std::move(name));
        ++pushed;
        cur = &cur->body();
      }
      out << '.';
      term(*cur, out);
      names_.resize(names_.size() - pushed);
      return;
    }
    application(t, out);
  }

 private:
  void application(const Term& t, std::ostream& out) {
    if (!t.is_apply()) {
      atom(t, out);
      return;
    }
    application(t.fn(), out);
    out << ' ';
    atom(t.arg(), out);
  }

  void atom(const Term& t, std::ostream& out) {
    if (t.is_free()) {
      out << t.name();
    } else if (t.is_bound()) {
      out << name_of(t.index(), t.name());
    } else {
      out << '(';
      term(t, out);
      out << ')';
    }
  }

  std::string name_of(std::uint32_t index, const std::string& hint) const {
    if (index < names_.size()) return names_[names_.size() - 1 - index];
    return hint;
  }

  // Names that a new binder around `body` must avoid so that no reference
  // inside the body changes meaning.
  void visible(const Term& t, std::uint32_t depth, std::set<std::string>& out) const {
    if (t.loose() <= depth && t.is_bound()) return;
    switch (t.kind()) {
      case TermKind::Bound:
        if (t.index() >= depth) out.insert(name_of(t.index() - depth, t.name()));
        return;
      case TermKind::Free: out.insert(t.name()); return;
      case TermKind::Lambda: visible(t.body(), depth + 1, out); return;
      case TermKind::Apply:
        visible(t.fn(), depth, out);
        visible(t.arg(), depth, out);
        return;
    }
  }

  std::string binder_name(const Term& lam) const {
    std::set<std::string> taken = globals_;
    visible(lam.body(), 1, taken);
    return fresh_name(lam.name().empty() ? "x" : lam.name(), taken);
  }

  std::set<std::string> globals_;
  std::vector<std::string> names_;
};

}  // namespace

std::string pretty(const Term& t) {
  std::ostringstream out;
  Printer(t).term(t, out);
  return out.str();
}

// ---- parsing ------------------------------------------------------------------

ParseError::ParseError(const std::string& message, std::size_t offset)
    : std::runtime_error(message + " at byte " + std::to_string(offset)), offset_(offset) {}

UnknownConstant::UnknownConstant(const std::string& name, std::size_t offset)
    : ParseError("unknown constant '" + name + "'", offset), name_(name) {}

void DefinitionTable::define(const std::string& name, const Term& value) {
  if (!free_vars(value).empty() || !value.closed_indices())
    throw std::invalid_argument("definition of " + name + " is not closed");
  if (auto it = index_.find(name); it != index_.end()) {
    entries_[it->second].second = value;
    return;
  }
  index_.emplace(name, entries_.size());
  entries_.emplace_back(name, value);
}

const Term* DefinitionTable::find(std::string_view name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &entries_[it->second].second;
}

namespace {

bool ident_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool ident_char(char c) {
  return ident_start(c) || (c >= '0' && c <= '9') || c == '_' || c == '\'';
}

class Parser {
 public:
  Parser(std::string_view text, const DefinitionTable& defs, std::size_t base)
      : text_(text), defs_(defs), base_(base) {}

  Term parse_all() {
    Term t = term();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, base_ + pos_); }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r'))
      ++pos_;
  }

  bool at_lambda() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '\\') return true;
    return text_.substr(pos_, 2) == "\xCE\xBB";
  }

  bool at_bottom() const { return text_.substr(pos_, 3) == "\xE2\x8A\xA5"; }

  bool at_atom() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    return ident_start(text_[pos_]) || text_[pos_] == '(' || at_bottom();
  }

  std::string ident() {
    skip_space();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail("expected identifier");
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Term term() {
    if (at_lambda()) return lambda();
    return application();
  }

  Term lambda() {
    pos_ += text_[pos_] == '\\' ? 1 : 2;
    std::vector<std::string> binders;
    binders.push_back(ident());
    skip_space();
    while (pos_ < text_.size() && ident_start(text_[pos_])) {
      binders.push_back(ident());
      skip_space();
    }
    if (pos_ >= text_.size() || text_[pos_] != '.') fail("expected '.'");
    ++pos_;
    for (const auto& b : binders) scope_.push_back(b);
    Term body = term();
    scope_.resize(scope_.size() - binders.size());
    return lambdas(binders, std::move(body));
  }

  Term application() {
    if (!at_atom()) fail(pos_ >= text_.size() ? "unexpected end of input" : "expected a term");
    Term t = atom();
    while (at_atom()) t = Term::apply(std::move(t), atom());
    skip_space();
    if (pos_ < text_.size() && at_lambda()) fail("abstraction in argument position needs parentheses");
    return t;
  }

  Term atom() {
    skip_space();
    if (at_bottom()) fail("bottom is not allowed in input terms");
    if (text_[pos_] == '(') {
      ++pos_;
      Term t = term();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return t;
    }
    std::size_t start = pos_;
    std::string name = ident();
    for (std::size_t i = scope_.size(); i-- > 0;)
      if (scope_[i] == name) return Term::bound(static_cast<std::uint32_t>(scope_.size() - 1 - i), name);
    if (const Term* def = defs_.find(name)) return *def;
    if (name[0] >= 'A' && name[0] <= 'Z') throw UnknownConstant(name, base_ + start);
    return Term::free(name);
  }

  std::string_view text_;
  const DefinitionTable& defs_;
  std::size_t base_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;
};

}  // namespace

Term parse(std::string_view text, const DefinitionTable& defs) {
  return Parser(text, defs, 0).parse_all();
}

DefinitionTable parse_definitions(std::string_view text, DefinitionTable base) {
  // Blank out comments while keeping byte offsets intact.
  std::string clean(text);
  bool comment = false;
  for (char& c : clean) {
    if (c == '\n') comment = false;
    else if (c == '#') comment = true;
    if (comment) c = ' ';
  }
  std::size_t start = 0;
  while (true) {
    std::size_t end = clean.find(';', start);
    std::string_view stmt = std::string_view(clean).substr(start, end == std::string::npos ? std::string::npos : end - start);
    if (stmt.find_first_not_of(" \t\r\n") == std::string_view::npos) {
      if (end == std::string::npos) break;
      start = end + 1;
      continue;
    }
    if (end == std::string::npos) throw ParseError("expected ';'", clean.size());
    std::size_t eq = stmt.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected '='", start);
    std::string_view lhs = stmt.substr(0, eq);
    std::size_t a = lhs.find_first_not_of(" \t\r\n");
    std::size_t b = lhs.find_last_not_of(" \t\r\n");
    if (a == std::string_view::npos) throw ParseError("expected a name", start);
    std::string name(lhs.substr(a, b - a + 1));
    if (!ident_start(name[0]) || !std::all_of(name.begin(), name.end(), ident_char))
      throw ParseError("bad definition name '" + name + "'", start + a);
    Term value = Parser(stmt.substr(eq + 1), base, start + eq + 1).parse_all();
    if (!free_vars(value).empty())
      throw ParseError("definition of " + name + " is not closed", start + a);
    base.define(name, value);
    start = end + 1;
  }
  return base;
}

}  // namespace bohm
