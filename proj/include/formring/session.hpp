#pragma once

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "formring/errors.hpp"
#include "formring/field.hpp"
#include "formring/polynomial.hpp"

// Input language. Statements end in ';' and '#' starts a line comment.
//
//   session   := { statement }
//   statement := 'char' INT ';'
//              | 'vars' IDENT { ',' IDENT } ';'
//              | 'param' IDENT '=' SINT '..' SINT ';'
//              | 'ideal' IDENT '=' poly { ',' poly } ';'
//              | 'synthetic_table' IDENT '=' '{' [ entry { ',' entry } ] '}' ';'
//              | [ 'check' ] VERB IDENT { IDENT '=' SINT [ '..' SINT ] } ';'
//   entry     := '(' SINT ',' SINT ')' ':' INT
//   poly      := [ '+' | '-' ] term { ( '+' | '-' ) term }
//   term      := factor { [ '*' ] factor }
//   factor    := atom [ '^' ( INT | IDENT | '(' iexpr ')' ) ]
//   atom      := INT | IDENT | '(' poly ')'
//   iexpr     := [ '-' ] iterm { ( '+' | '-' ) iterm }
//   iterm     := iatom { '*' iatom }
//   iatom     := INT | IDENT | '(' iexpr ')'
//   SINT      := [ '-' ] INT
//
// VERB is one of tangent_cone, table, koszul, stuckrad, quasibuchsbaum, gap,
// diag, localh0, cor41. Identifiers in a polynomial name variables of the
// latest 'vars' or declared parameters; identifiers in an exponent name
// parameters.

namespace formring {

class ParseError : public Error {
 public:
  ParseError(int line, int col, const std::string& msg)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col), msg_(msg) {}
  int line() const { return line_; }
  int column() const { return col_; }
  const std::string& message() const { return msg_; }

 private:
  int line_, col_;
  std::string msg_;
};

struct Expr {
  enum class Kind { integer, name, add, sub, mul, neg, pow };
  Kind kind = Kind::integer;
  std::int64_t value = 0;
  std::string name;
  std::vector<Expr> args;

  static Expr integer(std::int64_t v) { return {Kind::integer, v, {}, {}}; }
  static Expr named(std::string n) { return {Kind::name, 0, std::move(n), {}}; }
  static Expr unary(Kind k, Expr a) { return {k, 0, {}, {std::move(a)}}; }
  static Expr binary(Kind k, Expr a, Expr b) { return {k, 0, {}, {std::move(a), std::move(b)}}; }

  friend bool operator==(const Expr&, const Expr&) = default;
};

struct CharDecl {
  std::int64_t value = 0;
  friend bool operator==(const CharDecl&, const CharDecl&) = default;
};
struct VarsDecl {
  std::vector<std::string> names;
  friend bool operator==(const VarsDecl&, const VarsDecl&) = default;
};
struct ParamDecl {
  std::string name;
  std::int64_t lo = 0, hi = 0;
  friend bool operator==(const ParamDecl&, const ParamDecl&) = default;
};
struct IdealDecl {
  std::string name;
  std::vector<Expr> generators;
  friend bool operator==(const IdealDecl&, const IdealDecl&) = default;
};
struct TableEntryDecl {
  std::int64_t index = 0, degree = 0, dim = 0;
  friend bool operator==(const TableEntryDecl&, const TableEntryDecl&) = default;
};
struct TableDecl {
  std::string name;
  std::vector<TableEntryDecl> entries;
  friend bool operator==(const TableDecl&, const TableDecl&) = default;
};
struct CommandOption {
  std::string key;
  std::int64_t lo = 0;
  std::optional<std::int64_t> hi;  // set for ranges LO..HI
  friend bool operator==(const CommandOption&, const CommandOption&) = default;
};
struct Command {
  bool check = false;
  std::string verb;
  std::string target;
  std::vector<CommandOption> options;
  friend bool operator==(const Command&, const Command&) = default;

  const CommandOption* option(std::string_view key) const {
    for (const auto& o : options)
      if (o.key == key) return &o;
    return nullptr;
  }
};

using Statement = std::variant<CharDecl, VarsDecl, ParamDecl, IdealDecl, TableDecl, Command>;

struct SourceLocation {
  int line = 1, column = 1;
};

struct Session {
  std::vector<Statement> statements;
  std::vector<SourceLocation> locations;  // parallel to statements; not part of equality

  friend bool operator==(const Session& a, const Session& b) { return a.statements == b.statements; }
};

struct ParseOptions {
  // Used when the text has no 'char' statement.
  std::optional<std::int64_t> default_characteristic;
};

inline const std::vector<std::string>& command_verbs() {
  static const std::vector<std::string> v{"tangent_cone", "table", "koszul", "stuckrad", "quasibuchsbaum",
                                          "gap", "diag", "localh0", "cor41"};
  return v;
}

inline const std::set<std::string>& allowed_options(const std::string& verb) {
  static const std::map<std::string, std::set<std::string>> m{
      {"tangent_cone", {}},
      {"table", {"window", "tmax", "margin", "imax"}},
      {"koszul", {"i", "n", "t"}},
      {"stuckrad", {"window", "tmax", "margin"}},
      {"quasibuchsbaum", {"window", "tmax", "margin"}},
      {"gap", {"t", "window", "tmax", "margin"}},
      {"diag", {"t", "window", "tmax", "margin"}},
      {"localh0", {}},
      {"cor41", {"window", "tmax", "margin"}},
  };
  return m.at(verb);
}

inline constexpr int kMaxNesting = 200;
inline constexpr std::int64_t kMaxParamRange = 1000;

namespace detail {

struct Token {
  enum class Kind { end, integer, ident, punct };
  Kind kind = Kind::end;
  std::string text;
  std::int64_t value = 0;
  int line = 1, col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.col = col_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Token::Kind::integer;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          int digit = src_[pos_] - '0';
          if (t.value > (INT64_C(1000000000000000000) - digit) / 10) throw ParseError(t.line, t.col, "integer too large");
          t.value = t.value * 10 + digit;
          t.text += advance();
        }
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Token::Kind::ident;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          t.text += advance();
      } else if (c == '.' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '.') {
        t.kind = Token::Kind::punct;
        t.text = "..";
        advance();
        advance();
      } else if (std::string_view(";,=(){}:+-*^").find(c) != std::string_view::npos) {
        t.kind = Token::Kind::punct;
        t.text = std::string(1, advance());
      } else {
        throw ParseError(t.line, t.col, "unexpected character '" + printable(c) + "'");
      }
      out.push_back(std::move(t));
    }
  }

 private:
  static std::string printable(char c) {
    if (std::isprint(static_cast<unsigned char>(c))) return std::string(1, c);
    static const char* hex = "0123456789abcdef";
    auto u = static_cast<unsigned char>(c);
    return std::string("\\x") + hex[u >> 4] + hex[u & 15];
  }

  char advance() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> tokens, ParseOptions opts) : toks_(std::move(tokens)), opts_(opts) {}

  Session run() {
    Session s;
    while (peek().kind != Token::Kind::end) {
      const Token& start = peek();
      s.locations.push_back({start.line, start.col});
      s.statements.push_back(statement());
    }
    return s;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  const Token& take() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(t.line, t.col, msg); }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case Token::Kind::end: return "end of input";
      case Token::Kind::integer: return "integer " + t.text;
      case Token::Kind::ident: return "'" + t.text + "'";
      case Token::Kind::punct: return "'" + t.text + "'";
    }
    return "token";
  }

  bool is_punct(const char* p, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == Token::Kind::punct && t.text == p;
  }

  void expect(const char* p) {
    if (!is_punct(p)) fail(peek(), std::string("expected '") + p + "', found " + describe(peek()));
    take();
  }

  const Token& expect_ident(const char* what) {
    if (peek().kind != Token::Kind::ident) fail(peek(), std::string("expected ") + what + ", found " + describe(peek()));
    return take();
  }

  std::int64_t expect_int() {
    if (peek().kind != Token::Kind::integer) fail(peek(), "expected integer, found " + describe(peek()));
    return take().value;
  }

  std::int64_t signed_int() {
    bool neg = false;
    if (is_punct("-")) {
      take();
      neg = true;
    }
    std::int64_t v = expect_int();
    return neg ? -v : v;
  }

  Statement statement() {
    const Token& kw = expect_ident("statement");
    if (kw.text == "char") return char_decl(kw);
    if (kw.text == "vars") return vars_decl();
    if (kw.text == "param") return param_decl();
    if (kw.text == "ideal") return ideal_decl();
    if (kw.text == "synthetic_table") return table_decl();
    bool check = false;
    const Token* verb = &kw;
    if (kw.text == "check") {
      check = true;
      verb = &expect_ident("command");
    }
    return command(*verb, check);
  }

  Statement char_decl(const Token& kw) {
    if (characteristic_) fail(kw, "characteristic already declared");
    const Token& t = peek();
    std::int64_t p = expect_int();
    if (p > 0x7fffffff) fail(t, std::to_string(p) + " is out of range (characteristic must be below 2^31)");
    if (!is_prime(static_cast<std::uint64_t>(p))) fail(t, std::to_string(p) + " is not prime");
    characteristic_ = p;
    expect(";");
    return CharDecl{p};
  }

  void check_fresh(const Token& t) {
    if (ideals_.contains(t.text) || tables_.contains(t.text)) fail(t, "name '" + t.text + "' already declared");
    if (params_.contains(t.text)) fail(t, "name '" + t.text + "' already declared as a parameter");
  }

  Statement vars_decl() {
    VarsDecl d;
    std::set<std::string> seen;
    do {
      if (!d.names.empty()) take();
      const Token& t = expect_ident("variable name");
      if (!seen.insert(t.text).second) fail(t, "variable '" + t.text + "' repeated");
      if (params_.contains(t.text)) fail(t, "name '" + t.text + "' already declared as a parameter");
      d.names.push_back(t.text);
    } while (is_punct(","));
    if (d.names.size() > 62) fail(peek(), "too many variables");
    expect(";");
    vars_ = seen;
    have_vars_ = true;
    return d;
  }

  Statement param_decl() {
    const Token& name = expect_ident("parameter name");
    check_fresh(name);
    if (vars_.contains(name.text)) fail(name, "name '" + name.text + "' already declared as a variable");
    expect("=");
    const Token& at = peek();
    std::int64_t lo = signed_int();
    expect("..");
    std::int64_t hi = signed_int();
    if (lo > hi) fail(at, "empty parameter range");
    if (hi - lo >= kMaxParamRange) fail(at, "parameter range too large");
    expect(";");
    params_.insert(name.text);
    return ParamDecl{name.text, lo, hi};
  }

  Statement ideal_decl() {
    const Token& name = expect_ident("ideal name");
    check_fresh(name);
    if (!characteristic_) {
      if (!opts_.default_characteristic) fail(name, "characteristic not declared");
      std::int64_t p = *opts_.default_characteristic;
      if (p < 2 || p > 0x7fffffff || !is_prime(static_cast<std::uint64_t>(p)))
        fail(name, std::to_string(p) + " is not prime");
      characteristic_ = p;
    }
    if (!have_vars_) fail(name, "variables not declared");
    expect("=");
    IdealDecl d{name.text, {}};
    do {
      if (!d.generators.empty()) take();
      depth_ = 0;
      d.generators.push_back(poly());
    } while (is_punct(","));
    expect(";");
    ideals_.insert(name.text);
    return d;
  }

  Statement table_decl() {
    const Token& name = expect_ident("table name");
    check_fresh(name);
    expect("=");
    expect("{");
    TableDecl d{name.text, {}};
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    if (!is_punct("}")) {
      do {
        if (!d.entries.empty()) take();
        const Token& at = peek();
        expect("(");
        std::int64_t i = signed_int();
        expect(",");
        std::int64_t n = signed_int();
        expect(")");
        expect(":");
        std::int64_t dim = expect_int();
        if (i < 0) fail(at, "cohomological index must be non-negative");
        if (i > 1000 || n < -1000000 || n > 1000000) fail(at, "table entry out of range");
        if (!seen.insert({i, n}).second) fail(at, "duplicate table entry");
        d.entries.push_back({i, n, dim});
      } while (is_punct(","));
    }
    expect("}");
    expect(";");
    tables_.insert(name.text);
    return d;
  }

  Statement command(const Token& verb, bool check) {
    const auto& verbs = command_verbs();
    if (std::find(verbs.begin(), verbs.end(), verb.text) == verbs.end()) fail(verb, "unknown command '" + verb.text + "'");
    const Token& target = expect_ident("target name");
    const bool table_ok = verb.text == "gap" || verb.text == "diag";
    if (tables_.contains(target.text)) {
      if (!table_ok) fail(target, "'" + target.text + "' is a synthetic table, not an ideal");
    } else if (!ideals_.contains(target.text)) {
      fail(target, "undeclared name '" + target.text + "'");
    }
    Command c{check, verb.text, target.text, {}};
    const auto& allowed = allowed_options(verb.text);
    while (!is_punct(";")) {
      const Token& key = expect_ident("option name");
      if (!allowed.contains(key.text)) fail(key, "option '" + key.text + "' not accepted by " + verb.text);
      if (c.option(key.text)) fail(key, "option '" + key.text + "' repeated");
      expect("=");
      CommandOption o{key.text, signed_int(), std::nullopt};
      if (is_punct("..")) {
        take();
        o.hi = signed_int();
      }
      const bool range = key.text == "window";
      if (range != o.hi.has_value()) fail(key, range ? "window expects LO..HI" : "option '" + key.text + "' expects an integer");
      if (range && *o.hi < o.lo) fail(key, "empty window");
      if (std::abs(o.lo) > 100000 || (o.hi && std::abs(*o.hi) > 100000)) fail(key, "option value out of range");
      c.options.push_back(std::move(o));
    }
    if (tables_.contains(target.text) && !c.option("t")) fail(target, "checks on a synthetic table need t=");
    expect(";");
    return c;
  }

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > kMaxNesting) p.fail(p.peek(), "expression nested too deeply");
    }
    ~DepthGuard() { --p.depth_; }
  };

  Expr poly() {
    DepthGuard guard(*this);
    Expr e;
    if (is_punct("-")) {
      take();
      e = Expr::unary(Expr::Kind::neg, term());
    } else {
      if (is_punct("+")) take();
      e = term();
    }
    while (is_punct("+") || is_punct("-")) {
      auto kind = take().text == "+" ? Expr::Kind::add : Expr::Kind::sub;
      e = Expr::binary(kind, std::move(e), term());
    }
    return e;
  }

  bool starts_factor() const {
    const Token& t = peek();
    return t.kind == Token::Kind::integer || t.kind == Token::Kind::ident || is_punct("(");
  }

  Expr term() {
    Expr e = factor();
    for (;;) {
      if (is_punct("*")) {
        take();
      } else if (!starts_factor()) {
        return e;
      }
      e = Expr::binary(Expr::Kind::mul, std::move(e), factor());
    }
  }

  Expr factor() {
    Expr base = atom();
    if (!is_punct("^")) return base;
    take();
    Expr exp;
    const Token& t = peek();
    if (t.kind == Token::Kind::integer) {
      exp = Expr::integer(take().value);
    } else if (t.kind == Token::Kind::ident) {
      exp = param_ref(take());
    } else if (is_punct("(")) {
      take();
      exp = iexpr();
      expect(")");
    } else {
      fail(t, "expected exponent, found " + describe(t));
    }
    return Expr::binary(Expr::Kind::pow, std::move(base), std::move(exp));
  }

  Expr atom() {
    const Token& t = peek();
    if (t.kind == Token::Kind::integer) return Expr::integer(take().value);
    if (t.kind == Token::Kind::ident) {
      take();
      if (!vars_.contains(t.text) && !params_.contains(t.text)) fail(t, "undeclared name '" + t.text + "'");
      return Expr::named(t.text);
    }
    if (is_punct("(")) {
      take();
      Expr e = poly();
      expect(")");
      return e;
    }
    fail(t, "expected polynomial, found " + describe(t));
  }

  Expr param_ref(const Token& t) {
    if (!params_.contains(t.text)) fail(t, "undeclared parameter '" + t.text + "'");
    return Expr::named(t.text);
  }

  Expr iexpr() {
    DepthGuard guard(*this);
    Expr e;
    if (is_punct("-")) {
      take();
      e = Expr::unary(Expr::Kind::neg, iterm());
    } else {
      e = iterm();
    }
    while (is_punct("+") || is_punct("-")) {
      auto kind = take().text == "+" ? Expr::Kind::add : Expr::Kind::sub;
      e = Expr::binary(kind, std::move(e), iterm());
    }
    return e;
  }

  Expr iterm() {
    Expr e = iatom();
    while (is_punct("*")) {
      take();
      e = Expr::binary(Expr::Kind::mul, std::move(e), iatom());
    }
    return e;
  }

  Expr iatom() {
    const Token& t = peek();
    if (t.kind == Token::Kind::integer) return Expr::integer(take().value);
    if (t.kind == Token::Kind::ident) return param_ref(take());
    if (is_punct("(")) {
      take();
      Expr e = iexpr();
      expect(")");
      return e;
    }
    fail(t, "expected integer expression, found " + describe(t));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  ParseOptions opts_;
  std::optional<std::int64_t> characteristic_;
  bool have_vars_ = false;
  std::set<std::string> vars_, params_, ideals_, tables_;
  int depth_ = 0;
};

inline int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::add:
    case Expr::Kind::sub:
    case Expr::Kind::neg: return 1;
    case Expr::Kind::mul: return 2;
    case Expr::Kind::pow: return 3;
    default: return 4;
  }
}

inline std::string print_expr(const Expr& e, int min_prec = 1) {
  std::string s;
  switch (e.kind) {
    case Expr::Kind::integer: s = std::to_string(e.value); break;
    case Expr::Kind::name: s = e.name; break;
    case Expr::Kind::add: s = print_expr(e.args[0], 1) + " + " + print_expr(e.args[1], 2); break;
    case Expr::Kind::sub: s = print_expr(e.args[0], 1) + " - " + print_expr(e.args[1], 2); break;
    case Expr::Kind::neg: s = "-" + print_expr(e.args[0], 2); break;
    case Expr::Kind::mul: s = print_expr(e.args[0], 2) + "*" + print_expr(e.args[1], 3); break;
    case Expr::Kind::pow: {
      const Expr& x = e.args[1];
      std::string exp = precedence(x) == 4 ? print_expr(x) : "(" + print_expr(x) + ")";
      s = print_expr(e.args[0], 4) + "^" + exp;
      break;
    }
  }
  return precedence(e) < min_prec ? "(" + s + ")" : s;
}

}  // namespace detail

inline Session parse_session(std::string_view text, ParseOptions opts = {}) {
  detail::Lexer lexer(text);
  return detail::Parser(lexer.run(), opts).run();
}

inline std::string print_expr(const Expr& e) { return detail::print_expr(e); }

inline std::string pretty_print(const Statement& st) {
  struct Printer {
    std::string operator()(const CharDecl& d) const { return "char " + std::to_string(d.value) + ";"; }
    std::string operator()(const VarsDecl& d) const {
      std::string s = "vars ";
      for (std::size_t i = 0; i < d.names.size(); ++i) s += (i ? ", " : "") + d.names[i];
      return s + ";";
    }
    std::string operator()(const ParamDecl& d) const {
      return "param " + d.name + " = " + std::to_string(d.lo) + ".." + std::to_string(d.hi) + ";";
    }
    std::string operator()(const IdealDecl& d) const {
      std::string s = "ideal " + d.name + " =";
      for (std::size_t i = 0; i < d.generators.size(); ++i) s += (i ? ", " : " ") + print_expr(d.generators[i]);
      return s + ";";
    }
    std::string operator()(const TableDecl& d) const {
      std::string s = "synthetic_table " + d.name + " = {";
      for (std::size_t i = 0; i < d.entries.size(); ++i) {
        const auto& e = d.entries[i];
        s += (i ? ", (" : "(") + std::to_string(e.index) + ", " + std::to_string(e.degree) + "): " + std::to_string(e.dim);
      }
      return s + "};";
    }
    std::string operator()(const Command& c) const {
      std::string s = (c.check ? "check " : "") + c.verb + " " + c.target;
      for (const auto& o : c.options) {
        s += " " + o.key + "=" + std::to_string(o.lo);
        if (o.hi) s += ".." + std::to_string(*o.hi);
      }
      return s + ";";
    }
  };
  return std::visit(Printer{}, st);
}

inline std::string pretty_print(const Session& s) {
  std::string out;
  for (const auto& st : s.statements) out += pretty_print(st) + "\n";
  return out;
}

// Parameter assignment for expanding a parametrized ideal.
using ParamValues = std::map<std::string, std::int64_t>;

inline constexpr std::int64_t kMaxIntegerValue = INT64_C(1000000000000);

inline std::int64_t eval_integer(const Expr& e, const ParamValues& params) {
  std::int64_t v = 0;
  auto checked = [&v](bool overflow) {
    if (overflow || v > kMaxIntegerValue || v < -kMaxIntegerValue) throw DomainError("integer expression overflow");
    return v;
  };
  std::int64_t a = 0, b = 0;
  if (e.args.size() == 2) {
    a = eval_integer(e.args[0], params);
    b = eval_integer(e.args[1], params);
  }
  switch (e.kind) {
    case Expr::Kind::integer: return e.value;
    case Expr::Kind::name: {
      auto it = params.find(e.name);
      if (it == params.end()) throw DomainError("parameter '" + e.name + "' has no value");
      return it->second;
    }
    case Expr::Kind::add: return checked(__builtin_add_overflow(a, b, &v));
    case Expr::Kind::sub: return checked(__builtin_sub_overflow(a, b, &v));
    case Expr::Kind::mul: return checked(__builtin_mul_overflow(a, b, &v));
    case Expr::Kind::neg: return -eval_integer(e.args[0], params);
    case Expr::Kind::pow: break;
  }
  throw DomainError("power in integer expression");
}

inline constexpr std::int64_t kMaxExponent = 1000;

inline Polynomial eval_polynomial(const Expr& e, const RingPtr& ring, const ParamValues& params) {
  switch (e.kind) {
    case Expr::Kind::integer: return Polynomial::constant(ring, e.value);
    case Expr::Kind::name: {
      auto idx = ring->index_of(e.name);
      if (idx >= 0) return Polynomial::variable(ring, static_cast<std::size_t>(idx));
      return Polynomial::constant(ring, eval_integer(e, params));
    }
    case Expr::Kind::add: return eval_polynomial(e.args[0], ring, params) + eval_polynomial(e.args[1], ring, params);
    case Expr::Kind::sub: return eval_polynomial(e.args[0], ring, params) - eval_polynomial(e.args[1], ring, params);
    case Expr::Kind::mul: return eval_polynomial(e.args[0], ring, params) * eval_polynomial(e.args[1], ring, params);
    case Expr::Kind::neg: return -eval_polynomial(e.args[0], ring, params);
    case Expr::Kind::pow: {
      std::int64_t k = eval_integer(e.args[1], params);
      if (k < 0) throw DomainError("negative exponent " + std::to_string(k));
      if (k > kMaxExponent) throw GuardExceeded("exponent " + std::to_string(k) + " exceeds " + std::to_string(kMaxExponent));
      return eval_polynomial(e.args[0], ring, params).pow(static_cast<unsigned>(k));
    }
  }
  throw DomainError("malformed expression");
}

// Parameter names referenced anywhere in e, restricted to `declared`.
inline void collect_params(const Expr& e, const std::set<std::string>& declared, std::set<std::string>& out) {
  if (e.kind == Expr::Kind::name && declared.contains(e.name)) out.insert(e.name);
  for (const auto& a : e.args) collect_params(a, declared, out);
}

}  // namespace formring
