#include "tekl/parser.hpp"

#include <cctype>
#include <map>
#include <set>
#include <vector>

namespace tekl {

namespace {

enum class Tok {
  End,
  Ident,
  Int,
  TimeLabel,
  SQString,
  LBracket,
  RBracket,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Dot,
  Colon,
  Bang,
  AndAnd,
  Arrow,
  Le,
  Lt,
  Ge,
  Gt,
  EqEq,
  Ne,
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_ws();
      Token t = next();
      out.push_back(t);
      if (t.kind == Tok::End) break;
    }
    return out;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  SourceSpan here() const { return SourceSpan{line_, col_, pos_, 0}; }

  Token make(Tok k, SourceSpan start, std::string text) {
    start.length = pos_ - start.offset;
    return Token{k, std::move(text), start};
  }

  Token next() {
    SourceSpan start = here();
    if (pos_ >= text_.size()) return make(Tok::End, start, "");
    char c = text_[pos_];

    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        s += text_[pos_];
        advance();
      }
      return make(Tok::Ident, start, std::move(s));
    }

    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string s;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        s += text_[pos_];
        advance();
      }
      // "hh:mm" style label, resolved through the trace's label table
      if (pos_ + 1 < text_.size() && text_[pos_] == ':' &&
          std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
        s += ':';
        advance();
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          s += text_[pos_];
          advance();
        }
        return make(Tok::TimeLabel, start, std::move(s));
      }
      return make(Tok::Int, start, std::move(s));
    }

    if (c == '\'') {
      advance();
      std::string s;
      while (pos_ < text_.size() && text_[pos_] != '\'') {
        s += text_[pos_];
        advance();
      }
      if (pos_ >= text_.size()) throw ParseError(start, "unterminated quoted formula");
      advance();
      return make(Tok::SQString, start, std::move(s));
    }

    auto two = [&](char a, char b) {
      return c == a && pos_ + 1 < text_.size() && text_[pos_ + 1] == b;
    };
    if (two('&', '&')) { advance(); advance(); return make(Tok::AndAnd, start, "&&"); }
    if (two('=', '>')) { advance(); advance(); return make(Tok::Arrow, start, "=>"); }
    if (two('<', '=')) { advance(); advance(); return make(Tok::Le, start, "<="); }
    if (two('>', '=')) { advance(); advance(); return make(Tok::Ge, start, ">="); }
    if (two('=', '=')) { advance(); advance(); return make(Tok::EqEq, start, "=="); }
    if (two('!', '=')) { advance(); advance(); return make(Tok::Ne, start, "!="); }

    advance();
    switch (c) {
      case '[': return make(Tok::LBracket, start, "[");
      case ']': return make(Tok::RBracket, start, "]");
      case '(': return make(Tok::LParen, start, "(");
      case ')': return make(Tok::RParen, start, ")");
      case '{': return make(Tok::LBrace, start, "{");
      case '}': return make(Tok::RBrace, start, "}");
      case ',': return make(Tok::Comma, start, ",");
      case '.': return make(Tok::Dot, start, ".");
      case ':': return make(Tok::Colon, start, ":");
      case '!': return make(Tok::Bang, start, "!");
      case '<': return make(Tok::Lt, start, "<");
      case '>': return make(Tok::Gt, start, ">");
      default:
        throw ParseError(start, std::string("unexpected character '") + c + "'");
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

bool is_modal_keyword(const std::string& s) {
  return s == "K" || s == "B" || s == "S" || s == "E" || s == "L" || s == "AC" || s == "F" ||
         s == "RJ" || s == "P";
}

class Parser {
 public:
  Parser(const std::string& text, const ParseOptions& opts)
      : opts_(opts), tokens_(Lexer(text).run()) {}

  Formula formula() {
    Formula f = parse_expr();
    expect(Tok::End, "trailing input after formula");
    return expand_macros(f);
  }

  Policy policy() {
    Policy p = parse_delta();
    expect(Tok::End, "trailing input after policy");
    return p;
  }

  Event event() {
    Event e = parse_event_payload();
    expect(Tok::End, "trailing input after event");
    return e;
  }

 private:
  // -- token plumbing -------------------------------------------------------
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token& advance() { return tokens_[pos_++]; }
  bool check(Tok k) const { return peek().kind == k; }
  bool match(Tok k) {
    if (!check(k)) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok k, const std::string& what) {
    if (!check(k)) throw ParseError(peek().span, what);
    return advance();
  }
  bool at_ident(const char* kw) const { return check(Tok::Ident) && peek().text == kw; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(peek().span, msg); }

  // -- scopes ---------------------------------------------------------------
  bool is_time_var(const std::string& s) const { return time_vars_.count(s) > 0; }
  bool is_domain_var(const std::string& s) const { return domain_vars_.count(s) > 0; }

  struct ScopedVar {
    std::set<std::string>& set;
    std::string name;
    bool added;
    ScopedVar(std::set<std::string>& s, std::string n) : set(s), name(std::move(n)) {
      added = set.insert(name).second;
    }
    ~ScopedVar() {
      if (added) set.erase(name);
    }
  };

  // -- shared pieces ----------------------------------------------------------
  TimeExpr parse_time() {
    const Token& t = peek();
    if (t.kind == Tok::Int) {
      advance();
      return TimeExpr::literal(Timestamp(std::stoull(t.text)));
    }
    if (t.kind == Tok::TimeLabel) {
      advance();
      if (!opts_.time_labels || !opts_.time_labels->count(t.text))
        throw ParseError(t.span, "unknown time label '" + t.text + "'");
      return TimeExpr::literal(Timestamp(opts_.time_labels->at(t.text)));
    }
    if (t.kind == Tok::Ident) {
      if (!is_time_var(t.text))
        throw ParseError(t.span, "unbound variable '" + t.text + "' in time position");
      advance();
      return TimeExpr::variable(t.text);
    }
    throw ParseError(t.span, "expected a timestamp");
  }

  bool at_time_start() const {
    return check(Tok::Int) || check(Tok::TimeLabel) ||
           (check(Tok::Ident) && is_time_var(peek().text));
  }

  Term parse_term() {
    const Token& t = peek();
    if (t.kind == Tok::Int) {
      advance();
      return Term::constant(t.text);
    }
    if (t.kind != Tok::Ident) throw ParseError(t.span, "expected a term");
    advance();
    if (check(Tok::LParen)) {
      advance();
      std::vector<Term> args;
      if (!check(Tok::RParen)) {
        args.push_back(parse_term());
        while (match(Tok::Comma)) args.push_back(parse_term());
      }
      expect(Tok::RParen, "expected ')' after function arguments");
      check_arity("fn:" + t.text, args.size(), t.span);
      return Term::application(t.text, std::move(args));
    }
    if (is_time_var(t.text) || is_domain_var(t.text)) return Term::variable(t.text);
    return Term::constant(t.text);
  }

  Term parse_agent() {
    const Token& t = expect(Tok::Ident, "expected an agent");
    if (is_domain_var(t.text) || is_time_var(t.text)) return Term::variable(t.text);
    return Term::constant(t.text);
  }

  void check_arity(const std::string& key, std::size_t n, SourceSpan span) {
    auto [it, inserted] = arity_.emplace(key, n);
    if (!inserted && it->second != n)
      throw ParseError(span, "arity mismatch for '" + key.substr(key.find(':') + 1) + "': saw " +
                                 std::to_string(n) + " arguments, previously " +
                                 std::to_string(it->second));
  }

  Event parse_event_payload() {
    const Token& name = expect(Tok::Ident, "expected an event name");
    expect(Tok::LParen, "expected '(' after event name");
    Event e;
    e.name = name.text;
    if (e.name == "enter") {
      const Token& agent = expect(Tok::Ident, "expected the receiving agent");
      e.args.push_back(Term::constant(agent.text));
      expect(Tok::Comma, "expected ',' before the entered belief");
      const Token& text = expect(Tok::SQString, "expected a quoted belief formula");
      Formula belief = parse_formula(text.text, opts_);
      if (belief.kind() != FormulaKind::Believes)
        throw ParseError(text.span, "entered formula must be believes-rooted");
      if (belief.agent() != Term::constant(agent.text))
        throw ParseError(text.span, "entered belief names a different agent");
      e.belief = std::make_shared<const Formula>(std::move(belief));
    } else if (!check(Tok::RParen)) {
      e.args.push_back(parse_term());
      while (match(Tok::Comma)) e.args.push_back(parse_term());
    }
    expect(Tok::RParen, "expected ')' after event");
    return e;
  }

  // -- formula grammar --------------------------------------------------------
  Formula parse_expr() {
    Formula lhs = parse_and();
    if (check(Tok::Arrow)) {
      if (guard_mode_ && peek(1).kind == Tok::Ident && peek(1).text == "deny") return lhs;
      advance();
      Formula rhs = parse_expr();
      return Formula::implies(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (check(Tok::AndAnd)) {
      advance();
      Formula rhs = parse_unary();
      lhs = Formula::conjunction(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Formula parse_unary() {
    const Token& t = peek();
    if (t.kind == Tok::Bang) {
      advance();
      return Formula::negation(parse_unary());
    }
    if (t.kind == Tok::LParen) {
      advance();
      Formula f = parse_expr();
      expect(Tok::RParen, "expected ')'");
      return f;
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "false" && peek(1).kind != Tok::LBracket) {
        advance();
        return Formula::false_formula();
      }
      if (t.text == "forall" || t.text == "exists") return parse_quantifier(t.text == "exists");
      if (t.text == "box" || t.text == "diamond") return parse_temporal(t.text == "diamond");
      if (t.text == "occ" && peek(1).kind == Tok::LBracket) return parse_occurrence();
      if (is_modal_keyword(t.text) && peek(1).kind == Tok::LBracket) return parse_modal();
    }
    return parse_atom_or_compare();
  }

  Formula parse_quantifier(bool existential) {
    advance();  // forall / exists
    const Token& var = expect(Tok::Ident, "expected a bound variable");
    if (match(Tok::Colon)) {
      const Token& dom = expect(Tok::Ident, "expected a domain name");
      std::optional<TimeExpr> at;
      if (match(Tok::LBracket)) {
        at = parse_time();
        expect(Tok::RBracket, "expected ']' after domain time");
      }
      expect(Tok::Dot, "expected '.' after quantifier");
      ScopedVar scope(domain_vars_, var.text);
      Formula body = parse_expr();
      Formula all = Formula::forall_domain(var.text, dom.text, at, std::move(body));
      if (!existential) return all;
      return Formula::negation(
          Formula::forall_domain(var.text, dom.text, at, Formula::negation(all.body())));
    }
    expect(Tok::Dot, "expected '.' after quantifier");
    ScopedVar scope(time_vars_, var.text);
    Formula body = parse_expr();
    if (!existential) return Formula::forall_time(var.text, std::move(body));
    return Formula::negation(Formula::forall_time(var.text, Formula::negation(std::move(body))));
  }

  Formula parse_temporal(bool diamond) {
    advance();  // box / diamond
    const Token& var = expect(Tok::Ident, "expected a bound time variable");
    expect(Tok::Dot, "expected '.' after temporal operator");
    ScopedVar scope(time_vars_, var.text);
    Formula body = parse_expr();
    if (!diamond) return Formula::forall_time(var.text, std::move(body));
    return Formula::negation(Formula::forall_time(var.text, Formula::negation(std::move(body))));
  }

  Formula parse_occurrence() {
    advance();  // occ
    expect(Tok::LBracket, "expected '[' after occ");
    TimeExpr at = parse_time();
    expect(Tok::RBracket, "expected ']' after occ time");
    expect(Tok::LParen, "expected '(' before event");
    Event e = parse_event_payload();
    expect(Tok::RParen, "expected ')' after event");
    return Formula::occurrence(at, std::move(e));
  }

  Formula parse_modal() {
    const Token& kw = advance();
    expect(Tok::LBracket, "expected '['");
    TimeExpr at = parse_time();
    expect(Tok::Comma, "expected ','");

    if (kw.text == "S" || kw.text == "E") {
      expect(Tok::LBrace, "expected '{' before agent group");
      std::vector<Term> group;
      if (!check(Tok::RBrace)) {
        group.push_back(parse_agent());
        while (match(Tok::Comma)) group.push_back(parse_agent());
      }
      expect(Tok::RBrace, "expected '}' after agent group");
      expect(Tok::RBracket, "expected ']'");
      if (group.empty()) throw ParseError(kw.span, "group modality over an empty group");
      Formula body = parse_expr();
      return kw.text == "S" ? Formula::someone_knows(at, std::move(group), std::move(body))
                            : Formula::everyone_knows(at, std::move(group), std::move(body));
    }

    if (kw.text == "P") {
      Term i = parse_agent();
      expect(Tok::Comma, "expected ',' between agents");
      Term j = parse_agent();
      expect(Tok::RBracket, "expected ']'");
      const Token& action = expect(Tok::Ident, "expected an action name");
      return Formula::action(action.text, at, std::move(i), std::move(j));
    }

    Term agent = parse_agent();
    expect(Tok::RBracket, "expected ']'");
    Formula body = parse_expr();
    if (kw.text == "K") return Formula::knows(at, std::move(agent), std::move(body));
    if (kw.text == "B") return Formula::believes(at, std::move(agent), std::move(body));
    if (kw.text == "L") return Formula::learn(at, std::move(agent), std::move(body));
    if (kw.text == "AC") return Formula::accept(at, std::move(agent), std::move(body));
    if (kw.text == "F") return Formula::forget(at, std::move(agent), std::move(body));
    return Formula::reject(at, std::move(agent), std::move(body));
  }

  std::optional<CmpOp> peek_cmp() const {
    switch (peek().kind) {
      case Tok::Lt: return CmpOp::Lt;
      case Tok::Le: return CmpOp::Le;
      case Tok::Gt: return CmpOp::Gt;
      case Tok::Ge: return CmpOp::Ge;
      case Tok::EqEq: return CmpOp::Eq;
      case Tok::Ne: return CmpOp::Ne;
      default: return std::nullopt;
    }
  }

  Formula parse_atom_or_compare() {
    const Token& t = peek();
    if (t.kind == Tok::Int || t.kind == Tok::TimeLabel ||
        (t.kind == Tok::Ident && is_time_var(t.text) && peek(1).kind != Tok::LBracket)) {
      return parse_compare_chain();
    }
    if (t.kind != Tok::Ident) fail("expected a formula");
    if (peek(1).kind != Tok::LBracket)
      throw ParseError(t.span, "expected '[' after predicate name '" + t.text + "'");
    advance();
    expect(Tok::LBracket, "expected '['");
    TimeExpr at = parse_time();
    expect(Tok::RBracket, "expected ']'");
    expect(Tok::LParen, "expected '(' after predicate time");
    std::vector<Term> args;
    if (!check(Tok::RParen)) {
      args.push_back(parse_term());
      while (match(Tok::Comma)) args.push_back(parse_term());
    }
    expect(Tok::RParen, "expected ')' after predicate arguments");
    check_arity("pred:" + t.text, args.size(), t.span);
    return Formula::predicate(t.text, at, std::move(args));
  }

  // a <= b <= c becomes (a <= b) && (b <= c)
  Formula parse_compare_chain() {
    TimeExpr lhs = parse_time();
    auto op = peek_cmp();
    if (!op) fail("expected a comparison operator");
    advance();
    TimeExpr rhs = parse_time();
    Formula acc = Formula::time_compare(*op, lhs, rhs);
    while ((op = peek_cmp())) {
      advance();
      TimeExpr next = parse_time();
      acc = Formula::conjunction(acc, Formula::time_compare(*op, rhs, next));
      rhs = next;
    }
    return acc;
  }

  // -- policy grammar ---------------------------------------------------------
  Policy parse_delta() {
    Policy lhs = parse_delta_unary();
    while (match(Tok::AndAnd)) {
      Policy rhs = parse_delta_unary();
      lhs = Policy::conjunction(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Policy parse_delta_unary() {
    if (at_ident("forall")) {
      advance();
      const Token& var = expect(Tok::Ident, "expected a bound variable");
      std::optional<std::string> domain;
      std::optional<TimeExpr> at;
      if (match(Tok::Colon)) {
        domain = expect(Tok::Ident, "expected a domain name").text;
        if (match(Tok::LBracket)) {
          at = parse_time();
          expect(Tok::RBracket, "expected ']' after domain time");
        }
      }
      expect(Tok::Dot, "expected '.' after quantifier");
      std::optional<ScopedVar> scope;
      if (domain)
        scope.emplace(domain_vars_, var.text);
      else
        scope.emplace(time_vars_, var.text);
      Policy body = parse_delta_unary();
      return Policy::forall(var.text, domain, at, std::move(body));
    }
    if (!at_ident("policy")) fail("expected 'policy' or 'forall'");
    advance();
    expect(Tok::LBracket, "expected '[' after policy");
    const Token& owner = expect(Tok::Ident, "expected the policy owner");
    expect(Tok::Comma, "expected ','");
    TimeExpr start = parse_time();
    if (start.is_variable()) fail("policy start time must be a literal");
    expect(Tok::RBracket, "expected ']'");
    expect(Tok::LBrace, "expected '{'");

    std::optional<Formula> guard;
    if (!at_ident("deny")) {
      guard_mode_ = true;
      guard = parse_expr();
      guard_mode_ = false;
      expect(Tok::Arrow, "expected '=>' after policy guard");
    }
    if (!at_ident("deny")) fail("expected 'deny'");
    advance();
    Formula denied = parse_alpha(false);
    expect(Tok::RBrace, "expected '}'");
    return Policy::restriction(owner.text, start.value(), std::move(guard), std::move(denied));
  }

  // The alpha layer of a policy body. `in_gamma` is true once we are inside a
  // K/B modality, where negation becomes legal and 'exists' stops being so.
  Formula parse_alpha(bool in_gamma) {
    Formula lhs = parse_alpha_unary(in_gamma);
    while (check(Tok::AndAnd)) {
      advance();
      Formula rhs = parse_alpha_unary(in_gamma);
      lhs = Formula::conjunction(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Formula parse_alpha_unary(bool in_gamma) {
    const Token& t = peek();
    if (t.kind == Tok::Bang) {
      if (!in_gamma)
        throw ParseError(t.span, "negation in a policy body is only allowed under K or B");
      advance();
      return Formula::negation(parse_alpha_unary(in_gamma));
    }
    if (t.kind == Tok::LParen) {
      advance();
      Formula f = parse_alpha(in_gamma);
      expect(Tok::RParen, "expected ')'");
      return f;
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "forall" || t.text == "exists") {
        bool existential = t.text == "exists";
        if (existential && in_gamma)
          throw ParseError(t.span, "'exists' is not allowed under a modality in a policy body");
        advance();
        const Token& var = expect(Tok::Ident, "expected a bound variable");
        std::optional<std::string> domain;
        std::optional<TimeExpr> at;
        if (match(Tok::Colon)) {
          domain = expect(Tok::Ident, "expected a domain name").text;
          if (match(Tok::LBracket)) {
            at = parse_time();
            expect(Tok::RBracket, "expected ']' after domain time");
          }
        }
        expect(Tok::Dot, "expected '.' after quantifier");
        std::optional<ScopedVar> scope;
        if (domain)
          scope.emplace(domain_vars_, var.text);
        else
          scope.emplace(time_vars_, var.text);
        Formula body = parse_alpha(in_gamma);
        Formula all = domain ? Formula::forall_domain(var.text, *domain, at,
                                                      existential ? Formula::negation(body) : body)
                             : Formula::forall_time(var.text,
                                                    existential ? Formula::negation(body) : body);
        return existential ? Formula::negation(all) : all;
      }
      if ((t.text == "K" || t.text == "B") && peek(1).kind == Tok::LBracket) {
        advance();
        expect(Tok::LBracket, "expected '['");
        TimeExpr at = parse_time();
        expect(Tok::Comma, "expected ','");
        Term agent = parse_agent();
        expect(Tok::RBracket, "expected ']'");
        Formula body = parse_alpha(true);
        return t.text == "K" ? Formula::knows(at, std::move(agent), std::move(body))
                             : Formula::believes(at, std::move(agent), std::move(body));
      }
      if (is_modal_keyword(t.text) && peek(1).kind == Tok::LBracket)
        throw ParseError(t.span, "operator '" + t.text + "' is not allowed in a policy body");
      if (t.text == "occ" && peek(1).kind == Tok::LBracket) return parse_occurrence();
    }
    return parse_atom_or_compare();
  }

  ParseOptions opts_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::set<std::string> time_vars_;
  std::set<std::string> domain_vars_;
  std::map<std::string, std::size_t> arity_;
  bool guard_mode_ = false;
};

}  // namespace

Formula parse_formula(const std::string& text, const ParseOptions& opts) {
  return Parser(text, opts).formula();
}

Policy parse_policy(const std::string& text, const ParseOptions& opts) {
  return Parser(text, opts).policy();
}

Event parse_event(const std::string& text, const ParseOptions& opts) {
  return Parser(text, opts).event();
}

}  // namespace tekl
