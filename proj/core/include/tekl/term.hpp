#ifndef TEKL_TERM_HPP
#define TEKL_TERM_HPP

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace tekl {

struct AgentId {
  std::string name;
  bool is_environment = false;

  bool operator==(const AgentId& o) const { return name == o.name; }
  auto operator<=>(const AgentId& o) const { return name <=> o.name; }
};

// First-order term: constant, variable, or function application.
class Term {
 public:
  enum class Kind { Constant, Variable, Application };

  Term() : kind_(Kind::Constant) {}

  static Term constant(std::string name) { return Term(Kind::Constant, std::move(name), {}); }
  static Term variable(std::string name) { return Term(Kind::Variable, std::move(name), {}); }
  static Term application(std::string fn, std::vector<Term> args) {
    return Term(Kind::Application, std::move(fn), std::move(args));
  }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::vector<Term>& args() const { return args_; }
  bool is_constant() const { return kind_ == Kind::Constant; }
  bool is_variable() const { return kind_ == Kind::Variable; }

  bool operator==(const Term& o) const {
    return kind_ == o.kind_ && name_ == o.name_ && args_ == o.args_;
  }

  // Total order, used to keep formula sets canonical.
  int compare(const Term& o) const {
    if (kind_ != o.kind_) return kind_ < o.kind_ ? -1 : 1;
    if (int c = name_.compare(o.name_); c != 0) return c < 0 ? -1 : 1;
    if (args_.size() != o.args_.size()) return args_.size() < o.args_.size() ? -1 : 1;
    for (std::size_t i = 0; i < args_.size(); ++i)
      if (int c = args_[i].compare(o.args_[i]); c != 0) return c;
    return 0;
  }

  std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(kind_) * 1099511628211ull;
    for (char c : name_) h = h * 131 + static_cast<unsigned char>(c);
    for (const Term& a : args_) h = h * 1000003 + a.hash();
    return h;
  }

  Term substitute(const std::string& var, const Term& value) const {
    if (kind_ == Kind::Variable && name_ == var) return value;
    if (kind_ == Kind::Application) {
      std::vector<Term> out;
      out.reserve(args_.size());
      for (const Term& a : args_) out.push_back(a.substitute(var, value));
      return application(name_, std::move(out));
    }
    return *this;
  }

  bool has_variable() const {
    if (kind_ == Kind::Variable) return true;
    for (const Term& a : args_)
      if (a.has_variable()) return true;
    return false;
  }

  std::string to_string() const {
    if (kind_ != Kind::Application) return name_;
    std::string s = name_ + "(";
    for (std::size_t i = 0; i < args_.size(); ++i) {
      if (i) s += ",";
      s += args_[i].to_string();
    }
    return s + ")";
  }

 private:
  Term(Kind k, std::string n, std::vector<Term> a)
      : kind_(k), name_(std::move(n)), args_(std::move(a)) {}

  Kind kind_;
  std::string name_;
  std::vector<Term> args_;
};

// Declared function arities; applications are checked against it at parse.
class ArityTable {
 public:
  void declare(const std::string& fn, std::size_t arity) { arity_[fn] = arity; }

  void check(const Term& t) const {
    if (t.kind() == Term::Kind::Application) {
      auto it = arity_.find(t.name());
      if (it != arity_.end() && it->second != t.args().size())
        throw std::invalid_argument("arity mismatch for function " + t.name());
      for (const Term& a : t.args()) check(a);
    }
  }

 private:
  std::map<std::string, std::size_t> arity_;
};

}  // namespace tekl

#endif
