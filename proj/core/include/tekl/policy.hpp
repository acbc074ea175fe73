#ifndef TEKL_POLICY_HPP
#define TEKL_POLICY_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tekl/formula.hpp"
#include "tekl/time.hpp"

namespace tekl {

// Privacy policy: a restricted formula bracketed with an owner and a start
// time. The denied part (alpha layer) keeps negation confined to the modal
// bodies; the optional guard is an unrestricted formula.
class Policy {
 public:
  enum class Kind { And, Forall, Restriction };

  static Policy conjunction(Policy l, Policy r) {
    Policy p(Kind::And);
    p.a_ = std::make_shared<Policy>(std::move(l));
    p.b_ = std::make_shared<Policy>(std::move(r));
    return p;
  }

  // Domain-less binder quantifies over trace timestamps.
  static Policy forall(std::string var, std::optional<std::string> domain,
                       std::optional<TimeExpr> domain_time, Policy body) {
    Policy p(Kind::Forall);
    p.var_ = std::move(var);
    p.domain_ = std::move(domain);
    p.domain_time_ = domain_time;
    p.a_ = std::make_shared<Policy>(std::move(body));
    return p;
  }

  static Policy restriction(std::string owner, Timestamp start, std::optional<Formula> guard,
                            Formula denied) {
    Policy p(Kind::Restriction);
    p.owner_ = std::move(owner);
    p.start_ = start;
    p.guard_ = std::move(guard);
    p.denied_ = std::move(denied);
    return p;
  }

  Kind kind() const { return kind_; }
  const Policy& lhs() const { return *a_; }
  const Policy& rhs() const { return *b_; }
  const Policy& body() const { return *a_; }
  const std::string& var() const { return var_; }
  const std::optional<std::string>& domain() const { return domain_; }
  const std::optional<TimeExpr>& domain_time() const { return domain_time_; }
  const std::string& owner() const { return owner_; }
  Timestamp start() const { return start_; }
  const std::optional<Formula>& guard() const { return guard_; }
  const Formula& denied() const { return denied_; }

  // Owner / start of the leftmost restriction; the usual case is a single
  // block.
  const std::string& first_owner() const { return leftmost().owner_; }
  Timestamp first_start() const { return leftmost().start_; }

  Policy substitute_time(const std::string& var, Timestamp v) const {
    Policy out = clone_shallow();
    if (kind_ == Kind::Forall && var_ == var) return *this;
    if (kind_ == Kind::Forall && domain_time_)
      out.domain_time_ = domain_time_->substituted(var, v);
    if (kind_ == Kind::Restriction) {
      if (guard_) out.guard_ = guard_->substitute_time(var, v);
      out.denied_ = denied_.substitute_time(var, v);
      return out;
    }
    if (a_) out.a_ = std::make_shared<Policy>(a_->substitute_time(var, v));
    if (b_) out.b_ = std::make_shared<Policy>(b_->substitute_time(var, v));
    return out;
  }

  Policy substitute_term(const std::string& var, const Term& value) const {
    Policy out = clone_shallow();
    if (kind_ == Kind::Forall && var_ == var) return *this;
    if (kind_ == Kind::Restriction) {
      if (guard_) out.guard_ = guard_->substitute_term(var, value);
      out.denied_ = denied_.substitute_term(var, value);
      return out;
    }
    if (a_) out.a_ = std::make_shared<Policy>(a_->substitute_term(var, value));
    if (b_) out.b_ = std::make_shared<Policy>(b_->substitute_term(var, value));
    return out;
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::And:
        return a_->to_string() + " && " + b_->to_string();
      case Kind::Forall: {
        std::string head = "forall " + var_;
        if (domain_) {
          head += " : " + *domain_;
          if (domain_time_) head += "[" + domain_time_->to_string() + "]";
        }
        return head + " . " + a_->to_string();
      }
      case Kind::Restriction: {
        std::string s = "policy[" + owner_ + "," + tekl::to_string(start_) + "] { ";
        if (guard_) s += guard_->to_string() + " => ";
        s += "deny " + denied_.to_string() + " }";
        return s;
      }
    }
    return "?";
  }

  bool operator==(const Policy& o) const { return to_string() == o.to_string(); }

 private:
  explicit Policy(Kind k) : kind_(k) {}

  Policy clone_shallow() const { return *this; }

  const Policy& leftmost() const {
    const Policy* p = this;
    while (p->kind_ != Kind::Restriction) p = p->a_.get();
    return *p;
  }

  Kind kind_;
  std::shared_ptr<Policy> a_, b_;
  std::string var_;
  std::optional<std::string> domain_;
  std::optional<TimeExpr> domain_time_;
  std::string owner_;
  Timestamp start_{};
  std::optional<Formula> guard_;
  Formula denied_;
};

}  // namespace tekl

#endif
