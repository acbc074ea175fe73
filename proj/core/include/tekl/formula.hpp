#ifndef TEKL_FORMULA_HPP
#define TEKL_FORMULA_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tekl/term.hpp"
#include "tekl/time.hpp"

namespace tekl {

// Time position of an atom or modality: a literal tick or a variable bound by
// a timestamp quantifier.
class TimeExpr {
 public:
  TimeExpr() = default;

  static TimeExpr literal(Timestamp t) {
    TimeExpr e;
    e.value_ = t;
    return e;
  }
  static TimeExpr variable(std::string name) {
    TimeExpr e;
    e.var_ = std::move(name);
    return e;
  }

  bool is_literal() const { return var_.empty(); }
  bool is_variable() const { return !var_.empty(); }
  Timestamp value() const {
    if (!is_literal()) throw std::logic_error("time variable " + var_ + " not instantiated");
    return value_;
  }
  const std::string& var() const { return var_; }

  TimeExpr substituted(const std::string& var, Timestamp v) const {
    return (is_variable() && var_ == var) ? literal(v) : *this;
  }

  bool operator==(const TimeExpr& o) const { return var_ == o.var_ && (is_variable() || value_ == o.value_); }

  int compare(const TimeExpr& o) const {
    if (is_variable() != o.is_variable()) return is_variable() ? 1 : -1;
    if (is_variable()) return var_.compare(o.var_) < 0 ? -1 : (var_ == o.var_ ? 0 : 1);
    return value_ < o.value_ ? -1 : (value_ == o.value_ ? 0 : 1);
  }

  std::size_t hash() const {
    if (is_variable()) {
      std::size_t h = 0x9e3779b97f4a7c15ull;
      for (char c : var_) h = h * 131 + static_cast<unsigned char>(c);
      return h;
    }
    return value_.ticks * 0x100000001b3ull + 7;
  }

  std::string to_string() const { return is_variable() ? var_ : tekl::to_string(value_); }

 private:
  Timestamp value_{};
  std::string var_;
};

class Formula;

// Something that happens at a trace step. Belief-enter events carry the
// believes-rooted formula being told to the agent.
struct Event {
  std::string name;
  std::vector<Term> args;
  std::shared_ptr<const Formula> belief;  // set iff name == "enter"

  bool is_enter() const { return name == "enter"; }
  const std::string& enter_agent() const { return args.at(0).name(); }

  bool operator==(const Event& o) const;
  int compare(const Event& o) const;
  std::size_t hash() const;
  std::string to_string() const;
};

enum class FormulaKind {
  False,
  Atom,          // predicate / connection / action, per AtomKind
  Occurrence,    // occ[t](event)
  Not,
  And,
  ForallTime,    // forall t . body
  ForallDomain,  // forall x : D[t] . body   (time optional in policies)
  Knows,
  Believes,
  TimeCompare,   // t1 <= t2 and friends; folds to a constant once ground
  // Sugar kinds, removed by expand_macros:
  SomeoneKnows,
  EveryoneKnows,
  Learn,
  Accept,
  Forget,
  Reject,
};

enum class AtomKind { Predicate, Connection, Action };

enum class CmpOp { Lt, Le, Gt, Ge, Eq, Ne };

std::string to_string(CmpOp op);

// Immutable formula. Cheap to copy (shared node), structurally compared and
// hashed; the hash is computed once at construction.
class Formula {
 public:
  struct Node;

  Formula() = default;  // empty handle; only valid after assignment

  // -- factories ------------------------------------------------------------
  static Formula false_formula();
  static Formula true_formula();  // !false
  static Formula predicate(std::string name, TimeExpr t, std::vector<Term> args);
  static Formula connection(std::string name, TimeExpr t, Term i, Term j);
  static Formula action(std::string name, TimeExpr t, Term i, Term j);
  static Formula atom(AtomKind kind, std::string name, TimeExpr t, std::vector<Term> args);
  static Formula occurrence(TimeExpr t, Event e);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula conjoin(const std::vector<Formula>& fs);  // empty -> true
  static Formula implies(Formula a, Formula b);            // !(a && !b)
  static Formula forall_time(std::string var, Formula body);
  static Formula forall_domain(std::string var, std::string domain,
                               std::optional<TimeExpr> t, Formula body);
  static Formula knows(TimeExpr t, Term agent, Formula body);
  static Formula believes(TimeExpr t, Term agent, Formula body);
  static Formula time_compare(CmpOp op, TimeExpr lhs, TimeExpr rhs);
  static Formula someone_knows(TimeExpr t, std::vector<Term> group, Formula body);
  static Formula everyone_knows(TimeExpr t, std::vector<Term> group, Formula body);
  static Formula learn(TimeExpr t, Term agent, Formula body);
  static Formula accept(TimeExpr t, Term agent, Formula body);
  static Formula forget(TimeExpr t, Term agent, Formula body);
  static Formula reject(TimeExpr t, Term agent, Formula body);

  // -- inspection -----------------------------------------------------------
  bool valid() const { return node_ != nullptr; }
  FormulaKind kind() const;
  AtomKind atom_kind() const;
  const std::string& name() const;          // atom name
  const TimeExpr& time() const;             // atom/occ/modal/cmp-lhs time
  const std::vector<Term>& args() const;    // atom args
  const Event& event() const;               // occurrence payload
  const Term& agent() const;                // modal agent
  const std::vector<Term>& group() const;   // S/E group
  Formula child() const;                    // Not body
  Formula lhs() const;                      // And left
  Formula rhs() const;                      // And right
  Formula body() const;                     // quantifier / modal body
  const std::string& var() const;           // quantifier variable
  const std::string& domain() const;        // domain quantifier domain name
  const std::optional<TimeExpr>& domain_time() const;
  CmpOp cmp_op() const;
  const TimeExpr& cmp_rhs() const;

  bool is_false() const { return kind() == FormulaKind::False; }
  bool is_atomic() const;  // atom / occurrence / cmp / false
  bool contains_modality() const;
  bool contains_quantifier() const;
  bool contains_sugar() const;
  bool is_ground() const;  // no time or term variables anywhere

  // a => b encoded as !(a && !b)
  std::optional<std::pair<Formula, Formula>> as_implication() const;

  // -- rewriting ------------------------------------------------------------
  Formula substitute_time(const std::string& var, Timestamp v) const;
  Formula substitute_term(const std::string& var, const Term& value) const;
  // Rewrites every literal timestamp (atoms, modalities, folds nothing).
  Formula retime(const std::function<Timestamp(Timestamp)>& map) const;
  // Same node with a different atom classification (used when binding a
  // formula to a trace that declares connection/permission names).
  Formula with_atom_kind(AtomKind k) const;

  // Preorder walk over formula nodes; does not descend into event payloads.
  void for_each(const std::function<void(const Formula&)>& fn) const;

  // Rebuilds the formula with every atomic node (atom, occurrence, time
  // comparison, false) replaced by fn's result. Non-atomic structure is kept.
  Formula transform_atoms(const std::function<Formula(const Formula&)>& fn) const;

  // -- identity -------------------------------------------------------------
  bool operator==(const Formula& o) const { return equals(o); }
  bool equals(const Formula& o) const;
  int compare(const Formula& o) const;  // total order
  std::size_t hash() const;
  std::size_t size() const;  // formula node count
  std::string to_string() const;

  struct Hash {
    std::size_t operator()(const Formula& f) const { return f.hash(); }
  };
  struct Less {
    bool operator()(const Formula& a, const Formula& b) const { return a.compare(b) < 0; }
  };

  const Node& node() const;

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Node n);

  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  FormulaKind kind;
  AtomKind atom_kind = AtomKind::Predicate;
  std::string name;                     // atom name / quantifier var
  std::string domain;                   // domain quantifier
  TimeExpr time;                        // atom/modal time, cmp lhs
  std::optional<TimeExpr> domain_time;  // domain quantifier time
  std::vector<Term> args;               // atom args / modal group
  Term agent;                           // modal agent
  std::optional<Event> event;           // occurrence
  Formula a, b;                         // children
  CmpOp cmp = CmpOp::Le;
  TimeExpr cmp_rhs;
  std::size_t hash = 0;
  std::size_t size = 1;
};

}  // namespace tekl

#endif
