#include "tekl/formula.hpp"

#include <algorithm>
#include <cassert>

namespace tekl {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

std::size_t hash_string(const std::string& s) {
  std::size_t h = 1469598103934665603ull;
  for (char c : s) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
  return h;
}

// Printing precedence: modalities and quantifiers extend to the right and
// bind weakest; '&&' sits in the middle; '!' and atoms bind tightest.
int level(FormulaKind k) {
  switch (k) {
    case FormulaKind::And:
      return 1;
    case FormulaKind::Not:
      return 2;
    case FormulaKind::False:
    case FormulaKind::Atom:
    case FormulaKind::Occurrence:
    case FormulaKind::TimeCompare:
      return 3;
    default:
      return 0;
  }
}

}  // namespace

std::string to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "!=";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Event

bool Event::operator==(const Event& o) const { return compare(o) == 0; }

int Event::compare(const Event& o) const {
  if (int c = name.compare(o.name); c != 0) return c < 0 ? -1 : 1;
  if (args.size() != o.args.size()) return args.size() < o.args.size() ? -1 : 1;
  for (std::size_t i = 0; i < args.size(); ++i)
    if (int c = args[i].compare(o.args[i]); c != 0) return c;
  if (!belief && !o.belief) return 0;
  if (!belief || !o.belief) return belief ? 1 : -1;
  return belief->compare(*o.belief);
}

std::size_t Event::hash() const {
  std::size_t h = hash_string(name);
  for (const Term& a : args) h = mix(h, a.hash());
  if (belief) h = mix(h, belief->hash());
  return h;
}

std::string Event::to_string() const {
  if (is_enter()) return "enter(" + args.at(0).to_string() + ", '" + belief->to_string() + "')";
  std::string s = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ",";
    s += args[i].to_string();
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// Construction

Formula Formula::make(Node n) {
  std::size_t h = hash_string(std::string(1, static_cast<char>('A' + static_cast<int>(n.kind))));
  std::size_t sz = 1;
  h = mix(h, static_cast<std::size_t>(n.atom_kind));
  h = mix(h, hash_string(n.name));
  h = mix(h, hash_string(n.domain));
  h = mix(h, n.time.hash());
  if (n.domain_time) h = mix(h, n.domain_time->hash());
  for (const Term& t : n.args) h = mix(h, t.hash());
  h = mix(h, n.agent.hash());
  if (n.event) h = mix(h, n.event->hash());
  if (n.a.valid()) {
    h = mix(h, n.a.hash());
    sz += n.a.size();
  }
  if (n.b.valid()) {
    h = mix(h, n.b.hash());
    sz += n.b.size();
  }
  h = mix(h, static_cast<std::size_t>(n.cmp));
  h = mix(h, n.cmp_rhs.hash());
  // A comparison carries two time expressions; folding it to a truth constant
  // must never grow the node count, so it weighs two.
  if (n.kind == FormulaKind::TimeCompare) ++sz;
  n.hash = h;
  n.size = sz;
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::false_formula() {
  Node n;
  n.kind = FormulaKind::False;
  return make(std::move(n));
}

Formula Formula::true_formula() { return negation(false_formula()); }

Formula Formula::atom(AtomKind kind, std::string name, TimeExpr t, std::vector<Term> args) {
  Node n;
  n.kind = FormulaKind::Atom;
  n.atom_kind = kind;
  n.name = std::move(name);
  n.time = t;
  n.args = std::move(args);
  return make(std::move(n));
}

Formula Formula::predicate(std::string name, TimeExpr t, std::vector<Term> args) {
  return atom(AtomKind::Predicate, std::move(name), t, std::move(args));
}

Formula Formula::connection(std::string name, TimeExpr t, Term i, Term j) {
  return atom(AtomKind::Connection, std::move(name), t, {std::move(i), std::move(j)});
}

Formula Formula::action(std::string name, TimeExpr t, Term i, Term j) {
  return atom(AtomKind::Action, std::move(name), t, {std::move(i), std::move(j)});
}

Formula Formula::occurrence(TimeExpr t, Event e) {
  Node n;
  n.kind = FormulaKind::Occurrence;
  n.time = t;
  n.event = std::move(e);
  return make(std::move(n));
}

Formula Formula::negation(Formula f) {
  Node n;
  n.kind = FormulaKind::Not;
  n.a = std::move(f);
  return make(std::move(n));
}

Formula Formula::conjunction(Formula a, Formula b) {
  Node n;
  n.kind = FormulaKind::And;
  n.a = std::move(a);
  n.b = std::move(b);
  return make(std::move(n));
}

Formula Formula::conjoin(const std::vector<Formula>& fs) {
  if (fs.empty()) return true_formula();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conjunction(acc, fs[i]);
  return acc;
}

Formula Formula::implies(Formula a, Formula b) {
  return negation(conjunction(std::move(a), negation(std::move(b))));
}

Formula Formula::forall_time(std::string var, Formula body) {
  Node n;
  n.kind = FormulaKind::ForallTime;
  n.name = std::move(var);
  n.a = std::move(body);
  return make(std::move(n));
}

Formula Formula::forall_domain(std::string var, std::string domain, std::optional<TimeExpr> t,
                               Formula body) {
  Node n;
  n.kind = FormulaKind::ForallDomain;
  n.name = std::move(var);
  n.domain = std::move(domain);
  n.domain_time = t;
  n.a = std::move(body);
  return make(std::move(n));
}

Formula Formula::knows(TimeExpr t, Term agent, Formula body) {
  Node n;
  n.kind = FormulaKind::Knows;
  n.time = t;
  n.agent = std::move(agent);
  n.a = std::move(body);
  return make(std::move(n));
}

Formula Formula::believes(TimeExpr t, Term agent, Formula body) {
  Node n;
  n.kind = FormulaKind::Believes;
  n.time = t;
  n.agent = std::move(agent);
  n.a = std::move(body);
  return make(std::move(n));
}

Formula Formula::time_compare(CmpOp op, TimeExpr lhs, TimeExpr rhs) {
  Node n;
  n.kind = FormulaKind::TimeCompare;
  n.cmp = op;
  n.time = lhs;
  n.cmp_rhs = rhs;
  return make(std::move(n));
}

Formula Formula::someone_knows(TimeExpr t, std::vector<Term> group, Formula body) {
  Node n;
  n.kind = FormulaKind::SomeoneKnows;
  n.time = t;
  n.args = std::move(group);
  n.a = std::move(body);
  return make(std::move(n));
}

Formula Formula::everyone_knows(TimeExpr t, std::vector<Term> group, Formula body) {
  Node n;
  n.kind = FormulaKind::EveryoneKnows;
  n.time = t;
  n.args = std::move(group);
  n.a = std::move(body);
  return make(std::move(n));
}

Formula Formula::learn(TimeExpr t, Term agent, Formula body) {
  Node n;
  n.kind = FormulaKind::Learn;
  n.time = t;
  n.agent = std::move(agent);
  n.a = std::move(body);
  return make(std::move(n));
}

Formula Formula::accept(TimeExpr t, Term agent, Formula body) {
  Node n;
  n.kind = FormulaKind::Accept;
  n.time = t;
  n.agent = std::move(agent);
  n.a = std::move(body);
  return make(std::move(n));
}

Formula Formula::forget(TimeExpr t, Term agent, Formula body) {
  Node n;
  n.kind = FormulaKind::Forget;
  n.time = t;
  n.agent = std::move(agent);
  n.a = std::move(body);
  return make(std::move(n));
}

Formula Formula::reject(TimeExpr t, Term agent, Formula body) {
  Node n;
  n.kind = FormulaKind::Reject;
  n.time = t;
  n.agent = std::move(agent);
  n.a = std::move(body);
  return make(std::move(n));
}

// ---------------------------------------------------------------------------
// Accessors

const Formula::Node& Formula::node() const {
  if (!node_) throw std::logic_error("empty formula handle");
  return *node_;
}

FormulaKind Formula::kind() const { return node().kind; }
AtomKind Formula::atom_kind() const { return node().atom_kind; }
const std::string& Formula::name() const { return node().name; }
const TimeExpr& Formula::time() const { return node().time; }
const std::vector<Term>& Formula::args() const { return node().args; }
const Event& Formula::event() const { return *node().event; }
const Term& Formula::agent() const { return node().agent; }
const std::vector<Term>& Formula::group() const { return node().args; }
Formula Formula::child() const { return node().a; }
Formula Formula::lhs() const { return node().a; }
Formula Formula::rhs() const { return node().b; }
Formula Formula::body() const { return node().a; }
const std::string& Formula::var() const { return node().name; }
const std::string& Formula::domain() const { return node().domain; }
const std::optional<TimeExpr>& Formula::domain_time() const { return node().domain_time; }
CmpOp Formula::cmp_op() const { return node().cmp; }
const TimeExpr& Formula::cmp_rhs() const { return node().cmp_rhs; }

bool Formula::is_atomic() const {
  switch (kind()) {
    case FormulaKind::False:
    case FormulaKind::Atom:
    case FormulaKind::Occurrence:
    case FormulaKind::TimeCompare:
      return true;
    default:
      return false;
  }
}

bool Formula::contains_modality() const {
  bool found = false;
  for_each([&](const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::Knows:
      case FormulaKind::Believes:
      case FormulaKind::SomeoneKnows:
      case FormulaKind::EveryoneKnows:
      case FormulaKind::Learn:
      case FormulaKind::Accept:
      case FormulaKind::Forget:
      case FormulaKind::Reject:
        found = true;
        break;
      default:
        break;
    }
  });
  return found;
}

bool Formula::contains_quantifier() const {
  bool found = false;
  for_each([&](const Formula& f) {
    if (f.kind() == FormulaKind::ForallTime || f.kind() == FormulaKind::ForallDomain) found = true;
  });
  return found;
}

bool Formula::contains_sugar() const {
  bool found = false;
  for_each([&](const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::SomeoneKnows:
      case FormulaKind::EveryoneKnows:
      case FormulaKind::Learn:
      case FormulaKind::Accept:
      case FormulaKind::Forget:
      case FormulaKind::Reject:
        found = true;
        break;
      default:
        break;
    }
  });
  return found;
}

bool Formula::is_ground() const {
  bool ground = true;
  for_each([&](const Formula& f) {
    const Node& n = f.node();
    if (n.kind == FormulaKind::ForallTime || n.kind == FormulaKind::ForallDomain) ground = false;
    if (n.time.is_variable() || n.cmp_rhs.is_variable()) ground = false;
    if (n.domain_time && n.domain_time->is_variable()) ground = false;
    if (n.agent.has_variable()) ground = false;
    for (const Term& t : n.args)
      if (t.has_variable()) ground = false;
    if (n.event)
      for (const Term& t : n.event->args)
        if (t.has_variable()) ground = false;
  });
  return ground;
}

std::optional<std::pair<Formula, Formula>> Formula::as_implication() const {
  // a => b is stored as !(a && !b)
  if (kind() != FormulaKind::Not) return std::nullopt;
  Formula conj = child();
  if (conj.kind() != FormulaKind::And) return std::nullopt;
  Formula neg = conj.rhs();
  if (neg.kind() != FormulaKind::Not) return std::nullopt;
  return std::make_pair(conj.lhs(), neg.child());
}

void Formula::for_each(const std::function<void(const Formula&)>& fn) const {
  fn(*this);
  const Node& n = node();
  if (n.a.valid()) n.a.for_each(fn);
  if (n.b.valid()) n.b.for_each(fn);
}

Formula Formula::transform_atoms(const std::function<Formula(const Formula&)>& fn) const {
  if (is_atomic()) return fn(*this);
  const Node& n = node();
  Node out = n;
  if (n.a.valid()) out.a = n.a.transform_atoms(fn);
  if (n.b.valid()) out.b = n.b.transform_atoms(fn);
  if (out.a.equals(n.a) && (!n.b.valid() || out.b.equals(n.b))) return *this;
  return make(std::move(out));
}

// ---------------------------------------------------------------------------
// Rewriting

Formula Formula::substitute_time(const std::string& var, Timestamp v) const {
  const Node& n = node();
  // A nested binder of the same name shadows the substitution.
  if ((n.kind == FormulaKind::ForallTime || n.kind == FormulaKind::ForallDomain) && n.name == var)
    return *this;

  Node out = n;
  out.time = n.time.substituted(var, v);
  out.cmp_rhs = n.cmp_rhs.substituted(var, v);
  if (n.domain_time) out.domain_time = n.domain_time->substituted(var, v);
  Term as_const = Term::constant(tekl::to_string(v));
  for (Term& t : out.args) t = t.substitute(var, as_const);
  out.agent = n.agent.substitute(var, as_const);
  if (n.event) {
    Event e = *n.event;
    for (Term& t : e.args) t = t.substitute(var, as_const);
    if (e.belief) e.belief = std::make_shared<const Formula>(e.belief->substitute_time(var, v));
    out.event = std::move(e);
  }
  if (n.a.valid()) out.a = n.a.substitute_time(var, v);
  if (n.b.valid()) out.b = n.b.substitute_time(var, v);
  return make(std::move(out));
}

Formula Formula::substitute_term(const std::string& var, const Term& value) const {
  const Node& n = node();
  if (n.kind == FormulaKind::ForallDomain && n.name == var) return *this;
  if (n.kind == FormulaKind::ForallTime && n.name == var) return *this;

  Node out = n;
  for (Term& t : out.args) t = t.substitute(var, value);
  out.agent = n.agent.substitute(var, value);
  if (n.event) {
    Event e = *n.event;
    for (Term& t : e.args) t = t.substitute(var, value);
    if (e.belief) e.belief = std::make_shared<const Formula>(e.belief->substitute_term(var, value));
    out.event = std::move(e);
  }
  if (n.a.valid()) out.a = n.a.substitute_term(var, value);
  if (n.b.valid()) out.b = n.b.substitute_term(var, value);
  return make(std::move(out));
}

Formula Formula::retime(const std::function<Timestamp(Timestamp)>& map) const {
  const Node& n = node();
  Node out = n;
  auto remap = [&](const TimeExpr& e) {
    return e.is_literal() ? TimeExpr::literal(map(e.value())) : e;
  };
  out.time = remap(n.time);
  out.cmp_rhs = remap(n.cmp_rhs);
  if (n.domain_time) out.domain_time = remap(*n.domain_time);
  if (n.event && n.event->belief) {
    Event e = *n.event;
    e.belief = std::make_shared<const Formula>(e.belief->retime(map));
    out.event = std::move(e);
  }
  if (n.a.valid()) out.a = n.a.retime(map);
  if (n.b.valid()) out.b = n.b.retime(map);
  return make(std::move(out));
}

Formula Formula::with_atom_kind(AtomKind k) const {
  Node out = node();
  out.atom_kind = k;
  return make(std::move(out));
}

// ---------------------------------------------------------------------------
// Identity

bool Formula::equals(const Formula& o) const {
  if (node_ == o.node_) return true;
  if (!node_ || !o.node_) return false;
  if (node_->hash != o.node_->hash) return false;
  return compare(o) == 0;
}

int Formula::compare(const Formula& o) const {
  const Node& x = node();
  const Node& y = o.node();
  if (x.kind != y.kind) return x.kind < y.kind ? -1 : 1;
  if (x.atom_kind != y.atom_kind) return x.atom_kind < y.atom_kind ? -1 : 1;
  if (int c = x.name.compare(y.name); c != 0) return c < 0 ? -1 : 1;
  if (int c = x.domain.compare(y.domain); c != 0) return c < 0 ? -1 : 1;
  if (int c = x.time.compare(y.time); c != 0) return c;
  if (x.domain_time.has_value() != y.domain_time.has_value())
    return x.domain_time ? 1 : -1;
  if (x.domain_time)
    if (int c = x.domain_time->compare(*y.domain_time); c != 0) return c;
  if (x.args.size() != y.args.size()) return x.args.size() < y.args.size() ? -1 : 1;
  for (std::size_t i = 0; i < x.args.size(); ++i)
    if (int c = x.args[i].compare(y.args[i]); c != 0) return c;
  if (int c = x.agent.compare(y.agent); c != 0) return c;
  if (x.event.has_value() != y.event.has_value()) return x.event ? 1 : -1;
  if (x.event)
    if (int c = x.event->compare(*y.event); c != 0) return c;
  if (x.cmp != y.cmp) return x.cmp < y.cmp ? -1 : 1;
  if (int c = x.cmp_rhs.compare(y.cmp_rhs); c != 0) return c;
  bool xa = x.a.valid(), ya = y.a.valid();
  if (xa != ya) return xa ? 1 : -1;
  if (xa)
    if (int c = x.a.compare(y.a); c != 0) return c;
  bool xb = x.b.valid(), yb = y.b.valid();
  if (xb != yb) return xb ? 1 : -1;
  if (xb)
    if (int c = x.b.compare(y.b); c != 0) return c;
  return 0;
}

std::size_t Formula::hash() const { return node().hash; }
std::size_t Formula::size() const { return node().size; }

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string print(const Formula& f, int min_level);

std::string print_group(const std::vector<Term>& group) {
  std::string s = "{";
  for (std::size_t i = 0; i < group.size(); ++i) {
    if (i) s += ",";
    s += group[i].to_string();
  }
  return s + "}";
}

std::string print_args(const std::vector<Term>& args) {
  std::string s = "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ",";
    s += args[i].to_string();
  }
  return s + ")";
}

std::string print_raw(const Formula& f) {
  const Formula::Node& n = f.node();
  switch (n.kind) {
    case FormulaKind::False:
      return "false";
    case FormulaKind::Atom:
      return n.name + "[" + n.time.to_string() + "]" + print_args(n.args);
    case FormulaKind::Occurrence:
      return "occ[" + n.time.to_string() + "](" + n.event->to_string() + ")";
    case FormulaKind::TimeCompare:
      return n.time.to_string() + " " + to_string(n.cmp) + " " + n.cmp_rhs.to_string();
    case FormulaKind::Not:
      return "!" + print(n.a, 2);
    case FormulaKind::And:
      return print(n.a, 1) + " && " + print(n.b, 2);
    case FormulaKind::ForallTime:
      return "forall " + n.name + " . " + print(n.a, 0);
    case FormulaKind::ForallDomain: {
      std::string head = "forall " + n.name + " : " + n.domain;
      if (n.domain_time) head += "[" + n.domain_time->to_string() + "]";
      return head + " . " + print(n.a, 0);
    }
    case FormulaKind::Knows:
      return "K[" + n.time.to_string() + "," + n.agent.to_string() + "] " + print(n.a, 0);
    case FormulaKind::Believes:
      return "B[" + n.time.to_string() + "," + n.agent.to_string() + "] " + print(n.a, 0);
    case FormulaKind::SomeoneKnows:
      return "S[" + n.time.to_string() + "," + print_group(n.args) + "] " + print(n.a, 0);
    case FormulaKind::EveryoneKnows:
      return "E[" + n.time.to_string() + "," + print_group(n.args) + "] " + print(n.a, 0);
    case FormulaKind::Learn:
      return "L[" + n.time.to_string() + "," + n.agent.to_string() + "] " + print(n.a, 0);
    case FormulaKind::Accept:
      return "AC[" + n.time.to_string() + "," + n.agent.to_string() + "] " + print(n.a, 0);
    case FormulaKind::Forget:
      return "F[" + n.time.to_string() + "," + n.agent.to_string() + "] " + print(n.a, 0);
    case FormulaKind::Reject:
      return "RJ[" + n.time.to_string() + "," + n.agent.to_string() + "] " + print(n.a, 0);
  }
  return "?";
}

std::string print(const Formula& f, int min_level) {
  std::string s = print_raw(f);
  if (level(f.kind()) < min_level) return "(" + s + ")";
  return s;
}

}  // namespace

std::string Formula::to_string() const { return print(*this, 0); }

}  // namespace tekl
