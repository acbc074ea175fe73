#include "tekl/ekb.hpp"

#include <algorithm>
#include <cmath>

#include "tekl/macro.hpp"
#include "tekl/snm.hpp"

namespace tekl {

bool is_self_aware(const Formula& f, const std::string& agent, Timestamp t) {
  if (f.kind() != FormulaKind::Knows) return false;
  if (!f.time().is_literal() || f.time().value() != t) return false;
  return f.agent() == Term::constant(agent);
}

void EkbStore::add_entry(Formula f, const std::string& agent, Timestamp t) {
  if (!f.is_ground()) throw EkbError("knowledge base entry is not ground: " + f.to_string());
  if (f.contains_quantifier())
    throw EkbError("knowledge base entry still has quantifiers: " + f.to_string());
  if (!is_self_aware(f, agent, t))
    throw EkbError("entry of agent " + agent + " at " + to_string(t) +
                   " is not K[" + to_string(t) + "," + agent + "]-rooted: " + f.to_string());
  if (std::find(entries_.begin(), entries_.end(), f) == entries_.end())
    entries_.push_back(std::move(f));
}

void EkbStore::add_occurrence(Formula occ) {
  if (occ.kind() != FormulaKind::Occurrence || !occ.event().is_enter())
    throw EkbError("belief log accepts only occ(enter(..)) records: " + occ.to_string());
  if (std::find(belief_log_.begin(), belief_log_.end(), occ) == belief_log_.end())
    belief_log_.push_back(std::move(occ));
}

std::vector<Formula> EkbStore::all() const {
  std::vector<Formula> out = entries_;
  out.insert(out.end(), belief_log_.begin(), belief_log_.end());
  return out;
}

EkbStore EkbStore::transformed(const std::function<Formula(const Formula&)>& fn) const {
  EkbStore out;
  for (const Formula& f : entries_) out.entries_.push_back(fn(f));
  for (const Formula& f : belief_log_) out.belief_log_.push_back(fn(f));
  return out;
}

bool EkbStore::operator==(const EkbStore& o) const {
  auto sorted = [](std::vector<Formula> v) {
    std::sort(v.begin(), v.end(), Formula::Less{});
    return v;
  };
  return sorted(entries_) == sorted(o.entries_) && sorted(belief_log_) == sorted(o.belief_log_);
}

namespace {

void flatten_conjuncts(const Formula& f, std::vector<Formula>& out) {
  if (f.kind() == FormulaKind::And) {
    flatten_conjuncts(f.lhs(), out);
    flatten_conjuncts(f.rhs(), out);
  } else {
    out.push_back(f);
  }
}

// K/B over an instantiation conjunction becomes a conjunction of modal
// formulas; the deduction rules have no way to take a conjunction apart under
// a modality, so entries are stored distributed.
Formula distribute_modal(FormulaKind kind, const TimeExpr& t, const Term& agent,
                         const Formula& body) {
  std::vector<Formula> parts;
  flatten_conjuncts(body, parts);
  std::vector<Formula> wrapped;
  wrapped.reserve(parts.size());
  for (const Formula& p : parts)
    wrapped.push_back(kind == FormulaKind::Knows ? Formula::knows(t, agent, p)
                                                 : Formula::believes(t, agent, p));
  return Formula::conjoin(wrapped);
}

Formula fold_ground_compare(const Formula& f) {
  if (f.kind() != FormulaKind::TimeCompare) return f;
  if (!f.time().is_literal() || !f.cmp_rhs().is_literal())
    throw EkbError("comparison with an unbound variable: " + f.to_string());
  std::uint64_t a = f.time().value().ticks;
  std::uint64_t b = f.cmp_rhs().value().ticks;
  bool v = false;
  switch (f.cmp_op()) {
    case CmpOp::Lt: v = a < b; break;
    case CmpOp::Le: v = a <= b; break;
    case CmpOp::Gt: v = a > b; break;
    case CmpOp::Ge: v = a >= b; break;
    case CmpOp::Eq: v = a == b; break;
    case CmpOp::Ne: v = a != b; break;
  }
  return v ? Formula::true_formula() : Formula::false_formula();
}

Formula unfold_rec(const Formula& f, const Trace& trace) {
  const Formula::Node& n = f.node();
  switch (n.kind) {
    case FormulaKind::False:
    case FormulaKind::Atom:
    case FormulaKind::Occurrence:
      return f;
    case FormulaKind::TimeCompare:
      return fold_ground_compare(f);

    case FormulaKind::Not:
      return Formula::negation(unfold_rec(n.a, trace));
    case FormulaKind::And:
      return Formula::conjunction(unfold_rec(n.a, trace), unfold_rec(n.b, trace));

    case FormulaKind::Knows:
    case FormulaKind::Believes:
      return distribute_modal(n.kind, n.time, n.agent, unfold_rec(n.a, trace));

    case FormulaKind::ForallTime: {
      std::vector<Formula> parts;
      parts.reserve(trace.timestamps().size());
      for (Timestamp v : trace.timestamps().values())
        parts.push_back(unfold_rec(n.a.substitute_time(n.name, v), trace));
      return Formula::conjoin(parts);
    }

    case FormulaKind::ForallDomain: {
      if (!n.domain_time)
        throw EkbError("domain quantifier without a timestamp cannot be unfolded: " +
                       f.to_string());
      if (n.domain_time->is_variable())
        throw EkbError("domain time still quantified in " + f.to_string());
      Timestamp at = n.domain_time->value();
      const Step* step = trace.step_at(at);
      if (step == nullptr)
        throw EkbError("domain " + n.domain + " looked up at " + to_string(at) +
                       ", which is not a trace timestamp");
      auto it = step->snm.domains.find(n.domain);
      if (it == step->snm.domains.end())
        throw EkbError("unknown domain " + n.domain + " at " + to_string(at));
      std::vector<Formula> parts;
      parts.reserve(it->second.size());
      for (const std::string& e : it->second)
        parts.push_back(unfold_rec(n.a.substitute_term(n.name, Term::constant(e)), trace));
      return Formula::conjoin(parts);
    }

    default:
      throw EkbError("macro operator reached quantifier unfolding: " + f.to_string());
  }
}

std::size_t quantifier_depth(const Formula& f) {
  const Formula::Node& n = f.node();
  std::size_t a = n.a.valid() ? quantifier_depth(n.a) : 0;
  std::size_t b = n.b.valid() ? quantifier_depth(n.b) : 0;
  std::size_t d = std::max(a, b);
  if (n.kind == FormulaKind::ForallTime || n.kind == FormulaKind::ForallDomain) ++d;
  return d;
}

std::size_t domain_bound(const Trace& trace) {
  std::size_t d = trace.timestamps().size();
  for (const Step& s : trace.steps)
    for (const auto& [name, elems] : s.snm.domains) d = std::max(d, elems.size());
  return std::max<std::size_t>(d, 1);
}

}  // namespace

Formula unfold_quantifiers(const Formula& f, const Trace& trace) {
  Formula expanded = expand_macros(f, &trace.timestamps());
  Formula out = unfold_rec(expanded, trace);

  // Expansion size bound: |f| * d^q.
  std::size_t q = quantifier_depth(expanded);
  if (q > 0) {
    long double bound = static_cast<long double>(expanded.size()) *
                        std::pow(static_cast<long double>(domain_bound(trace)),
                                 static_cast<long double>(q));
    if (static_cast<long double>(out.size()) > bound)
      throw EkbError("quantifier expansion exceeded its size bound");
  }
  return out;
}

std::vector<Formula> split_entries(const Formula& f) {
  std::vector<Formula> parts;
  flatten_conjuncts(f, parts);
  return parts;
}

std::vector<Formula> ekb_union(const Trace& trace, const std::string& agent, Timestamp lo,
                               Timestamp hi) {
  if (lo > hi) throw EkbError("empty interval: lo > hi");
  if (!trace.all_agents().count(agent)) throw EkbError("unknown agent " + agent);
  std::vector<Formula> out;
  for (const Step& s : trace.steps) {
    if (s.time < lo || s.time > hi) continue;
    if (const EkbStore* kb = s.snm.ekb_of(agent)) {
      for (const Formula& f : kb->entries()) out.push_back(f);
      for (const Formula& f : kb->belief_log()) out.push_back(f);
    }
  }
  return out;
}

}  // namespace tekl
