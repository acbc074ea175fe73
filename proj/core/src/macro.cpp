#include "tekl/macro.hpp"

namespace tekl {

namespace {

Formula rebuild(const Formula& f, Formula a, Formula b) {
  const Formula::Node& n = f.node();
  bool same_a = !n.a.valid() || a.equals(n.a);
  bool same_b = !n.b.valid() || b.equals(n.b);
  if (same_a && same_b) return f;
  switch (n.kind) {
    case FormulaKind::Not:
      return Formula::negation(a);
    case FormulaKind::And:
      return Formula::conjunction(a, b);
    case FormulaKind::ForallTime:
      return Formula::forall_time(n.name, a);
    case FormulaKind::ForallDomain:
      return Formula::forall_domain(n.name, n.domain, n.domain_time, a);
    case FormulaKind::Knows:
      return Formula::knows(n.time, n.agent, a);
    case FormulaKind::Believes:
      return Formula::believes(n.time, n.agent, a);
    default:
      throw MacroError("unexpected node while rebuilding expansion");
  }
}

}  // namespace

Formula expand_macros(const Formula& f, const TimestampSet* ts) {
  const Formula::Node& n = f.node();
  switch (n.kind) {
    case FormulaKind::False:
    case FormulaKind::Atom:
    case FormulaKind::Occurrence:
    case FormulaKind::TimeCompare:
      return f;

    case FormulaKind::Not:
    case FormulaKind::And:
    case FormulaKind::ForallTime:
    case FormulaKind::ForallDomain:
    case FormulaKind::Knows:
    case FormulaKind::Believes: {
      Formula a = n.a.valid() ? expand_macros(n.a, ts) : n.a;
      Formula b = n.b.valid() ? expand_macros(n.b, ts) : n.b;
      return rebuild(f, std::move(a), std::move(b));
    }

    case FormulaKind::SomeoneKnows:
    case FormulaKind::EveryoneKnows: {
      if (n.args.empty()) throw MacroError("group modality over an empty group");
      Formula body = expand_macros(n.a, ts);
      std::vector<Formula> parts;
      parts.reserve(n.args.size());
      for (const Term& member : n.args)
        parts.push_back(Formula::knows(n.time, member, body));
      if (n.kind == FormulaKind::EveryoneKnows || parts.size() == 1)
        return Formula::conjoin(parts);
      // Someone-knows is a disjunction, written with the core connectives.
      std::vector<Formula> negated;
      negated.reserve(parts.size());
      for (Formula& p : parts) negated.push_back(Formula::negation(std::move(p)));
      return Formula::negation(Formula::conjoin(negated));
    }

    case FormulaKind::Learn:
    case FormulaKind::Accept:
    case FormulaKind::Forget:
    case FormulaKind::Reject: {
      Formula body = expand_macros(n.a, ts);
      // Without a bound trace, or with the time still quantified, the
      // operator stays in place and expands later.
      if (ts == nullptr || n.time.is_variable())
        return body.equals(n.a)
                   ? f
                   : (n.kind == FormulaKind::Learn    ? Formula::learn(n.time, n.agent, body)
                      : n.kind == FormulaKind::Accept ? Formula::accept(n.time, n.agent, body)
                      : n.kind == FormulaKind::Forget ? Formula::forget(n.time, n.agent, body)
                                                      : Formula::reject(n.time, n.agent, body));
      Timestamp t = n.time.value();
      TimeExpr prev = TimeExpr::literal(ts->pred(t));
      TimeExpr now = TimeExpr::literal(t);
      bool knowledge = n.kind == FormulaKind::Learn || n.kind == FormulaKind::Forget;
      auto modal = [&](TimeExpr at, Formula inner) {
        return knowledge ? Formula::knows(at, n.agent, std::move(inner))
                         : Formula::believes(at, n.agent, std::move(inner));
      };
      if (n.kind == FormulaKind::Learn || n.kind == FormulaKind::Accept)
        return Formula::conjunction(Formula::negation(modal(prev, body)), modal(now, body));
      return Formula::conjunction(modal(prev, body), Formula::negation(modal(now, body)));
    }
  }
  throw MacroError("unknown macro");
}

}  // namespace tekl
