#include "tekl/checker.hpp"

#include "tekl/ekb.hpp"
#include "tekl/macro.hpp"

namespace tekl {

nlohmann::json Verdict::to_json() const {
  nlohmann::json j;
  j["holds"] = holds;
  if (witness) {
    nlohmann::json w = nlohmann::json::array();
    for (const auto& [var, value] : witness->bindings) w.push_back({{var, value}});
    j["witness"] = w;
  }
  if (proof) j["proof"] = proof_to_json(*proof);
  return j;
}

namespace {

// Plain boolean evaluation of a closed, macro-free formula.
class Eval {
 public:
  Eval(const Trace& trace, const FrameworkParams& params, std::optional<Timestamp> min_time)
      : trace_(trace), params_(params), min_time_(min_time) {}

  bool run(const Formula& f) {
    proof_.reset();
    return eval(f);
  }

  std::optional<Proof> take_proof() { return std::move(proof_); }

 private:
  bool eval(const Formula& f) {
    switch (f.kind()) {
      case FormulaKind::False:
        return false;

      case FormulaKind::TimeCompare:
        return eval_compare(f);

      case FormulaKind::Atom:
        return eval_atom(f);

      case FormulaKind::Occurrence:
        return eval_occurrence(f);

      case FormulaKind::Not:
        return !eval(f.child());

      case FormulaKind::And:
        return eval(f.lhs()) && eval(f.rhs());

      case FormulaKind::ForallTime: {
        for (Timestamp v : trace_.timestamps().values()) {
          if (min_time_ && v < *min_time_) continue;
          if (!eval(f.body().substitute_time(f.var(), v))) return false;
        }
        return true;
      }

      case FormulaKind::ForallDomain: {
        for (const std::string& e : domain_elements(f))
          if (!eval(f.body().substitute_term(f.var(), Term::constant(e)))) return false;
        return true;
      }

      case FormulaKind::Knows:
      case FormulaKind::Believes:
        return eval_modal(f);

      case FormulaKind::Learn:
      case FormulaKind::Accept:
      case FormulaKind::Forget:
      case FormulaKind::Reject:
        // Time is literal by now; one more expansion pass resolves it.
        return eval(expand_macros(f, &trace_.timestamps()));

      default:
        throw CheckError("cannot evaluate " + f.to_string());
    }
  }

  std::vector<std::string> domain_elements(const Formula& f) const {
    if (!f.domain_time()) {
      auto u = trace_.domain_union(f.domain());
      return {u.begin(), u.end()};
    }
    if (f.domain_time()->is_variable())
      throw CheckError("unbound time variable in domain " + f.domain());
    Timestamp at = f.domain_time()->value();
    const Step* step = trace_.step_at(at);
    if (step == nullptr) throw UnknownTimestampError(at);
    auto it = step->snm.domains.find(f.domain());
    if (it == step->snm.domains.end())
      throw CheckError("unknown domain " + f.domain() + " at t=" + to_string(at));
    return {it->second.begin(), it->second.end()};
  }

  bool eval_compare(const Formula& f) const {
    if (!f.time().is_literal() || !f.cmp_rhs().is_literal())
      throw CheckError("comparison with an unbound variable: " + f.to_string());
    std::uint64_t a = f.time().value().ticks;
    std::uint64_t b = f.cmp_rhs().value().ticks;
    switch (f.cmp_op()) {
      case CmpOp::Lt: return a < b;
      case CmpOp::Le: return a <= b;
      case CmpOp::Gt: return a > b;
      case CmpOp::Ge: return a >= b;
      case CmpOp::Eq: return a == b;
      case CmpOp::Ne: return a != b;
    }
    return false;
  }

  const Step& step_of(const TimeExpr& t, const Formula& f) const {
    if (!t.is_literal()) throw CheckError("unbound time variable in " + f.to_string());
    const Step* step = trace_.step_at(t.value());
    if (step == nullptr) throw UnknownTimestampError(t.value());
    return *step;
  }

  bool eval_atom(const Formula& f) const {
    const Step& step = step_of(f.time(), f);
    if (f.atom_kind() == AtomKind::Connection || f.atom_kind() == AtomKind::Action) {
      if (f.args().size() != 2 || !f.args()[0].is_constant() || !f.args()[1].is_constant())
        throw CheckError("relation atom needs two agent constants: " + f.to_string());
      const std::string& i = f.args()[0].name();
      const std::string& j = f.args()[1].name();
      return f.atom_kind() == AtomKind::Connection ? step.snm.connected(f.name(), i, j)
                                                   : step.snm.permitted(f.name(), i, j);
    }
    // A predicate is true iff the environment knowledge base holds it.
    const EkbStore* kb = step.snm.ekb_of(step.snm.environment);
    if (kb == nullptr) return false;
    for (const Formula& entry : kb->entries())
      if (entry.body().equals(f)) return true;
    return false;
  }

  bool eval_occurrence(const Formula& f) const {
    const Step& step = step_of(f.time(), f);
    for (const Event& e : step.events)
      if (e == f.event()) return true;
    return false;
  }

  bool eval_modal(const Formula& f) {
    if (!f.time().is_literal()) throw CheckError("unbound time variable in " + f.to_string());
    if (!f.agent().is_constant())
      throw CheckError("unbound agent variable in " + f.to_string());
    Timestamp t = f.time().value();
    const std::string& agent = f.agent().name();
    if (!trace_.all_agents().count(agent)) throw CheckError("unknown agent " + agent);

    std::vector<Formula> gamma = history_union(agent, t);
    Formula body = unfold_quantifiers(f.body(), trace_);
    std::vector<Formula> goals = split_entries(body);

    EngineOptions eng;
    eng.max_depth = params_.proof_depth;
    std::optional<Proof> only;
    for (const Formula& g : goals) {
      Formula goal = f.kind() == FormulaKind::Knows
                         ? Formula::knows(f.time(), f.agent(), g)
                         : Formula::believes(f.time(), f.agent(), g);
      DeriveResult r = derive(gamma, goal, params_.omega, eng);
      if (!r.proved) return false;
      if (goals.size() == 1) only = std::move(r.proof);
    }
    proof_ = std::move(only);
    return true;
  }

  std::vector<Formula> history_union(const std::string& agent, Timestamp t) const {
    std::vector<Formula> out;
    for (const Step& s : trace_.steps) {
      if (params_.strict_history ? !(s.time < t) : !(s.time <= t)) continue;
      if (const EkbStore* kb = s.snm.ekb_of(agent))
        for (const Formula& f : kb->all()) out.push_back(f);
    }
    return out;
  }

  const Trace& trace_;
  const FrameworkParams& params_;
  std::optional<Timestamp> min_time_;
  std::optional<Proof> proof_;
};

}  // namespace

Checker::Checker(Trace trace, FrameworkParams params)
    : trace_(std::move(trace)), params_(params) {}

Verdict Checker::satisfies(const Formula& f) const {
  if (trace_.steps.empty()) throw CheckError("satisfaction over an empty trace");
  Formula prepared = classify_atoms(expand_macros(f, &trace_.timestamps()), trace_);

  Eval ev(trace_, params_, std::nullopt);
  Verdict v;

  // Walk the top-level quantifier spine by hand so a failing universal can
  // report the instantiation that broke it.
  std::vector<std::pair<std::string, std::string>> trail;
  std::function<bool(const Formula&)> walk = [&](const Formula& g) -> bool {
    if (g.kind() == FormulaKind::ForallTime) {
      for (Timestamp t : trace_.timestamps().values()) {
        trail.push_back({g.var(), to_string(t)});
        if (!walk(g.body().substitute_time(g.var(), t))) return false;
        trail.pop_back();
      }
      return true;
    }
    if (g.kind() == FormulaKind::ForallDomain) {
      std::vector<std::string> elems;
      if (!g.domain_time()) {
        auto u = trace_.domain_union(g.domain());
        elems.assign(u.begin(), u.end());
      } else {
        if (g.domain_time()->is_variable())
          throw CheckError("unbound time variable in domain " + g.domain());
        const Step* step = trace_.step_at(g.domain_time()->value());
        if (step == nullptr) throw UnknownTimestampError(g.domain_time()->value());
        auto it = step->snm.domains.find(g.domain());
        if (it == step->snm.domains.end())
          throw CheckError("unknown domain " + g.domain() + " at t=" +
                           to_string(g.domain_time()->value()));
        elems.assign(it->second.begin(), it->second.end());
      }
      for (const std::string& e : elems) {
        trail.push_back({g.var(), e});
        if (!walk(g.body().substitute_term(g.var(), Term::constant(e)))) return false;
        trail.pop_back();
      }
      return true;
    }
    return ev.run(g);
  };

  bool top_quantified = prepared.kind() == FormulaKind::ForallTime ||
                        prepared.kind() == FormulaKind::ForallDomain;
  v.holds = walk(prepared);
  if (!v.holds && top_quantified && !trail.empty()) v.witness = Witness{trail};
  if (v.holds) v.proof = ev.take_proof();
  return v;
}

Verdict Checker::knows(Timestamp t, const std::string& agent, const Formula& body) const {
  return satisfies(Formula::knows(TimeExpr::literal(t), Term::constant(agent), body));
}

Verdict Checker::believes(Timestamp t, const std::string& agent, const Formula& body) const {
  return satisfies(Formula::believes(TimeExpr::literal(t), Term::constant(agent), body));
}

Verdict Checker::conforms(const Policy& policy) const {
  std::vector<std::pair<std::string, std::string>> trail;
  std::optional<Timestamp> min_time;
  if (params_.respect_start) min_time = policy.first_start();
  return conforms_rec(policy, trail, min_time);
}

Verdict Checker::conforms_rec(const Policy& policy,
                              std::vector<std::pair<std::string, std::string>>& trail,
                              std::optional<Timestamp> min_time) const {
  switch (policy.kind()) {
    case Policy::Kind::And: {
      Verdict l = conforms_rec(policy.lhs(), trail, min_time);
      if (!l.holds) return l;
      return conforms_rec(policy.rhs(), trail, min_time);
    }

    case Policy::Kind::Forall: {
      if (!policy.domain()) {
        for (Timestamp t : trace_.timestamps().values()) {
          if (min_time && t < *min_time) continue;
          trail.push_back({policy.var(), to_string(t)});
          Verdict v = conforms_rec(policy.body().substitute_time(policy.var(), t), trail, min_time);
          if (!v.holds) return v;
          trail.pop_back();
        }
        return Verdict{true, std::nullopt, std::nullopt};
      }
      std::vector<std::string> elems;
      if (policy.domain_time()) {
        if (policy.domain_time()->is_variable())
          throw CheckError("unbound time variable in policy domain " + *policy.domain());
        const Step* step = trace_.step_at(policy.domain_time()->value());
        if (step == nullptr) throw UnknownTimestampError(policy.domain_time()->value());
        auto it = step->snm.domains.find(*policy.domain());
        if (it == step->snm.domains.end())
          throw CheckError("unknown domain " + *policy.domain());
        elems.assign(it->second.begin(), it->second.end());
      } else {
        auto u = trace_.domain_union(*policy.domain());
        elems.assign(u.begin(), u.end());
      }
      for (const std::string& e : elems) {
        trail.push_back({policy.var(), e});
        Verdict v =
            conforms_rec(policy.body().substitute_term(policy.var(), Term::constant(e)), trail,
                         min_time);
        if (!v.holds) return v;
        trail.pop_back();
      }
      return Verdict{true, std::nullopt, std::nullopt};
    }

    case Policy::Kind::Restriction: {
      std::optional<Timestamp> clamp = min_time;
      if (params_.respect_start && !clamp) clamp = policy.start();

      Formula denied = Formula::negation(policy.denied());
      Formula body = policy.guard() ? Formula::implies(*policy.guard(), denied) : denied;
      Formula prepared = classify_atoms(expand_macros(body, &trace_.timestamps()), trace_);
      Eval ev(trace_, params_, clamp);

      // Time quantifiers inside the restriction respect the clamp, so they
      // are evaluated by Eval rather than pre-instantiated here.
      Verdict v;
      v.holds = ev.run(prepared);
      if (!v.holds && !trail.empty()) v.witness = Witness{trail};
      return v;
    }
  }
  throw CheckError("malformed policy");
}

}  // namespace tekl
