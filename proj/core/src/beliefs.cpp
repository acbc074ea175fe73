#include "tekl/beliefs.hpp"

#include <algorithm>

namespace tekl {

namespace {

struct Candidate {
  Formula formula;
  Timestamp origin;
  std::size_t arrival;  // encounter order, the tie breaker
};

void collect_candidates(const std::vector<Formula>& pool, const std::string& agent, Timestamp tn,
                        Window omega, std::vector<Candidate>& out) {
  for (const Formula& f : pool) {
    if (f.kind() != FormulaKind::Occurrence || !f.event().is_enter()) continue;
    if (!f.time().is_literal()) continue;
    Timestamp told = f.time().value();
    if (told > tn) continue;
    if (!omega.covers(tn.ticks - told.ticks)) continue;
    const Event& e = f.event();
    if (e.enter_agent() != agent) continue;
    const Formula& belief = *e.belief;  // B[told, agent] psi
    TimeExpr now = TimeExpr::literal(tn);
    Formula candidate =
        Formula::knows(now, Term::constant(agent), Formula::believes(now, belief.agent(), belief.body()));
    bool seen = false;
    for (const Candidate& c : out)
      if (c.origin == told && c.formula.equals(candidate)) seen = true;
    if (!seen) out.push_back({std::move(candidate), told, out.size()});
  }
}

}  // namespace

PropagationReport propagate_belief(EkbStore& current, const std::vector<Formula>& history,
                                   const Formula& new_belief, Timestamp tn,
                                   const std::string& agent, const FrameworkParams& params,
                                   const std::set<std::string>& functional_preds) {
  if (new_belief.kind() != FormulaKind::Believes)
    throw EkbError("belief propagation needs a believes-rooted formula, got " +
                   new_belief.to_string());
  if (!new_belief.time().is_literal() || new_belief.time().value() != tn)
    throw EkbError("entered belief is stamped " + new_belief.time().to_string() +
                   " but enters at " + to_string(tn));
  if (!(new_belief.agent() == Term::constant(agent)))
    throw EkbError("entered belief names a different agent");

  std::vector<Candidate> candidates;
  collect_candidates(history, agent, tn, params.omega, candidates);
  collect_candidates(current.all(), agent, tn, params.omega, candidates);

  TimeExpr now = TimeExpr::literal(tn);
  Formula incoming =
      Formula::knows(now, Term::constant(agent),
                     Formula::believes(now, new_belief.agent(), new_belief.body()));
  bool already = false;
  for (const Candidate& c : candidates)
    if (c.origin == tn && c.formula.equals(incoming)) already = true;
  if (!already) candidates.push_back({incoming, tn, candidates.size()});

  if (params.beta == BeliefPolicy::Susceptible) {
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.origin > b.origin; });
  } else {
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.origin < b.origin; });
  }

  PropagationReport report;
  report.at = tn;
  report.agent = agent;

  EngineOptions eng;
  eng.max_depth = params.proof_depth;

  for (const Candidate& c : candidates) {
    std::vector<Formula> gamma = history;
    for (const Formula& f : current.all()) gamma.push_back(f);

    PropagationItem item;
    item.candidate = c.formula;
    item.origin = c.origin;
    if (consistent(gamma, c.formula, tn, agent, params.omega, functional_preds, eng)) {
      current.add_entry(c.formula, agent, tn);
      item.admitted = true;
      item.note = "consistent";
    } else {
      item.admitted = false;
      item.note = "rejected: would make B[" + to_string(tn) + "," + agent + "] false derivable";
    }
    report.items.push_back(std::move(item));
  }

  current.add_occurrence(Formula::occurrence(
      now, Event{"enter", {Term::constant(agent)}, std::make_shared<const Formula>(new_belief)}));
  return report;
}

}  // namespace tekl
