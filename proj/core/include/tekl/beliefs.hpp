#ifndef TEKL_BELIEFS_HPP
#define TEKL_BELIEFS_HPP

#include <set>
#include <string>
#include <vector>

#include "tekl/ekb.hpp"
#include "tekl/engine.hpp"
#include "tekl/formula.hpp"
#include "tekl/time.hpp"

namespace tekl {

struct PropagationItem {
  Formula candidate;  // K[tn,i] B[tn,i] psi
  Timestamp origin;   // when the belief was first told
  bool admitted = false;
  std::string note;
};

struct PropagationReport {
  Timestamp at;
  std::string agent;
  std::vector<PropagationItem> items;
};

// Belief propagation for one enter event. Candidates are every belief told to
// the agent within [tn - omega, tn] (from the occ(enter(..)) records in the
// history and the step under construction), re-timestamped to tn, plus the
// incoming belief. They are tried oldest-first for conservative agents and
// newest-first for susceptible ones, ties broken by trace order; a candidate
// is admitted into `current` iff the accumulated knowledge base stays free of
// B[tn,agent] false. The occ(enter(..)) record of the incoming belief is
// always appended, admitted or not.
//
// `history` is the union of the agent's knowledge bases at strictly earlier
// steps; `current` is the agent's store at tn and is mutated in place.
PropagationReport propagate_belief(EkbStore& current, const std::vector<Formula>& history,
                                   const Formula& new_belief, Timestamp tn,
                                   const std::string& agent, const FrameworkParams& params,
                                   const std::set<std::string>& functional_preds);

}  // namespace tekl

#endif
