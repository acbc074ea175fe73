#ifndef TEKL_VALIDATE_HPP
#define TEKL_VALIDATE_HPP

#include <string>
#include <vector>

#include "tekl/semantics.hpp"
#include "tekl/snm.hpp"

namespace tekl {

enum class ConditionStatus { Passed, Failed, Unchecked };

inline std::string to_string(ConditionStatus s) {
  switch (s) {
    case ConditionStatus::Passed: return "passed";
    case ConditionStatus::Failed: return "failed";
    case ConditionStatus::Unchecked: return "unchecked";
  }
  return "?";
}

// Well-formedness verdicts, one per condition: (1) strictly increasing
// timestamps, (2) every transition is accounted for by the event semantics,
// (3) events sharing a step are pairwise independent. A trace is well-formed
// when none of them failed; unchecked conditions carry a warning note.
struct WellFormedReport {
  ConditionStatus ordered = ConditionStatus::Passed;
  ConditionStatus accounted = ConditionStatus::Passed;
  ConditionStatus independent = ConditionStatus::Passed;
  std::vector<std::string> notes;

  bool well_formed() const {
    return ordered != ConditionStatus::Failed && accounted != ConditionStatus::Failed &&
           independent != ConditionStatus::Failed;
  }
};

WellFormedReport validate_trace(const Trace& trace, const OsnSemantics* sem,
                                const FrameworkParams& params);

// Commutation probe at a concrete state: runs {e1 at t, then e2 at t2} and
// {e2 at t, then e1 at t2} from `base` and compares the resulting models
// structurally, with the two probe instants merged so that only genuine
// effect differences count. This witnesses independence at this state; it is
// not a proof for every reachable state. Requires t < t2.
bool check_independence(const SocialNetworkModel& base, const Event& e1, const Event& e2,
                        Timestamp t, Timestamp t2, const OsnSemantics& sem,
                        const FrameworkParams& params);

}  // namespace tekl

#endif
