#ifndef TEKL_SEMANTICS_HPP
#define TEKL_SEMANTICS_HPP

#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "tekl/beliefs.hpp"
#include "tekl/snm.hpp"
#include "tekl/time.hpp"

namespace tekl {

struct SemanticsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// What an event application is allowed to look at beyond the current model:
// the acting agent's knowledge-base history (belief propagation checks
// candidates against it) and the framework parameters.
struct ApplyContext {
  std::function<std::vector<Formula>(const std::string& agent)> prior_entries;
  FrameworkParams params;
  std::set<std::string> functional_predicates;
  std::vector<PropagationReport>* reports = nullptr;
  // Trace steps start from empty knowledge bases; independence probes instead
  // accumulate effects across the two applications they compose.
  bool accumulate_ekbs = false;

  std::vector<Formula> history_for(const std::string& agent) const {
    return prior_entries ? prior_entries(agent) : std::vector<Formula>{};
  }
};

// Transition relation of one OSN: how a set of events at a timestamp turns
// one social network model into the next. Relations, domains and policies
// carry over; each step's knowledge bases start empty and are filled by the
// events. Applying an empty event set is the identity on those parts.
class OsnSemantics {
 public:
  virtual ~OsnSemantics() = default;

  virtual std::string name() const = 0;
  virtual std::vector<std::string> vocabulary() const = 0;

  virtual SocialNetworkModel apply(const SocialNetworkModel& snm,
                                   const std::vector<Event>& events, Timestamp t,
                                   const ApplyContext& ctx) const = 0;

  bool knows_event(const std::string& event_name) const {
    for (const std::string& v : vocabulary())
      if (v == event_name) return true;
    return false;
  }
};

// Built-in semantics, selected by name in the trace header:
//   "snapchat"      friendRequest, acceptFriendRequest, share, enter
//   "facebook-lite" friendRequest, acceptFriendRequest, post, disallowLoc, enter
// Throws SemanticsError for unknown names.
std::unique_ptr<OsnSemantics> make_semantics(const std::string& name);

}  // namespace tekl

#endif
