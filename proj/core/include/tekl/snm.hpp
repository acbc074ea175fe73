#ifndef TEKL_SNM_HPP
#define TEKL_SNM_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tekl/ekb.hpp"
#include "tekl/formula.hpp"
#include "tekl/policy.hpp"
#include "tekl/time.hpp"

namespace tekl {

using AgentPair = std::pair<std::string, std::string>;
using PairSet = std::set<AgentPair>;

// Snapshot of the social network at one instant: agents, the first-order
// structure (connection and permission relations plus domains), per-agent
// knowledge bases and per-agent policies. The agent set is itself the "Ag"
// domain.
struct SocialNetworkModel {
  std::set<std::string> agents;
  std::string environment;
  std::map<std::string, PairSet> connections;
  std::map<std::string, PairSet> permissions;
  std::map<std::string, std::set<std::string>> domains;
  std::map<std::string, EkbStore> ekbs;
  std::map<std::string, std::vector<Policy>> policies;

  bool operator==(const SocialNetworkModel& o) const;

  const EkbStore* ekb_of(const std::string& agent) const {
    auto it = ekbs.find(agent);
    return it == ekbs.end() ? nullptr : &it->second;
  }
  EkbStore& ekb_mutable(const std::string& agent) { return ekbs[agent]; }

  bool connected(const std::string& rel, const std::string& i, const std::string& j) const {
    auto it = connections.find(rel);
    return it != connections.end() && it->second.count({i, j}) > 0;
  }
  bool permitted(const std::string& act, const std::string& i, const std::string& j) const {
    auto it = permissions.find(act);
    return it != permissions.end() && it->second.count({i, j}) > 0;
  }
};

struct Step {
  SocialNetworkModel snm;
  std::vector<Event> events;
  Timestamp time;
};

// One belief-propagation decision, kept for replay reports.
struct BeliefReplayItem {
  Timestamp at;
  std::string agent;
  Formula candidate;
  Timestamp origin;
  bool admitted = false;
  std::string note;
};

// Finite, strictly ordered sequence of (SNM, events, timestamp) steps.
class Trace {
 public:
  std::vector<Step> steps;
  std::string semantics_name;                     // empty when none declared
  std::set<std::string> functional_predicates;    // one value per key tuple per instant
  std::map<std::string, std::uint64_t> time_labels;
  std::vector<std::string> warnings;
  std::vector<BeliefReplayItem> belief_replay;

  // Recomputes the derived timestamp set; steps must already be in order.
  void finalize();

  const TimestampSet& timestamps() const { return times_; }

  const Step* step_at(Timestamp t) const;
  const Step& front() const { return steps.front(); }
  const Step& back() const { return steps.back(); }

  std::set<std::string> all_agents() const;
  std::string environment() const;
  std::set<std::string> connection_names() const;
  std::set<std::string> permission_names() const;

  // Union of a domain's elements across every step.
  std::set<std::string> domain_union(const std::string& domain) const;

 private:
  TimestampSet times_;
};

// Rewrites atom classifications to match the trace's declared relation names:
// an atom whose name is a connection name becomes a connection atom, a
// permission name becomes an action atom, anything else a predicate.
Formula classify_atoms(const Formula& f, const Trace& trace);

}  // namespace tekl

#endif
