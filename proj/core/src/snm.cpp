#include "tekl/snm.hpp"

#include <algorithm>

namespace tekl {

namespace {
// An agent without a store and an agent with an empty one are the same thing.
std::map<std::string, EkbStore> nonempty_ekbs(const std::map<std::string, EkbStore>& in) {
  std::map<std::string, EkbStore> out;
  for (const auto& [agent, store] : in)
    if (!store.empty()) out.emplace(agent, store);
  return out;
}
}  // namespace

bool SocialNetworkModel::operator==(const SocialNetworkModel& o) const {
  return agents == o.agents && environment == o.environment && connections == o.connections &&
         permissions == o.permissions && domains == o.domains &&
         nonempty_ekbs(ekbs) == nonempty_ekbs(o.ekbs) && policies == o.policies;
}

void Trace::finalize() {
  std::vector<Timestamp> ts;
  ts.reserve(steps.size());
  for (const Step& s : steps) ts.push_back(s.time);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  times_ = TimestampSet(std::move(ts));
}

const Step* Trace::step_at(Timestamp t) const {
  for (const Step& s : steps)
    if (s.time == t) return &s;
  return nullptr;
}

std::set<std::string> Trace::all_agents() const {
  std::set<std::string> out;
  for (const Step& s : steps) {
    out.insert(s.snm.agents.begin(), s.snm.agents.end());
    if (!s.snm.environment.empty()) out.insert(s.snm.environment);
  }
  return out;
}

std::string Trace::environment() const {
  return steps.empty() ? std::string() : steps.front().snm.environment;
}

std::set<std::string> Trace::connection_names() const {
  std::set<std::string> out;
  for (const Step& s : steps)
    for (const auto& [name, pairs] : s.snm.connections) out.insert(name);
  return out;
}

std::set<std::string> Trace::permission_names() const {
  std::set<std::string> out;
  for (const Step& s : steps)
    for (const auto& [name, pairs] : s.snm.permissions) out.insert(name);
  return out;
}

std::set<std::string> Trace::domain_union(const std::string& domain) const {
  std::set<std::string> out;
  for (const Step& s : steps) {
    auto it = s.snm.domains.find(domain);
    if (it != s.snm.domains.end()) out.insert(it->second.begin(), it->second.end());
  }
  return out;
}

Formula classify_atoms(const Formula& f, const Trace& trace) {
  std::set<std::string> conns = trace.connection_names();
  std::set<std::string> perms = trace.permission_names();
  std::function<Formula(const Formula&)> go = [&](const Formula& g) -> Formula {
    return g.transform_atoms([&](const Formula& a) -> Formula {
      if (a.kind() == FormulaKind::Occurrence && a.event().belief) {
        Event e = a.event();
        e.belief = std::make_shared<const Formula>(go(*e.belief));
        return Formula::occurrence(a.time(), std::move(e));
      }
      if (a.kind() != FormulaKind::Atom) return a;
      AtomKind want = AtomKind::Predicate;
      if (conns.count(a.name()))
        want = AtomKind::Connection;
      else if (perms.count(a.name()))
        want = AtomKind::Action;
      return a.atom_kind() == want ? a : a.with_atom_kind(want);
    });
  };
  return go(f);
}

}  // namespace tekl
