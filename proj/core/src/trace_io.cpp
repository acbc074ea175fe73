#include "tekl/trace_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "tekl/beliefs.hpp"
#include "tekl/ekb.hpp"
#include "tekl/parser.hpp"

namespace tekl {

namespace {

using nlohmann::json;

Timestamp read_time(const json& j, const std::map<std::string, std::uint64_t>& labels,
                    const std::string& where) {
  if (j.is_number_unsigned() || j.is_number_integer()) {
    if (j.is_number_integer() && j.get<long long>() < 0)
      throw TraceError(where + ": negative timestamp");
    return Timestamp(j.get<std::uint64_t>());
  }
  if (j.is_string()) {
    auto it = labels.find(j.get<std::string>());
    if (it == labels.end())
      throw TraceError(where + ": unknown time label '" + j.get<std::string>() + "'");
    return Timestamp(it->second);
  }
  throw TraceError(where + ": time must be an integer or a declared label");
}

PairSet read_pairs(const json& j, const std::set<std::string>& agents, const std::string& where) {
  PairSet out;
  for (const json& pair : j) {
    if (!pair.is_array() || pair.size() != 2)
      throw TraceError(where + ": relation entries are [\"a\",\"b\"] pairs");
    std::string a = pair[0].get<std::string>();
    std::string b = pair[1].get<std::string>();
    if (!agents.count(a) || !agents.count(b))
      throw TraceError(where + ": pair (" + a + "," + b + ") references an unknown agent");
    out.insert({a, b});
  }
  return out;
}

struct RawStep {
  Timestamp time;
  std::vector<Event> events;
  SocialNetworkModel snm;
  std::map<std::string, std::vector<Formula>> raw_ekbs;  // parsed, not yet unfolded
  std::vector<Formula> raw_env_facts;
};

}  // namespace

Trace load_trace(const std::string& json_text, const TraceLoadOptions& opts) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& ex) {
    throw TraceError(std::string("trace document is not valid JSON: ") + ex.what());
  }
  if (!doc.is_object() || !doc.contains("steps") || !doc["steps"].is_array())
    throw TraceError("trace document needs a \"steps\" array");

  Trace trace;
  if (doc.contains("semantics") && !doc["semantics"].is_null())
    trace.semantics_name = doc["semantics"].get<std::string>();
  if (doc.contains("functional_predicates"))
    for (const json& p : doc["functional_predicates"])
      trace.functional_predicates.insert(p.get<std::string>());
  if (doc.contains("time_labels"))
    for (auto it = doc["time_labels"].begin(); it != doc["time_labels"].end(); ++it)
      trace.time_labels[it.key()] = it.value().get<std::uint64_t>();

  ParseOptions popts;
  popts.time_labels = &trace.time_labels;

  // Phase 1: structure. Formulas are parsed but quantifiers wait for the
  // full timestamp set.
  std::vector<RawStep> raws;
  std::string environment;
  for (std::size_t idx = 0; idx < doc["steps"].size(); ++idx) {
    const json& js = doc["steps"][idx];
    std::string where = "step " + std::to_string(idx);
    RawStep raw;
    if (!js.contains("time")) throw TraceError(where + ": missing \"time\"");
    raw.time = read_time(js["time"], trace.time_labels, where);

    if (js.contains("environment")) {
      std::string env = js["environment"].get<std::string>();
      if (environment.empty())
        environment = env;
      else if (environment != env)
        throw TraceError(where + ": environment agent changed from '" + environment + "' to '" +
                         env + "'");
    }

    if (js.contains("agents"))
      for (const json& a : js["agents"]) raw.snm.agents.insert(a.get<std::string>());
    if (raw.snm.agents.empty()) throw TraceError(where + ": the agent set must be nonempty");

    std::set<std::string> known = raw.snm.agents;
    if (!environment.empty()) known.insert(environment);

    if (js.contains("connections"))
      for (auto it = js["connections"].begin(); it != js["connections"].end(); ++it)
        raw.snm.connections[it.key()] =
            read_pairs(it.value(), known, where + ", connection " + it.key());
    if (js.contains("permissions"))
      for (auto it = js["permissions"].begin(); it != js["permissions"].end(); ++it)
        raw.snm.permissions[it.key()] =
            read_pairs(it.value(), known, where + ", permission " + it.key());
    if (js.contains("domains"))
      for (auto it = js["domains"].begin(); it != js["domains"].end(); ++it)
        for (const json& e : it.value()) raw.snm.domains[it.key()].insert(e.get<std::string>());

    if (js.contains("events"))
      for (const json& e : js["events"]) {
        try {
          raw.events.push_back(parse_event(e.get<std::string>(), popts));
        } catch (const ParseError& ex) {
          throw TraceError(where + ", event '" + e.get<std::string>() + "': " + ex.what());
        }
      }

    if (js.contains("ekbs"))
      for (auto it = js["ekbs"].begin(); it != js["ekbs"].end(); ++it) {
        if (!known.count(it.key()))
          throw TraceError(where + ": knowledge base for unknown agent '" + it.key() + "'");
        for (const json& f : it.value()) {
          try {
            raw.raw_ekbs[it.key()].push_back(parse_formula(f.get<std::string>(), popts));
          } catch (const ParseError& ex) {
            throw TraceError(where + ", entry of " + it.key() + ": " + ex.what());
          }
        }
      }

    if (js.contains("env_facts")) {
      if (environment.empty())
        throw TraceError(where + ": env_facts given but no environment agent declared");
      for (const json& f : js["env_facts"]) {
        Formula fact;
        try {
          fact = parse_formula(f.get<std::string>(), popts);
        } catch (const ParseError& ex) {
          throw TraceError(where + ", env fact: " + ex.what());
        }
        if (fact.kind() != FormulaKind::Atom || !fact.is_ground())
          throw TraceError(where + ": env facts must be ground atoms, got '" +
                           f.get<std::string>() + "'");
        raw.raw_env_facts.push_back(std::move(fact));
      }
    }

    if (js.contains("policies"))
      for (auto it = js["policies"].begin(); it != js["policies"].end(); ++it)
        for (const json& p : it.value()) {
          try {
            raw.snm.policies[it.key()].push_back(parse_policy(p.get<std::string>(), popts));
          } catch (const ParseError& ex) {
            throw TraceError(where + ", policy of " + it.key() + ": " + ex.what());
          }
        }

    raws.push_back(std::move(raw));
  }

  if (raws.empty()) throw TraceError("a trace needs at least one step");
  if (environment.empty()) environment = "env";

  for (std::size_t i = 0; i + 1 < raws.size(); ++i) {
    if (raws[i].time >= raws[i + 1].time) {
      std::string msg = "OrderedTimestampsViolated: step " + std::to_string(i) + " at " +
                        to_string(raws[i].time) + " is not before step " + std::to_string(i + 1) +
                        " at " + to_string(raws[i + 1].time);
      if (!opts.lenient) throw TraceError(msg);
      trace.warnings.push_back(msg);
    }
  }

  // Agents referenced by true environment facts belong to Ag at that step.
  std::set<std::string> universe;
  for (const RawStep& r : raws) universe.insert(r.snm.agents.begin(), r.snm.agents.end());
  for (RawStep& r : raws) {
    for (const Formula& fact : r.raw_env_facts)
      for (const Term& arg : fact.args()) {
        if (!arg.is_constant()) continue;
        if (universe.count(arg.name()) && !r.snm.agents.count(arg.name())) {
          r.snm.agents.insert(arg.name());
          trace.warnings.push_back("agent " + arg.name() + " added to Ag at t=" +
                                   to_string(r.time) + " (referenced by a true predicate)");
        }
      }
    r.snm.environment = environment;
    std::set<std::string>& ag = r.snm.domains["Ag"];
    ag.insert(r.snm.agents.begin(), r.snm.agents.end());
  }

  for (RawStep& r : raws) {
    Step step;
    step.time = r.time;
    step.snm = std::move(r.snm);
    step.events = std::move(r.events);
    trace.steps.push_back(std::move(step));
  }
  trace.finalize();

  // Phase 2: unfold entries against the full trace, then replay belief-enter
  // events in order.
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    Step& step = trace.steps[i];
    const RawStep& raw = raws[i];

    for (Event& e : step.events)
      if (e.belief)
        e.belief = std::make_shared<const Formula>(classify_atoms(*e.belief, trace));

    for (const auto& [agent, formulas] : raw.raw_ekbs) {
      EkbStore& store = step.snm.ekb_mutable(agent);
      for (const Formula& f : formulas) {
        Formula classified = classify_atoms(f, trace);
        if (classified.kind() == FormulaKind::Occurrence) {
          store.add_occurrence(classified);
          continue;
        }
        if (!is_self_aware(classified, agent, step.time))
          throw TraceError("entry of " + agent + " at t=" + to_string(step.time) +
                           " is not K[" + to_string(step.time) + "," + agent +
                           "]-rooted: " + f.to_string());
        try {
          for (const Formula& part : split_entries(unfold_quantifiers(classified, trace)))
            store.add_entry(part, agent, step.time);
        } catch (const EkbError& ex) {
          throw TraceError("entry of " + agent + " at t=" + to_string(step.time) + ": " +
                           ex.what());
        }
      }
    }

    for (const Formula& fact : raw.raw_env_facts)
      step.snm.ekb_mutable(environment)
          .add_entry(Formula::knows(TimeExpr::literal(step.time), Term::constant(environment),
                                    classify_atoms(fact, trace)),
                     environment, step.time);

    for (const Event& e : step.events) {
      if (!e.is_enter()) continue;
      const std::string& agent = e.enter_agent();
      std::vector<Formula> history;
      if (i > 0) history = ekb_union(trace, agent, trace.steps.front().time,
                                     trace.steps[i - 1].time);
      try {
        PropagationReport rep = propagate_belief(
            step.snm.ekb_mutable(agent), history, classify_atoms(*e.belief, trace), step.time,
            agent, opts.params, trace.functional_predicates);
        for (const PropagationItem& item : rep.items)
          trace.belief_replay.push_back(
              {rep.at, rep.agent, item.candidate, item.origin, item.admitted, item.note});
      } catch (const EkbError& ex) {
        throw TraceError("belief enter at t=" + to_string(step.time) + " for " + agent + ": " +
                         ex.what());
      }
    }
  }

  return trace;
}

Trace load_trace_file(const std::string& path, const TraceLoadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw TraceError("cannot open trace file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_trace(buf.str(), opts);
}

}  // namespace tekl
