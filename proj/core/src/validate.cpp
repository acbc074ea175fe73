#include "tekl/validate.hpp"

#include "tekl/ekb.hpp"

namespace tekl {

namespace {

std::vector<Formula> entries_up_to(const Trace& trace, std::size_t last_step,
                                   const std::string& agent) {
  std::vector<Formula> out;
  for (std::size_t i = 0; i <= last_step && i < trace.steps.size(); ++i)
    if (const EkbStore* kb = trace.steps[i].snm.ekb_of(agent))
      for (const Formula& f : kb->all()) out.push_back(f);
  return out;
}

SocialNetworkModel merge_probe_times(const SocialNetworkModel& snm, Timestamp t2, Timestamp t) {
  SocialNetworkModel out = snm;
  auto map = [&](Timestamp x) { return x == t2 ? t : x; };
  for (auto& [agent, store] : out.ekbs)
    store = store.transformed([&](const Formula& f) { return f.retime(map); });
  return out;
}

}  // namespace

bool check_independence(const SocialNetworkModel& base, const Event& e1, const Event& e2,
                        Timestamp t, Timestamp t2, const OsnSemantics& sem,
                        const FrameworkParams& params) {
  if (!(t < t2)) throw std::invalid_argument("check_independence needs t < t2");
  if (!sem.knows_event(e1.name))
    throw SemanticsError("event '" + e1.name + "' is outside the " + sem.name() + " vocabulary");
  if (!sem.knows_event(e2.name))
    throw SemanticsError("event '" + e2.name + "' is outside the " + sem.name() + " vocabulary");

  auto run = [&](const Event& first, const Event& second) {
    ApplyContext ctx;
    ctx.params = params;
    ctx.accumulate_ekbs = true;
    ctx.prior_entries = [&base](const std::string& agent) {
      const EkbStore* kb = base.ekb_of(agent);
      return kb ? kb->all() : std::vector<Formula>{};
    };
    SocialNetworkModel mid = sem.apply(base, {first}, t, ctx);
    return sem.apply(mid, {second}, t2, ctx);
  };

  SocialNetworkModel left = run(e1, e2);
  SocialNetworkModel right = run(e2, e1);
  return merge_probe_times(left, t2, t) == merge_probe_times(right, t2, t);
}

WellFormedReport validate_trace(const Trace& trace, const OsnSemantics* sem,
                                const FrameworkParams& params) {
  WellFormedReport report;

  // (1) strictly increasing timestamps
  for (std::size_t i = 0; i + 1 < trace.steps.size(); ++i) {
    if (!(trace.steps[i].time < trace.steps[i + 1].time)) {
      report.ordered = ConditionStatus::Failed;
      report.notes.push_back("timestamps not strictly increasing: step " + std::to_string(i) +
                             " at " + to_string(trace.steps[i].time) + ", step " +
                             std::to_string(i + 1) + " at " +
                             to_string(trace.steps[i + 1].time));
    }
  }

  // (2) transitions accounted for by the event semantics
  if (sem == nullptr) {
    report.accounted = ConditionStatus::Unchecked;
    report.notes.push_back("no event semantics declared; transition accounting skipped");
  } else {
    for (std::size_t i = 0; i + 1 < trace.steps.size(); ++i) {
      const Step& from = trace.steps[i];
      const Step& to = trace.steps[i + 1];
      ApplyContext ctx;
      ctx.params = params;
      ctx.functional_predicates = trace.functional_predicates;
      ctx.prior_entries = [&trace, i](const std::string& agent) {
        return entries_up_to(trace, i, agent);
      };
      try {
        SocialNetworkModel got = sem->apply(from.snm, to.events, to.time, ctx);
        if (!(got == to.snm)) {
          report.accounted = ConditionStatus::Failed;
          report.notes.push_back("replaying events of step " + std::to_string(i + 1) + " (t=" +
                                 to_string(to.time) + ") does not reproduce the declared model");
        }
      } catch (const std::exception& ex) {
        report.accounted = ConditionStatus::Failed;
        report.notes.push_back("transition to step " + std::to_string(i + 1) +
                               " failed to replay: " + ex.what());
      }
    }
  }

  // (3) pairwise independence of events within a step
  bool any_pair = false;
  for (const Step& s : trace.steps) any_pair |= s.events.size() > 1;
  if (!any_pair) {
    report.independent = ConditionStatus::Passed;
  } else if (sem == nullptr) {
    report.independent = ConditionStatus::Unchecked;
    report.notes.push_back("no event semantics declared; independence checks skipped");
  } else {
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
      const Step& s = trace.steps[k];
      if (s.events.size() < 2) continue;
      const SocialNetworkModel& base = k == 0 ? trace.steps[0].snm : trace.steps[k - 1].snm;
      for (std::size_t i = 0; i < s.events.size(); ++i) {
        for (std::size_t j = i + 1; j < s.events.size(); ++j) {
          try {
            if (!check_independence(base, s.events[i], s.events[j], s.time,
                                    Timestamp(s.time.ticks + 1), *sem, params)) {
              report.independent = ConditionStatus::Failed;
              report.notes.push_back("events '" + s.events[i].to_string() + "' and '" +
                                     s.events[j].to_string() + "' at t=" + to_string(s.time) +
                                     " are not independent");
            }
          } catch (const std::exception& ex) {
            report.independent = ConditionStatus::Failed;
            report.notes.push_back("independence probe at t=" + to_string(s.time) +
                                   " failed: " + ex.what());
          }
        }
      }
    }
  }

  return report;
}

}  // namespace tekl
