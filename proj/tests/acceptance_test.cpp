// Acceptance suite: one scenario per criterion, one pass/fail line each.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "support/closure.hpp"
#include "support/gen.hpp"
#include "tekl/beliefs.hpp"
#include "tekl/checker.hpp"
#include "tekl/ekb.hpp"
#include "tekl/engine.hpp"
#include "tekl/parser.hpp"
#include "tekl/semantics.hpp"
#include "tekl/trace_io.hpp"
#include "tekl/validate.hpp"

using namespace tekl;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure(what);
}

std::string data(const std::string& name) {
  return std::string(TEKL_TEST_DATA_DIR) + "/" + name;
}

FrameworkParams fp(Window omega, BeliefPolicy beta = BeliefPolicy::Conservative) {
  FrameworkParams p;
  p.omega = omega;
  p.beta = beta;
  return p;
}

Trace load_with(const std::string& file, FrameworkParams params) {
  TraceLoadOptions opts;
  opts.params = params;
  return load_trace_file(data(file), opts);
}

std::vector<Formula> sorted(std::vector<Formula> v) {
  std::sort(v.begin(), v.end(), Formula::Less{});
  return v;
}

// 1. The window threshold of the two-knowledge-base derivation: derivable
//    with window 3, underivable with window 2.
void criterion_1() {
  Trace tr = load_with("fig_seq.trace.json", fp(Window(3)));
  std::vector<Formula> gamma = ekb_union(tr, "i", Timestamp(0), Timestamp(4));
  Formula goal = parse_formula("K[3,i] loc[3](alice,pub)");
  require(derive(gamma, goal, Window(3)).proved, "not derivable at window 3");
  require(!derive(gamma, goal, Window(2)).proved, "derivable at window 2");
  require(Checker(tr, fp(Window(3))).satisfies(goal).holds, "checker disagrees at omega=3");
  require(!Checker(tr, fp(Window(2))).satisfies(goal).holds, "checker disagrees at omega=2");
}

// 2. Increasing the window never loses derivability (>= 500 random premise
//    sets; success at w implies success at w+1..w+3).
void criterion_2() {
  gen::Rng rng(0x5EED'0002);
  std::vector<Timestamp> times = {Timestamp(0), Timestamp(1), Timestamp(2)};
  std::vector<std::string> agents = {"a", "b"};
  int trials = 0, witnesses = 0;
  for (int i = 0; i < 520; ++i) {
    std::vector<Formula> gamma = gen::random_gamma(rng, times, agents, 4);
    Formula goal = gen::random_goal(rng, gamma, times, agents);
    ++trials;
    int w0 = -1;
    for (int w = 0; w <= 3; ++w)
      if (derive(gamma, goal, Window(static_cast<std::uint64_t>(w))).proved) {
        w0 = w;
        break;
      }
    if (w0 < 0) continue;
    ++witnesses;
    for (int w = w0 + 1; w <= w0 + 3; ++w)
      require(derive(gamma, goal, Window(static_cast<std::uint64_t>(w))).proved,
              "monotonicity broken at w=" + std::to_string(w) + " for " + goal.to_string());
  }
  require(trials >= 500, "not enough trials");
  require(witnesses >= 50, "generator produced too few derivable goals");
}

// 3. Knowledge seeded at t stays derivable at every trace instant within
//    [t, t+omega] and fails just past the window (>= 200 random traces).
void criterion_3() {
  gen::Rng rng(0x5EED'0003);
  for (int i = 0; i < 220; ++i) {
    int steps = rng.pick(2, 7);
    int seed_step = rng.pick(0, steps - 1);
    std::uint64_t omega = static_cast<std::uint64_t>(rng.pick(0, 4));
    std::string atom = "p[" + std::to_string(seed_step) + "](c)";
    std::string entry = "K[" + std::to_string(seed_step) + ",i] " + atom;
    Trace tr = load_trace(gen::seeded_trace_json(steps, seed_step, entry));
    Checker checker(tr, fp(Window(omega)));
    Formula body = parse_formula(atom);
    for (int s = seed_step; s < steps; ++s) {
      bool within = static_cast<std::uint64_t>(s - seed_step) <= omega;
      bool holds = checker.knows(Timestamp(static_cast<std::uint64_t>(s)), "i", body).holds;
      require(holds == within, "trace " + std::to_string(i) + ": expected " +
                                   (within ? "holds" : "fails") + " at t=" + std::to_string(s) +
                                   " with omega=" + std::to_string(omega));
    }
  }
}

// 4. Belief propagation on the two-message evening: the conservative agent
//    keeps work, the susceptible one switches to pub; the enter record is
//    present either way.
void criterion_4() {
  Formula work = parse_formula("K[1320,bob] B[1320,bob] loc[1200](alice,work)");
  Formula pub = parse_formula("K[1320,bob] B[1320,bob] loc[1200](alice,pub)");
  Formula record = parse_formula("occ[1320](enter(bob, 'B[1320,bob] loc[1200](alice,pub)'))");

  Trace cons = load_with("example3.trace.json", fp(Window(120), BeliefPolicy::Conservative));
  const EkbStore* kb = cons.steps[1].snm.ekb_of("bob");
  require(kb != nullptr, "conservative run produced no knowledge base");
  require(sorted(kb->entries()) == sorted({work}), "conservative entries differ");
  require(sorted(kb->belief_log()) == sorted({record}), "conservative record missing");

  Trace sus = load_with("example3.trace.json", fp(Window(120), BeliefPolicy::Susceptible));
  kb = sus.steps[1].snm.ekb_of("bob");
  require(kb != nullptr, "susceptible run produced no knowledge base");
  require(sorted(kb->entries()) == sorted({pub}), "susceptible entries differ");
  require(sorted(kb->belief_log()) == sorted({record}), "susceptible record missing");
}

// 5. Snapchat ephemerality: with omega=10 the picture is known through tick
//    10 and gone at 15; with omega=inf both queries hold.
void criterion_5() {
  Trace tr = load_with("snapchat.trace.json", fp(Window(10)));
  Formula within = parse_formula("forall t . 0 <= t && t <= 10 => K[t,alice] picture[0](bob,pub)");
  Formula after = parse_formula("K[15,alice] picture[0](bob,pub)");

  Checker ten(tr, fp(Window(10)));
  require(ten.satisfies(within).holds, "bounded recall misses the in-window picture");
  require(!ten.satisfies(after).holds, "picture outlived the window");

  Checker forever(tr, fp(Window::infinite()));
  require(forever.satisfies(within).holds, "perfect recall misses the in-window picture");
  require(forever.satisfies(after).holds, "perfect recall forgot the picture");
}

// 6. After belief propagation no agent's knowledge base can derive
//    B[t] false within the engine bound (>= 200 random traces, functional loc).
void criterion_6() {
  gen::Rng rng(0x5EED'0006);
  EngineOptions eng;  // depth 64
  for (int i = 0; i < 210; ++i) {
    int steps = rng.pick(2, 5);
    std::ostringstream os;
    os << "{\"semantics\": null, \"functional_predicates\": [\"loc\"], \"steps\": [";
    for (int s = 0; s < steps; ++s) {
      if (s) os << ",";
      os << "{\"time\": " << s << ", \"agents\": [\"i\"], \"environment\": \"env\"";
      if (rng.chance(0.85)) {
        int vt = rng.pick(0, std::max(0, s - 1) == 0 ? 0 : 1);
        std::string value = rng.chance(0.5) ? "pub" : "work";
        os << ", \"events\": [\"enter(i, 'B[" << s << ",i] loc[" << vt << "](alice," << value
           << ")')\"]";
      }
      os << "}";
    }
    os << "]}";

    FrameworkParams params = fp(rng.chance(0.3) ? Window::infinite()
                                                : Window(static_cast<std::uint64_t>(rng.pick(0, 3))),
                                rng.chance(0.5) ? BeliefPolicy::Conservative
                                                : BeliefPolicy::Susceptible);
    TraceLoadOptions opts;
    opts.params = params;
    Trace tr = load_trace(os.str(), opts);

    for (const Step& step : tr.steps) {
      std::vector<Formula> gamma =
          ekb_union(tr, "i", tr.timestamps().min(), step.time);
      Formula bot = Formula::believes(TimeExpr::literal(step.time), Term::constant("i"),
                                      Formula::false_formula());
      require(!derive(gamma, bot, params.omega, eng).proved,
              "trace " + std::to_string(i) + ": B false derivable at t=" + to_string(step.time));

      const EkbStore* kb = step.snm.ekb_of("i");
      if (kb == nullptr) continue;
      for (const Formula& entry : kb->entries()) {
        std::vector<Formula> rest;
        for (const Formula& f : gamma)
          if (!f.equals(entry)) rest.push_back(f);
        require(consistent(rest, entry, step.time, "i", params.omega,
                           tr.functional_predicates, eng),
                "trace " + std::to_string(i) + ": admitted set inconsistent at t=" +
                    to_string(step.time));
      }
    }
  }
}

// 7. Backward chaining agrees with the exhaustive forward closure
//    (>= 1000 sampled goals, under a minute).
void criterion_7() {
  auto started = std::chrono::steady_clock::now();
  gen::Rng rng(0x5EED'0007);
  std::vector<Timestamp> times = {Timestamp(0), Timestamp(1), Timestamp(2)};
  std::vector<std::string> agents = {"a", "b"};

  int checked = 0;
  for (int round = 0; round < 26; ++round) {
    std::vector<Formula> gamma = gen::random_gamma(rng, times, agents, 4);
    oracle::ForwardClosure closure(gamma, 3, 3);
    const std::vector<Formula>& universe = closure.universe();
    for (int g = 0; g < 40; ++g) {
      const Formula& goal = universe[static_cast<std::size_t>(
          rng.pick(0, static_cast<int>(universe.size()) - 1))];
      std::uint64_t w = static_cast<std::uint64_t>(rng.pick(0, 3));
      bool fwd = closure.derivable(goal, Window(w));
      bool bwd = derive(gamma, goal, Window(w)).proved;
      require(fwd == bwd, "oracle disagreement on " + goal.to_string() + " at w=" +
                              std::to_string(w) + (fwd ? " (forward only)" : " (backward only)"));
      ++checked;
    }
  }
  require(checked >= 1000, "not enough sampled goals");
  auto elapsed = std::chrono::duration_cast<std::chrono::seconds>(
                     std::chrono::steady_clock::now() - started)
                     .count();
  require(elapsed <= 60, "oracle comparison took " + std::to_string(elapsed) + "s");
}

// 8. Quantifier expansion stays within |f| * d^q on random formulas.
void criterion_8() {
  gen::Rng rng(0x5EED'0008);
  Trace tr = load_trace(R"json({
    "steps": [
      {"time": 0, "agents": ["a", "b"], "environment": "env",
       "domains": {"Locs": ["pub", "work", "home"]}},
      {"time": 1, "agents": ["a", "b"], "environment": "env",
       "domains": {"Locs": ["pub", "work", "home"]}},
      {"time": 2, "agents": ["a", "b"], "environment": "env",
       "domains": {"Locs": ["pub", "work", "home"]}}
    ]})json");
  std::size_t d = 3;  // max(|T|, |Locs|, |Ag|)
  std::vector<Timestamp> times = {Timestamp(0), Timestamp(1), Timestamp(2)};

  for (int i = 0; i < 120; ++i) {
    int q = rng.pick(1, 3);
    Formula f = gen::random_atom(rng, times);
    if (rng.chance(0.3))
      f = Formula::implies(f, gen::random_atom(rng, times));
    for (int k = 0; k < q; ++k) {
      int pick = rng.pick(0, 2);
      if (pick == 0)
        f = Formula::forall_time("t" + std::to_string(k), f);
      else if (pick == 1)
        f = Formula::forall_domain("x" + std::to_string(k), "Locs",
                                   TimeExpr::literal(times[static_cast<std::size_t>(
                                       rng.pick(0, 2))]),
                                   f);
      else
        f = Formula::forall_domain("y" + std::to_string(k), "Ag",
                                   TimeExpr::literal(times[static_cast<std::size_t>(
                                       rng.pick(0, 2))]),
                                   f);
    }
    if (rng.chance(0.4))
      f = Formula::knows(TimeExpr::literal(Timestamp(0)), Term::constant("a"), f);
    Formula out = unfold_quantifiers(f, tr);
    long double bound = static_cast<long double>(f.size());
    for (int k = 0; k < q; ++k) bound *= static_cast<long double>(d);
    require(static_cast<long double>(out.size()) <= bound,
            "expansion bound exceeded: " + std::to_string(out.size()) + " nodes from " +
                std::to_string(f.size()));
    require(!out.contains_quantifier(), "quantifier survived unfolding");
  }
}

// 9. The weekend and friends policies: one conforming and one violating
//    trace each, with the violating witness matching the hand-derived one.
void criterion_9() {
  Policy weekend = parse_policy(
      "forall t . policy[alice,0] { weekend[t]() => deny exists l : Locs . K[t,bob] loc[t](alice,l) }");
  Policy friends = parse_policy(
      "forall t . forall t2 . forall x : Ag[t] . "
      "policy[diane,0] { !friends[t](diane,x) && !friends[t2](diane,x) => deny K[t2,x] post[t](diane) }");

  Checker w_ok(load_with("weekend_conforming.trace.json", fp(Window(2))), fp(Window(2)));
  require(w_ok.conforms(weekend).holds, "weekend policy should conform");

  Checker w_bad(load_with("weekend_violation.trace.json", fp(Window(2))), fp(Window(2)));
  Verdict wv = w_bad.conforms(weekend);
  require(!wv.holds, "weekend policy should be violated");
  require(wv.witness.has_value() && wv.witness->bindings.size() == 1 &&
              wv.witness->bindings[0] == std::pair<std::string, std::string>{"t", "1"},
          "weekend witness is not t=1");

  Checker d_ok(load_with("diane_conforming.trace.json", fp(Window::infinite())),
               fp(Window::infinite()));
  require(d_ok.conforms(friends).holds, "friends policy should conform");

  Checker d_bad(load_with("diane_violation.trace.json", fp(Window::infinite())),
                fp(Window::infinite()));
  Verdict dv = d_bad.conforms(friends);
  require(!dv.holds, "friends policy should be violated");
  std::vector<std::pair<std::string, std::string>> expected = {
      {"t", "0"}, {"t2", "2"}, {"x", "charlie"}};
  require(dv.witness.has_value() && dv.witness->bindings == expected,
          "friends witness is not (t=0, t2=2, x=charlie)");
}

// 10. Event independence under the facebook-lite semantics: a post and a
//     friend request commute; a post and disallowLoc do not.
void criterion_10() {
  Trace tr = load_with("facebook_base.trace.json", fp(Window(10)));
  auto sem = make_semantics("facebook-lite");
  const SocialNetworkModel& base = tr.steps[0].snm;
  Event post = parse_event("post(charlie,bob,london)");
  Event request = parse_event("friendRequest(alice,charlie)");
  Event disallow = parse_event("disallowLoc(bob)");

  require(check_independence(base, post, request, Timestamp(1), Timestamp(2), *sem,
                             fp(Window(10))),
          "post and friendRequest should be independent");
  require(!check_independence(base, post, disallow, Timestamp(1), Timestamp(2), *sem,
                              fp(Window(10))),
          "post and disallowLoc should not be independent");
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* description;
    std::function<void()> run;
  };
  std::vector<Criterion> criteria = {
      {1, "window threshold of the two-step derivation (w=3 yes, w=2 no)", criterion_1},
      {2, "derivability is monotone in the window (500+ random premise sets)", criterion_2},
      {3, "seeded knowledge persists exactly through its window (200+ traces)", criterion_3},
      {4, "belief propagation keeps work (conservative) or pub (susceptible)", criterion_4},
      {5, "snapchat pictures last ten ticks, forever under perfect recall", criterion_5},
      {6, "propagated belief stores never derive B false (200+ traces)", criterion_6},
      {7, "backward chaining agrees with the forward closure (1000+ goals)", criterion_7},
      {8, "quantifier expansion stays within |f| * d^q (100+ formulas)", criterion_8},
      {9, "weekend and friends policies verdicts and witnesses", criterion_9},
      {10, "post/friendRequest independent, post/disallowLoc not", criterion_10},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    try {
      c.run();
      std::cout << "[PASS] criterion " << c.number << ": " << c.description << "\n";
    } catch (const std::exception& ex) {
      ++failures;
      std::cout << "[FAIL] criterion " << c.number << ": " << c.description << ": " << ex.what()
                << "\n";
    }
  }
  if (failures) std::cout << failures << " criterion(s) failed\n";
  return failures == 0 ? 0 : 1;
}
