#include "doctest.h"

#include "support/gen.hpp"
#include "tekl/beliefs.hpp"
#include "tekl/parser.hpp"
#include "tekl/trace_io.hpp"

using namespace tekl;

namespace {

FrameworkParams params_with(BeliefPolicy beta, Window omega = Window::infinite()) {
  FrameworkParams p;
  p.beta = beta;
  p.omega = omega;
  return p;
}

std::vector<Formula> sorted(std::vector<Formula> v) {
  std::sort(v.begin(), v.end(), Formula::Less{});
  return v;
}

}  // namespace

TEST_CASE("a belief with nothing against it is admitted, plus its record") {
  EkbStore store;
  Formula belief = parse_formula("B[5,bob] loc[5](alice,pub)");
  PropagationReport rep = propagate_belief(store, {}, belief, Timestamp(5), "bob",
                                           params_with(BeliefPolicy::Conservative), {"loc"});
  REQUIRE(rep.items.size() == 1);
  CHECK(rep.items[0].admitted);
  CHECK(store.entries().size() == 1);
  CHECK(store.entries()[0].equals(parse_formula("K[5,bob] B[5,bob] loc[5](alice,pub)")));
  REQUIRE(store.belief_log().size() == 1);
  CHECK(store.belief_log()[0].equals(
      parse_formula("occ[5](enter(bob, 'B[5,bob] loc[5](alice,pub)'))")));
}

TEST_CASE("the occurrence record lands even when the belief is rejected") {
  std::vector<Formula> history = {parse_formula("K[5,bob] loc[5](alice,work)")};
  EkbStore store;
  Formula belief = parse_formula("B[5,bob] loc[5](alice,pub)");
  PropagationReport rep = propagate_belief(store, history, belief, Timestamp(5), "bob",
                                           params_with(BeliefPolicy::Susceptible), {"loc"});
  REQUIRE(rep.items.size() == 1);
  CHECK_FALSE(rep.items[0].admitted);  // contradicts actual knowledge
  CHECK(store.entries().empty());
  CHECK(store.belief_log().size() == 1);
}

TEST_CASE("susceptible agents reject beliefs contradicting older knowledge too") {
  std::vector<Formula> history = {parse_formula("K[3,bob] loc[3](alice,work)")};
  EkbStore store;
  Formula belief = parse_formula("B[5,bob] loc[3](alice,pub)");
  PropagationReport rep = propagate_belief(store, history, belief, Timestamp(5), "bob",
                                           params_with(BeliefPolicy::Susceptible), {"loc"});
  CHECK_FALSE(rep.items[0].admitted);  // KR1 carries the knowledge to t=5, L1 turns it to belief
}

TEST_CASE("conservative keeps the old story, susceptible the new one") {
  TraceLoadOptions opts;
  opts.params.omega = Window(120);
  std::string path = std::string(TEKL_TEST_DATA_DIR) + "/example3.trace.json";

  SUBCASE("conservative") {
    opts.params.beta = BeliefPolicy::Conservative;
    Trace tr = load_trace_file(path, opts);
    const EkbStore* kb = tr.steps[1].snm.ekb_of("bob");
    REQUIRE(kb != nullptr);
    CHECK(sorted(kb->entries()) ==
          sorted({parse_formula("K[1320,bob] B[1320,bob] loc[1200](alice,work)")}));
    CHECK(sorted(kb->belief_log()) ==
          sorted({parse_formula("occ[1320](enter(bob, 'B[1320,bob] loc[1200](alice,pub)'))")}));
  }

  SUBCASE("susceptible") {
    opts.params.beta = BeliefPolicy::Susceptible;
    Trace tr = load_trace_file(path, opts);
    const EkbStore* kb = tr.steps[1].snm.ekb_of("bob");
    REQUIRE(kb != nullptr);
    CHECK(sorted(kb->entries()) ==
          sorted({parse_formula("K[1320,bob] B[1320,bob] loc[1200](alice,pub)")}));
    CHECK(sorted(kb->belief_log()) ==
          sorted({parse_formula("occ[1320](enter(bob, 'B[1320,bob] loc[1200](alice,pub)'))")}));
  }
}

TEST_CASE("the conservative admitted set is an oldest-first prefix") {
  TraceLoadOptions opts;
  opts.params.omega = Window(120);
  opts.params.beta = BeliefPolicy::Conservative;
  Trace tr = load_trace_file(std::string(TEKL_TEST_DATA_DIR) + "/example3.trace.json", opts);
  // At 1320 the replay saw two candidates: the re-stamped 1200 belief and the
  // incoming one. Oldest first; once one is in, the conflicting rest is out.
  std::vector<BeliefReplayItem> at_1320;
  for (const BeliefReplayItem& it : tr.belief_replay)
    if (it.at == Timestamp(1320)) at_1320.push_back(it);
  REQUIRE(at_1320.size() == 2);
  CHECK(at_1320[0].origin == Timestamp(1200));
  CHECK(at_1320[0].admitted);
  CHECK(at_1320[1].origin == Timestamp(1320));
  CHECK_FALSE(at_1320[1].admitted);
}

TEST_CASE("a zero window forgets the earlier belief entirely") {
  TraceLoadOptions opts;
  opts.params.omega = Window(0);
  opts.params.beta = BeliefPolicy::Conservative;
  Trace tr = load_trace_file(std::string(TEKL_TEST_DATA_DIR) + "/example3.trace.json", opts);
  const EkbStore* kb = tr.steps[1].snm.ekb_of("bob");
  REQUIRE(kb != nullptr);
  // The 20:00 record is outside [1320-0, 1320]; only the new belief competes.
  CHECK(sorted(kb->entries()) ==
        sorted({parse_formula("K[1320,bob] B[1320,bob] loc[1200](alice,pub)")}));
}

TEST_CASE("determinism: same inputs, same decisions") {
  TraceLoadOptions opts;
  opts.params.omega = Window(120);
  opts.params.beta = BeliefPolicy::Susceptible;
  std::string path = std::string(TEKL_TEST_DATA_DIR) + "/example3.trace.json";
  Trace a = load_trace_file(path, opts);
  Trace b = load_trace_file(path, opts);
  REQUIRE(a.belief_replay.size() == b.belief_replay.size());
  for (std::size_t i = 0; i < a.belief_replay.size(); ++i) {
    CHECK(a.belief_replay[i].admitted == b.belief_replay[i].admitted);
    CHECK(a.belief_replay[i].candidate.equals(b.belief_replay[i].candidate));
  }
  CHECK(a.steps[1].snm == b.steps[1].snm);
}

TEST_CASE("propagation rejects mis-stamped or mis-owned beliefs") {
  EkbStore store;
  CHECK_THROWS_AS(propagate_belief(store, {}, parse_formula("B[4,bob] p[4](c)"), Timestamp(5),
                                   "bob", params_with(BeliefPolicy::Conservative), {}),
                  EkbError);
  CHECK_THROWS_AS(propagate_belief(store, {}, parse_formula("B[5,alice] p[5](c)"), Timestamp(5),
                                   "bob", params_with(BeliefPolicy::Conservative), {}),
                  EkbError);
  CHECK_THROWS_AS(propagate_belief(store, {}, parse_formula("K[5,bob] p[5](c)"), Timestamp(5),
                                   "bob", params_with(BeliefPolicy::Conservative), {}),
                  EkbError);
}
