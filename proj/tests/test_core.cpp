#include "doctest.h"

#include "tekl/formula.hpp"
#include "tekl/macro.hpp"
#include "tekl/parser.hpp"
#include "tekl/time.hpp"

using namespace tekl;

namespace {
TimestampSet make_times(std::initializer_list<std::uint64_t> ts) {
  std::vector<Timestamp> v;
  for (auto t : ts) v.push_back(Timestamp(t));
  return TimestampSet(v);
}
}  // namespace

TEST_CASE("pred and next saturate at the trace boundaries") {
  TimestampSet ts = make_times({0, 3, 7});
  CHECK(ts.pred(Timestamp(3)) == Timestamp(0));
  CHECK(ts.next(Timestamp(3)) == Timestamp(7));
  CHECK(ts.pred(Timestamp(0)) == Timestamp(0));
  CHECK(ts.next(Timestamp(7)) == Timestamp(7));
  CHECK_THROWS_AS(ts.pred(Timestamp(5)), std::out_of_range);
  CHECK_THROWS_AS(ts.next(Timestamp(4)), std::out_of_range);
}

TEST_CASE("pred and next are mutually inverse on interior points") {
  TimestampSet ts = make_times({0, 2, 5, 9});
  for (Timestamp t : ts.values()) {
    if (t == ts.min()) continue;
    CHECK(ts.next(ts.pred(t)) == t);
  }
}

TEST_CASE("everyone-knows expands to a conjunction of K") {
  Formula got = parse_formula("E[5,{a,b}] p[5](x)");
  Formula want = parse_formula("(K[5,a] p[5](x)) && K[5,b] p[5](x)");
  CHECK(got.equals(want));
}

TEST_CASE("singleton someone-knows collapses to a bare K") {
  Formula got = parse_formula("S[5,{a}] p[5](x)");
  Formula want = parse_formula("K[5,a] p[5](x)");
  CHECK(got.equals(want));
}

TEST_CASE("someone-knows over two agents is the encoded disjunction") {
  Formula got = parse_formula("S[5,{a,b}] p[5](x)");
  Formula want = Formula::negation(Formula::conjunction(
      Formula::negation(parse_formula("K[5,a] p[5](x)")),
      Formula::negation(parse_formula("K[5,b] p[5](x)"))));
  CHECK(got.equals(want));
}

TEST_CASE("group modalities reject an empty group") {
  CHECK_THROWS(parse_formula("E[5,{}] p[5](x)"));
}

TEST_CASE("learn expands against a trace timestamp set with pred") {
  TimestampSet ts = make_times({0, 3, 7});
  Formula learn = parse_formula("L[3,i] q[3](c)");
  CHECK(learn.kind() == FormulaKind::Learn);  // deferred until a trace is bound
  Formula got = expand_macros(learn, &ts);
  Formula want = parse_formula("!(K[0,i] q[3](c)) && K[3,i] q[3](c)");
  CHECK(got.equals(want));
}

TEST_CASE("forget and reject expand dually to learn and accept") {
  TimestampSet ts = make_times({0, 3});
  CHECK(expand_macros(parse_formula("F[3,i] q[3](c)"), &ts)
            .equals(parse_formula("(K[0,i] q[3](c)) && !(K[3,i] q[3](c))")));
  CHECK(expand_macros(parse_formula("AC[3,i] q[3](c)"), &ts)
            .equals(parse_formula("!(B[0,i] q[3](c)) && B[3,i] q[3](c)")));
  CHECK(expand_macros(parse_formula("RJ[3,i] q[3](c)"), &ts)
            .equals(parse_formula("(B[0,i] q[3](c)) && !(B[3,i] q[3](c))")));
}

TEST_CASE("expand_macros is idempotent on core formulas") {
  TimestampSet ts = make_times({0, 3, 7});
  std::vector<std::string> texts = {
      "K[3,i] loc[3](alice,pub)",
      "!!p[0](c)",
      "forall t . forall j : Ag[t] . event[t](j,pub) => loc[t](j,pub)",
      "occ[3](enter(i, 'B[3,i] p[3](c)'))",
      "false",
  };
  for (const std::string& text : texts) {
    Formula f = parse_formula(text);
    Formula once = expand_macros(f, &ts);
    CHECK(expand_macros(once, &ts).equals(once));
  }
}

TEST_CASE("permission sugar becomes an action atom") {
  Formula got = parse_formula("P[5,bob,alice] friendRequest");
  CHECK(got.kind() == FormulaKind::Atom);
  CHECK(got.atom_kind() == AtomKind::Action);
  CHECK(got.name() == "friendRequest");
  CHECK(got.args()[0] == Term::constant("bob"));
  CHECK(got.args()[1] == Term::constant("alice"));
}

TEST_CASE("box and diamond are time quantifier sugar") {
  CHECK(parse_formula("box t . p[t](c)").equals(parse_formula("forall t . p[t](c)")));
  CHECK(parse_formula("diamond t . p[t](c)")
            .equals(Formula::negation(
                Formula::forall_time("t", Formula::negation(parse_formula("forall t . p[t](c)").body())))));
}

TEST_CASE("implication desugars to not-and") {
  Formula f = parse_formula("p[0](c) => q[0](c)");
  auto imp = f.as_implication();
  REQUIRE(imp.has_value());
  CHECK(imp->first.equals(parse_formula("p[0](c)")));
  CHECK(imp->second.equals(parse_formula("q[0](c)")));
}

TEST_CASE("timestamps order windows sensibly") {
  Window w(3);
  CHECK(w.covers(3));
  CHECK_FALSE(w.covers(4));
  CHECK(w.consume(2) == Window(1));
  CHECK(Window::infinite().covers(1'000'000));
  CHECK(Window::infinite().consume(5).is_infinite());
}

TEST_CASE("formula equality is structural and hash-consistent") {
  Formula a = parse_formula("K[3,i] loc[3](alice,pub)");
  Formula b = parse_formula("K[3,i] loc[3](alice,pub)");
  Formula c = parse_formula("K[2,i] loc[3](alice,pub)");
  CHECK(a.equals(b));
  CHECK(a.hash() == b.hash());
  CHECK_FALSE(a.equals(c));
}
