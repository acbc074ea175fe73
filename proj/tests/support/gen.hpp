#ifndef TEKL_TESTS_GEN_HPP
#define TEKL_TESTS_GEN_HPP

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tekl/formula.hpp"
#include "tekl/time.hpp"

namespace gen {

using namespace tekl;

struct Rng {
  std::mt19937 eng;
  explicit Rng(std::uint32_t seed) : eng(seed) {}

  int pick(int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(eng);
  }
  bool chance(double p) { return std::uniform_real_distribution<>(0.0, 1.0)(eng) < p; }
  template <typename T>
  const T& among(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(pick(0, static_cast<int>(xs.size()) - 1))];
  }
};

// Small ground atoms over a fixed alphabet.
inline Formula random_atom(Rng& rng, const std::vector<Timestamp>& times) {
  static const std::vector<std::string> names = {"p", "q", "r"};
  std::string name = rng.among(names);
  Timestamp t = rng.among(times);
  return Formula::predicate(name, TimeExpr::literal(t), {Term::constant("c")});
}

// Gamma members shaped like knowledge-base content: K-rooted facts,
// implications under K, knowledge about beliefs, the occasional negation.
inline Formula random_gamma_member(Rng& rng, const std::vector<Timestamp>& times,
                                   const std::vector<std::string>& agents) {
  Term agent = Term::constant(rng.among(agents));
  TimeExpr at = TimeExpr::literal(rng.among(times));
  switch (rng.pick(0, 5)) {
    case 0:
      return Formula::knows(at, agent, random_atom(rng, times));
    case 1:
      return Formula::knows(at, agent,
                            Formula::implies(random_atom(rng, times), random_atom(rng, times)));
    case 2:
      return Formula::knows(at, agent, Formula::believes(at, agent, random_atom(rng, times)));
    case 3:
      return Formula::knows(at, agent, Formula::negation(random_atom(rng, times)));
    case 4:
      return Formula::believes(at, agent, random_atom(rng, times));
    default:
      return Formula::knows(
          at, agent, Formula::knows(at, agent, random_atom(rng, times)));
  }
}

inline std::vector<Formula> random_gamma(Rng& rng, const std::vector<Timestamp>& times,
                                         const std::vector<std::string>& agents, int max_size) {
  std::vector<Formula> out;
  int n = rng.pick(1, max_size);
  for (int i = 0; i < n; ++i) out.push_back(random_gamma_member(rng, times, agents));
  return out;
}

// Goals worth asking: half are arbitrary, half are mutations of a premise
// (retimed, wrapped, stripped, or weakened to belief), so a healthy share is
// actually derivable.
inline Formula random_goal(Rng& rng, const std::vector<Formula>& gamma,
                           const std::vector<Timestamp>& times,
                           const std::vector<std::string>& agents) {
  if (gamma.empty() || rng.chance(0.4)) return random_gamma_member(rng, times, agents);
  const Formula& base = rng.among(gamma);
  if (base.kind() != FormulaKind::Knows && base.kind() != FormulaKind::Believes) return base;

  bool knowledge = base.kind() == FormulaKind::Knows;
  TimeExpr at = base.time();
  if (knowledge && rng.chance(0.5)) {
    // move to a later instant, reachable by knowledge recall
    Timestamp target = rng.among(times);
    if (target > at.value()) at = TimeExpr::literal(target);
  }
  switch (rng.pick(0, 3)) {
    case 0:  // same shape, possibly retimed
      return knowledge ? Formula::knows(at, base.agent(), base.body())
                       : Formula::believes(at, base.agent(), base.body());
    case 1:  // introspective wrap
      return knowledge
                 ? Formula::knows(at, base.agent(), Formula::knows(at, base.agent(), base.body()))
                 : Formula::believes(at, base.agent(),
                                     Formula::believes(at, base.agent(), base.body()));
    case 2:  // knowledge weakens to belief; beliefs are known to be held
      return knowledge ? Formula::believes(at, base.agent(), base.body())
                       : Formula::knows(base.time(), base.agent(), base);
    default:  // strip the modality
      return base.body();
  }
}

// Trace document with one agent "i" whose knowledge is seeded at one step;
// consecutive integer timestamps 0..steps-1.
inline std::string seeded_trace_json(int steps, int seed_step, const std::string& entry) {
  std::ostringstream os;
  os << "{\"semantics\": null, \"functional_predicates\": [\"loc\"], \"steps\": [";
  for (int s = 0; s < steps; ++s) {
    if (s) os << ",";
    os << "{\"time\": " << s << ", \"agents\": [\"i\"], \"environment\": \"env\"";
    if (s == seed_step) os << ", \"ekbs\": {\"i\": [\"" << entry << "\"]}";
    os << "}";
  }
  os << "]}";
  return os.str();
}

}  // namespace gen

#endif
