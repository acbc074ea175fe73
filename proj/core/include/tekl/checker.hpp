#ifndef TEKL_CHECKER_HPP
#define TEKL_CHECKER_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tekl/engine.hpp"
#include "tekl/policy.hpp"
#include "tekl/snm.hpp"
#include "tekl/time.hpp"

#include "json.hpp"

namespace tekl {

struct CheckError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A ground atom mentioned a timestamp with no trace step behind it.
struct UnknownTimestampError : CheckError {
  explicit UnknownTimestampError(Timestamp t)
      : CheckError("UnknownTimestamp: no trace step at t=" + to_string(t)), at(t) {}
  Timestamp at;
};

// Bindings of the quantifier spine that leads to a failing instantiation,
// outermost first.
struct Witness {
  std::vector<std::pair<std::string, std::string>> bindings;
};

struct Verdict {
  bool holds = false;
  std::optional<Witness> witness;
  std::optional<Proof> proof;

  explicit operator bool() const { return holds; }
  nlohmann::json to_json() const;
};

// Evaluates formulas and policies over a loaded trace. Queries are pure; one
// checker can serve many formulas.
class Checker {
 public:
  Checker(Trace trace, FrameworkParams params);

  // The satisfaction relation. The formula must be closed; macros expand
  // against the trace before evaluation. A witness is attached when the
  // formula fails and its top connective is a quantifier.
  Verdict satisfies(const Formula& f) const;

  // K/B queries: derive K[t,agent] body (resp. B[t,agent] body) from the
  // union of the agent's knowledge bases up to t, with window omega.
  Verdict knows(Timestamp t, const std::string& agent, const Formula& body) const;
  Verdict believes(Timestamp t, const std::string& agent, const Formula& body) const;

  // The conformance relation: quantifiers unfold (domain-less binders over
  // trace timestamps, bare domains over the union across steps) and each
  // restriction checks guard => !alpha under the satisfaction relation.
  Verdict conforms(const Policy& policy) const;

  const Trace& trace() const { return trace_; }
  const FrameworkParams& params() const { return params_; }

 private:
  friend class Eval;

  Verdict conforms_rec(const Policy& policy, std::vector<std::pair<std::string, std::string>>& trail,
                       std::optional<Timestamp> min_time) const;

  Trace trace_;
  FrameworkParams params_;
};

}  // namespace tekl

#endif
