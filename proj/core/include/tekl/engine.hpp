#ifndef TEKL_ENGINE_HPP
#define TEKL_ENGINE_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tekl/formula.hpp"
#include "tekl/time.hpp"

#include "json.hpp"

namespace tekl {

enum class Rule { Premise, A1, A2, A3, A4, A5, K, D, B4, B5, L1, L2, KR1 };

std::string to_string(Rule r);

// A closed derivation tree. Each node concludes (formula, window); premises
// carry the same window except under KR1, whose premise window shrinks by the
// timestamp delta it crosses.
struct Proof {
  Rule rule;
  Formula conclusion;
  Window window;
  std::vector<Proof> premises;
};

enum class FailureReason { None, NotDerivable, DepthExhausted };

struct DeriveResult {
  bool proved = false;
  std::optional<Proof> proof;
  FailureReason reason = FailureReason::None;
  std::size_t visited = 0;  // distinct (goal, window) pairs explored

  explicit operator bool() const { return proved; }
};

struct EngineOptions {
  int max_depth = 64;
};

struct EngineError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Backward-chaining search for a timed derivation of (goal, w) from gamma.
//
// Rule application, by goal shape: Premise anywhere; A1 on modality-free
// propositional tautologies; D on !B[t,i] false; A4/A5/L2/A2/KR1 on K-rooted
// goals; L1/B4/B5/K on B-rooted goals; A3 on any goal whose shape some agent
// knows in gamma (every derivable K-formula is anchored there, so other wraps
// cannot succeed). Modus-ponens premises (A2/K) come from implications
// present in gamma; the search never invents an implication. Results are
// memoized per (goal, window); failures are cached only when they did not
// depend on a cycle cut or the depth bound.
DeriveResult derive(const std::vector<Formula>& gamma, const Formula& goal, Window w,
                    const EngineOptions& opts = {});

// Truth-table check over opaque atoms. The formula must be ground and free of
// modalities and quantifiers; atoms are predicates, connections, actions,
// occurrences and folded comparisons.
bool is_tautology(const Formula& f);

// Whether candidate can join gamma without B[t,agent] false becoming
// derivable within the bound. On top of gamma and the candidate, the check
// seeds the bridge implications that let the K rule surface conflicts:
// pairwise contradictions between recorded knowledge/belief bodies, and
// exclusivity of functional predicates (one value per key per instant).
// Depth exhaustion counts as consistent.
bool consistent(const std::vector<Formula>& gamma, const Formula& candidate, Timestamp t,
                const std::string& agent, Window w, const std::set<std::string>& functional_preds,
                const EngineOptions& opts = {});

// Independent validator: re-checks every node of a proof against the rule
// schemas and gamma. Used by tests; derive() results must always pass.
bool check_proof(const std::vector<Formula>& gamma, const Proof& p, std::string* why = nullptr);

std::string proof_to_text(const Proof& p);
nlohmann::json proof_to_json(const Proof& p);

}  // namespace tekl

#endif
