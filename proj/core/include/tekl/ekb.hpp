#ifndef TEKL_EKB_HPP
#define TEKL_EKB_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "tekl/formula.hpp"
#include "tekl/time.hpp"

namespace tekl {

class Trace;

struct EkbError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Whether f has the self-aware shape K[t,agent] f' required of every entry of
// agent's knowledge base at step t.
bool is_self_aware(const Formula& f, const std::string& agent, Timestamp t);

// One agent's extended knowledge base at one trace step. Entries are ground,
// K-rooted formulas; the belief log keeps the occ(enter(..)) records, which
// are the one kind of member that is not K-rooted. Insertion order is
// preserved (belief propagation ties break on it) but equality is on sets.
class EkbStore {
 public:
  // Throws EkbError unless f is ground, quantifier-free and self-aware for
  // (agent, t). Duplicates are ignored.
  void add_entry(Formula f, const std::string& agent, Timestamp t);

  // Record an occ[t](enter(..)) atom.
  void add_occurrence(Formula occ);

  const std::vector<Formula>& entries() const { return entries_; }
  const std::vector<Formula>& belief_log() const { return belief_log_; }

  // Entries followed by the belief log, in insertion order.
  std::vector<Formula> all() const;

  bool empty() const { return entries_.empty() && belief_log_.empty(); }

  // Same store with every member rewritten; layout and order are kept.
  EkbStore transformed(const std::function<Formula(const Formula&)>& fn) const;

  bool operator==(const EkbStore& o) const;

 private:
  std::vector<Formula> entries_;
  std::vector<Formula> belief_log_;
};

// Expands forall-time over the trace's timestamp set and forall-domain over
// the named domain at the (already literal) step, outer binders first, and
// pushes K/B modalities through the conjunctions this creates. The result is
// quantifier-free; its node count stays within |f| * d^q where d bounds the
// domain sizes involved and q is the quantifier nesting depth.
Formula unfold_quantifiers(const Formula& f, const Trace& trace);

// Splits an unfolded formula into knowledge-base entries: top-level
// conjunctions become separate entries.
std::vector<Formula> split_entries(const Formula& f);

// Union of agent's entries and belief log over all steps with lo <= t <= hi.
std::vector<Formula> ekb_union(const Trace& trace, const std::string& agent, Timestamp lo,
                               Timestamp hi);

}  // namespace tekl

#endif
