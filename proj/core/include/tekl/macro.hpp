#ifndef TEKL_MACRO_HPP
#define TEKL_MACRO_HPP

#include <optional>
#include <stdexcept>

#include "tekl/formula.hpp"
#include "tekl/time.hpp"

namespace tekl {

struct MacroError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rewrites the derived operators into the core grammar:
//   S[t,G] f   ->  disjunction over K[t,i] f  (encoded with ! and &&)
//   E[t,G] f   ->  conjunction over K[t,i] f
//   L[t,i] f   ->  !K[pred(t),i] f && K[t,i] f
//   AC[t,i] f  ->  !B[pred(t),i] f && B[t,i] f
//   F[t,i] f   ->  K[pred(t),i] f && !K[t,i] f
//   RJ[t,i] f  ->  B[pred(t),i] f && !B[t,i] f
//
// The learn/accept/forget/reject group needs pred over a trace's timestamp
// set; without `ts` those operators are left in place (they expand once a
// trace is bound). Expansion is idempotent on already-core formulas.
Formula expand_macros(const Formula& f, const TimestampSet* ts = nullptr);

}  // namespace tekl

#endif
