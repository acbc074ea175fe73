#ifndef TEKL_TRACE_IO_HPP
#define TEKL_TRACE_IO_HPP

#include <stdexcept>
#include <string>

#include "tekl/snm.hpp"
#include "tekl/time.hpp"

namespace tekl {

struct TraceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TraceLoadOptions {
  // Omega and beta drive the belief propagation run for enter events during
  // load; proof_depth bounds its consistency checks.
  FrameworkParams params;
  // Lenient mode keeps order violations as data (validate_trace reports
  // them); strict mode rejects the document.
  bool lenient = false;
};

// Trace document format:
//
//   { "semantics": "snapchat" | "facebook-lite" | null,
//     "functional_predicates": ["loc", ...],
//     "time_labels": {"20:00": 1200, ...},           // optional
//     "steps": [ { "time": int | "<label>",
//                  "events": ["name(arg,...)" | "enter(agent, '<belief>')"],
//                  "agents": [...], "environment": "<agent id>",
//                  "connections": {"friendship": [["a","b"], ...]},
//                  "permissions": {"friendRequest": [["a","c"], ...]},
//                  "domains": {"Locs": [...], ...},
//                  "ekbs": {"a": ["<formula>", ...]},
//                  "env_facts": ["<ground predicate>", ...],
//                  "policies": {"a": ["<policy text>", ...]} }, ... ] }
//
// Knowledge-base entries must be K[t,agent]-rooted for their step; their
// quantifiers are unfolded at load. Belief-enter events run belief
// propagation (per params) step by step; the decisions land in the trace's
// replay log. The agent set doubles as the "Ag" domain, and agents referenced
// by true environment facts are added to it with a warning.
Trace load_trace(const std::string& json_text, const TraceLoadOptions& opts = {});
Trace load_trace_file(const std::string& path, const TraceLoadOptions& opts = {});

}  // namespace tekl

#endif
