#ifndef TEKL_PARSER_HPP
#define TEKL_PARSER_HPP

#include <cstdint>
#include <map>
#include <string>

#include "tekl/formula.hpp"
#include "tekl/macro.hpp"
#include "tekl/policy.hpp"
#include "tekl/span.hpp"

namespace tekl {

struct ParseOptions {
  // Maps human time labels ("20:00") to ticks; labels are input sugar only,
  // printing always uses ticks.
  const std::map<std::string, std::uint64_t>* time_labels = nullptr;
};

// Parses the formula surface syntax:
//
//   formula := 'K' '[' time ',' agent ']' formula
//            | 'B' '[' time ',' agent ']' formula
//            | 'S' '[' time ',' '{' agents '}' ']' formula
//            | 'E' '[' time ',' '{' agents '}' ']' formula
//            | 'L'|'AC'|'F'|'RJ' '[' time ',' agent ']' formula
//            | 'P' '[' time ',' agent ',' agent ']' IDENT
//            | 'forall' IDENT '.' formula
//            | 'forall' IDENT ':' IDENT '[' time ']' '.' formula
//            | 'exists' ... (dual) | 'box' IDENT '.' formula | 'diamond' ...
//            | formula '&&' formula | formula '=>' formula
//            | '!' formula | '(' formula ')' | atom | 'false'
//   atom    := IDENT '[' time ']' '(' args ')'
//            | 'occ' '[' time ']' '(' event ')'
//            | time ('<'|'<='|'>'|'>='|'=='|'!=') time [chain]
//   time    := INT | LABEL | IDENT (bound variable)
//
// Modalities and quantifiers extend to the right; '&&' binds tighter than
// '=>'. The result is macro-expanded except for L/AC/F/RJ, which wait for a
// trace's timestamp set.
Formula parse_formula(const std::string& text, const ParseOptions& opts = {});

// Policy surface syntax (quantifiers outside or around blocks):
//
//   delta := 'forall' binder '.' delta | block | delta '&&' delta
//   block := 'policy' '[' owner ',' start ']' '{' [guard '=>'] 'deny' alpha '}'
//
// The alpha layer admits conjunction, forall/exists, atoms and K/B
// modalities; negation may only appear under a modality, and 'exists' may
// not appear inside one.
Policy parse_policy(const std::string& text, const ParseOptions& opts = {});

// One trace event: IDENT '(' args ')' or enter(agent, '<belief formula>').
Event parse_event(const std::string& text, const ParseOptions& opts = {});

}  // namespace tekl

#endif
