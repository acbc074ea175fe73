// Command-line front end: load traces, validate well-formedness, evaluate
// formulas, check policies, replay belief propagation.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tekl/checker.hpp"
#include "tekl/ekb.hpp"
#include "tekl/parser.hpp"
#include "tekl/semantics.hpp"
#include "tekl/trace_io.hpp"
#include "tekl/validate.hpp"

namespace {

using namespace tekl;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;     // parse / IO problems
constexpr int kExitSemantic = 2;  // violation / not derivable / not well-formed

struct CommonArgs {
  std::string trace_path;
  std::string omega = "inf";
  std::string beta = "conservative";
  int depth = 64;
  bool strict_history = false;
  bool respect_start = false;
  bool show_proof = false;
  bool explain_beliefs = false;
  bool json_output = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("trace", args.trace_path, "trace document (JSON)")->required();
  cmd->add_option("--omega", args.omega, "memory window in ticks, or 'inf'");
  cmd->add_option("--beta", args.beta, "belief conflict policy")
      ->check(CLI::IsMember({"conservative", "susceptible"}));
  cmd->add_option("--depth", args.depth, "proof search depth bound")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--strict-history", args.strict_history,
                "K/B queries read strictly earlier knowledge bases only");
  cmd->add_flag("--respect-start", args.respect_start,
                "clamp policy time quantifiers to the policy start");
  cmd->add_flag("--show-proof", args.show_proof, "print derivations for positive verdicts");
  cmd->add_flag("--explain-beliefs", args.explain_beliefs,
                "print the belief propagation decisions made while loading");
  cmd->add_flag("--json", args.json_output, "machine-readable output");
}

FrameworkParams params_from(const CommonArgs& args) {
  FrameworkParams p;
  if (args.omega == "inf") {
    p.omega = Window::infinite();
  } else {
    try {
      p.omega = Window(std::stoull(args.omega));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--omega", "expected a non-negative integer or 'inf'");
    }
  }
  p.beta = args.beta == "susceptible" ? BeliefPolicy::Susceptible : BeliefPolicy::Conservative;
  p.proof_depth = args.depth;
  p.strict_history = args.strict_history;
  p.respect_start = args.respect_start;
  return p;
}

Trace load(const CommonArgs& args, bool lenient) {
  TraceLoadOptions opts;
  opts.params = params_from(args);
  opts.lenient = lenient;
  return load_trace_file(args.trace_path, opts);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TraceError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void print_replay(const Trace& trace, bool json_output) {
  if (json_output) {
    nlohmann::json items = nlohmann::json::array();
    for (const BeliefReplayItem& it : trace.belief_replay)
      items.push_back({{"at", it.at.ticks},
                       {"agent", it.agent},
                       {"candidate", it.candidate.to_string()},
                       {"origin", it.origin.ticks},
                       {"admitted", it.admitted},
                       {"note", it.note}});
    std::cout << items.dump(2) << "\n";
    return;
  }
  if (trace.belief_replay.empty()) {
    std::cout << "no belief-enter events in this trace\n";
    return;
  }
  for (const BeliefReplayItem& it : trace.belief_replay)
    std::cout << "t=" << it.at.ticks << " " << it.agent << " "
              << (it.admitted ? "admitted" : "rejected") << " " << it.candidate.to_string()
              << " (told at " << it.origin.ticks << "; " << it.note << ")\n";
}

void print_warnings(const Trace& trace) {
  for (const std::string& w : trace.warnings) std::cerr << "warning: " << w << "\n";
}

int run_validate(const CommonArgs& args) {
  Trace trace = load(args, /*lenient=*/true);
  print_warnings(trace);
  std::unique_ptr<OsnSemantics> sem;
  if (!trace.semantics_name.empty()) sem = make_semantics(trace.semantics_name);
  WellFormedReport report = validate_trace(trace, sem.get(), params_from(args));

  if (args.json_output) {
    nlohmann::json j;
    j["ordered_timestamps"] = to_string(report.ordered);
    j["transition_accounting"] = to_string(report.accounted);
    j["event_independence"] = to_string(report.independent);
    j["well_formed"] = report.well_formed();
    j["notes"] = report.notes;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "ordered timestamps:     " << to_string(report.ordered) << "\n";
    std::cout << "transition accounting:  " << to_string(report.accounted) << "\n";
    std::cout << "event independence:     " << to_string(report.independent) << "\n";
    for (const std::string& n : report.notes) std::cout << "  - " << n << "\n";
    std::cout << (report.well_formed() ? "trace is well-formed" : "trace is NOT well-formed")
              << "\n";
  }
  if (args.explain_beliefs) print_replay(trace, args.json_output);
  return report.well_formed() ? kExitOk : kExitSemantic;
}

int run_check(const CommonArgs& args, const std::string& formula_text,
              const std::string& formulas_file) {
  Trace trace = load(args, /*lenient=*/false);
  print_warnings(trace);
  if (args.explain_beliefs) print_replay(trace, args.json_output);

  std::vector<std::string> texts;
  if (!formula_text.empty()) texts.push_back(formula_text);
  if (!formulas_file.empty()) {
    std::istringstream in(read_file(formulas_file));
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      texts.push_back(line);
    }
  }
  if (texts.empty()) throw TraceError("nothing to check: give --formula or --formulas-file");

  ParseOptions popts;
  popts.time_labels = &trace.time_labels;
  Checker checker(trace, params_from(args));

  bool all_hold = true;
  nlohmann::json results = nlohmann::json::array();
  for (const std::string& text : texts) {
    Formula f = parse_formula(text, popts);
    Verdict v = checker.satisfies(f);
    all_hold = all_hold && v.holds;
    if (args.json_output) {
      nlohmann::json one = v.to_json();
      if (!args.show_proof) one.erase("proof");
      one["formula"] = text;
      results.push_back(one);
    } else {
      std::cout << text << "\n  => " << (v.holds ? "holds" : "fails");
      if (v.witness) {
        std::cout << "  (witness:";
        for (const auto& [var, val] : v.witness->bindings) std::cout << " " << var << "=" << val;
        std::cout << ")";
      }
      std::cout << "\n";
      if (args.show_proof && v.proof) std::cout << proof_to_text(*v.proof);
    }
  }
  if (args.json_output) std::cout << results.dump(2) << "\n";
  return all_hold ? kExitOk : kExitSemantic;
}

int run_policy(const CommonArgs& args, const std::string& policy_text,
               const std::string& policy_file) {
  Trace trace = load(args, /*lenient=*/false);
  print_warnings(trace);
  if (args.explain_beliefs) print_replay(trace, args.json_output);

  std::string text = policy_text;
  if (text.empty() && !policy_file.empty()) text = read_file(policy_file);
  if (text.empty()) throw TraceError("nothing to check: give --policy or --policy-file");

  ParseOptions popts;
  popts.time_labels = &trace.time_labels;
  Policy policy = parse_policy(text, popts);
  if (!trace.all_agents().count(policy.first_owner()))
    std::cerr << "warning: policy owner '" << policy.first_owner()
              << "' is not an agent of this trace\n";

  Checker checker(trace, params_from(args));
  Verdict v = checker.conforms(policy);

  if (args.json_output) {
    nlohmann::json j = v.to_json();
    j["conforms"] = v.holds;
    std::cout << j.dump(2) << "\n";
  } else if (v.holds) {
    std::cout << "policy conforms\n";
  } else {
    std::cout << "policy violated";
    if (v.witness) {
      std::cout << " at";
      for (const auto& [var, val] : v.witness->bindings) std::cout << " " << var << "=" << val;
    }
    std::cout << "\n";
  }
  return v.holds ? kExitOk : kExitSemantic;
}

int run_derive(const CommonArgs& args, const std::string& agent, const std::string& at,
               const std::string& goal_text) {
  Trace trace = load(args, /*lenient=*/false);
  print_warnings(trace);
  if (args.explain_beliefs) print_replay(trace, args.json_output);

  ParseOptions popts;
  popts.time_labels = &trace.time_labels;

  Timestamp t;
  if (trace.time_labels.count(at))
    t = Timestamp(trace.time_labels.at(at));
  else
    t = Timestamp(std::stoull(at));

  if (!trace.all_agents().count(agent)) throw TraceError("unknown agent " + agent);
  FrameworkParams params = params_from(args);

  Formula prepared = classify_atoms(
      unfold_quantifiers(parse_formula(goal_text, popts), trace), trace);
  std::vector<Formula> gamma =
      ekb_union(trace, agent, trace.timestamps().min(), t);

  EngineOptions eng;
  eng.max_depth = params.proof_depth;

  // Unfolding a quantified goal leaves a conjunction; there is no rule that
  // conjoins, so each conjunct is derived on its own.
  bool all_proved = true;
  bool depth_hit = false;
  std::vector<Proof> proofs;
  for (const Formula& goal : split_entries(prepared)) {
    DeriveResult r = derive(gamma, goal, params.omega, eng);
    all_proved = all_proved && r.proved;
    depth_hit = depth_hit || r.reason == FailureReason::DepthExhausted;
    if (r.proved) proofs.push_back(std::move(*r.proof));
  }

  if (args.json_output) {
    nlohmann::json j;
    j["derivable"] = all_proved;
    if (!all_proved) j["reason"] = depth_hit ? "depth exhausted" : "not derivable";
    if (all_proved && args.show_proof) {
      j["proof"] = nlohmann::json::array();
      for (const Proof& p : proofs) j["proof"].push_back(proof_to_json(p));
    }
    std::cout << j.dump(2) << "\n";
  } else if (all_proved) {
    std::cout << "derivable within window " << to_string(params.omega) << "\n";
    if (args.show_proof)
      for (const Proof& p : proofs) std::cout << proof_to_text(p);
  } else {
    std::cout << (depth_hit ? "search depth exhausted" : "not derivable") << "\n";
  }
  return all_proved ? kExitOk : kExitSemantic;
}

int run_replay(const CommonArgs& args) {
  Trace trace = load(args, /*lenient=*/false);
  print_warnings(trace);
  print_replay(trace, args.json_output);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"timed epistemic knowledge logic checker"};
  app.require_subcommand(1);

  CommonArgs validate_args, check_args, policy_args, derive_args, replay_args;
  std::string formula_text, formulas_file, policy_text, policy_file;
  std::string derive_agent, derive_at, derive_goal;

  CLI::App* cmd_validate = app.add_subcommand("validate", "check trace well-formedness");
  add_common(cmd_validate, validate_args);

  CLI::App* cmd_check = app.add_subcommand("check", "evaluate a formula over a trace");
  add_common(cmd_check, check_args);
  cmd_check->add_option("--formula", formula_text, "formula text");
  cmd_check->add_option("--formulas-file", formulas_file, "file with one formula per line");

  CLI::App* cmd_policy = app.add_subcommand("policy", "check policy conformance");
  add_common(cmd_policy, policy_args);
  cmd_policy->add_option("--policy", policy_text, "policy text");
  cmd_policy->add_option("--policy-file", policy_file, "file with the policy");

  CLI::App* cmd_derive = app.add_subcommand("derive", "derive a goal from an agent's knowledge");
  add_common(cmd_derive, derive_args);
  cmd_derive->add_option("--agent", derive_agent, "agent whose knowledge bases are used")
      ->required();
  cmd_derive->add_option("--at", derive_at, "query timestamp (tick or label)")->required();
  cmd_derive->add_option("--goal", derive_goal, "goal formula")->required();

  CLI::App* cmd_replay = app.add_subcommand("replay-beliefs", "belief propagation report");
  add_common(cmd_replay, replay_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_validate->parsed()) return run_validate(validate_args);
    if (cmd_check->parsed()) return run_check(check_args, formula_text, formulas_file);
    if (cmd_policy->parsed()) return run_policy(policy_args, policy_text, policy_file);
    if (cmd_derive->parsed()) return run_derive(derive_args, derive_agent, derive_at, derive_goal);
    if (cmd_replay->parsed()) return run_replay(replay_args);
  } catch (const ParseError& ex) {
    std::cerr << "parse error at " << ex.span().to_string() << ": " << ex.message() << "\n";
    return kExitError;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
