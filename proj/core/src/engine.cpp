#include "tekl/engine.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace tekl {

std::string to_string(Rule r) {
  switch (r) {
    case Rule::Premise: return "Premise";
    case Rule::A1: return "A1";
    case Rule::A2: return "A2";
    case Rule::A3: return "A3";
    case Rule::A4: return "A4";
    case Rule::A5: return "A5";
    case Rule::K: return "K";
    case Rule::D: return "D";
    case Rule::B4: return "B4";
    case Rule::B5: return "B5";
    case Rule::L1: return "L1";
    case Rule::L2: return "L2";
    case Rule::KR1: return "KR1";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Tautology oracle

namespace {

void collect_atoms(const Formula& f, std::vector<Formula>& atoms) {
  switch (f.kind()) {
    case FormulaKind::False:
      return;
    case FormulaKind::Not:
      collect_atoms(f.child(), atoms);
      return;
    case FormulaKind::And:
      collect_atoms(f.lhs(), atoms);
      collect_atoms(f.rhs(), atoms);
      return;
    case FormulaKind::Atom:
    case FormulaKind::Occurrence:
    case FormulaKind::TimeCompare:
      if (std::find(atoms.begin(), atoms.end(), f) == atoms.end()) atoms.push_back(f);
      return;
    default:
      throw EngineError("tautology check on a non-propositional formula: " + f.to_string());
  }
}

bool eval_prop(const Formula& f, const std::vector<Formula>& atoms, std::uint64_t assignment) {
  switch (f.kind()) {
    case FormulaKind::False:
      return false;
    case FormulaKind::Not:
      return !eval_prop(f.child(), atoms, assignment);
    case FormulaKind::And:
      return eval_prop(f.lhs(), atoms, assignment) && eval_prop(f.rhs(), atoms, assignment);
    default: {
      auto it = std::find(atoms.begin(), atoms.end(), f);
      std::size_t idx = static_cast<std::size_t>(it - atoms.begin());
      return (assignment >> idx) & 1;
    }
  }
}

}  // namespace

bool is_tautology(const Formula& f) {
  std::vector<Formula> atoms;
  collect_atoms(f, atoms);
  if (atoms.size() > 20) throw EngineError("tautology check over too many distinct atoms");
  std::uint64_t count = std::uint64_t(1) << atoms.size();
  for (std::uint64_t a = 0; a < count; ++a)
    if (!eval_prop(f, atoms, a)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Backward-chaining prover

namespace {

struct MemoKey {
  Formula goal;
  std::uint64_t window;

  bool operator==(const MemoKey& o) const { return window == o.window && goal.equals(o.goal); }
};

struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const {
    return k.goal.hash() * 1000003u ^ k.window;
  }
};

struct SearchResult {
  std::optional<Proof> proof;
  bool dirty = false;  // failed only because of a cycle cut or the depth bound
};

class Prover {
 public:
  Prover(const std::vector<Formula>& gamma, const Formula& root, const EngineOptions& opts)
      : opts_(opts) {
    std::size_t max_nodes = root.size();
    for (const Formula& f : gamma) {
      premises_.insert(f);
      max_nodes = std::max(max_nodes, f.size());
      harvest(f);
    }
    harvest(root);
    std::sort(times_.begin(), times_.end());
    times_.erase(std::unique(times_.begin(), times_.end()), times_.end());
    // A3 is the only rule that grows goals; give it a little headroom and no
    // more, so that memoization keeps the goal space finite.
    max_goal_nodes_ = max_nodes + 3;
    close_known_shapes();
  }

  DeriveResult run(const Formula& goal, Window w) {
    SearchResult r = prove(goal, w, opts_.max_depth);
    DeriveResult out;
    out.visited = visited_;
    if (r.proof) {
      out.proved = true;
      out.proof = std::move(r.proof);
    } else {
      out.reason = depth_hit_ ? FailureReason::DepthExhausted : FailureReason::NotDerivable;
    }
    return out;
  }

 private:
  void harvest(const Formula& f) {
    f.for_each([&](const Formula& g) {
      switch (g.kind()) {
        case FormulaKind::Knows:
        case FormulaKind::Believes:
          if (g.time().is_literal()) times_.push_back(g.time().value());
          if (!g.agent().has_variable() &&
              std::find(agents_.begin(), agents_.end(), g.agent()) == agents_.end())
            agents_.push_back(g.agent());
          break;
        case FormulaKind::Atom:
        case FormulaKind::Occurrence:
          if (g.time().is_literal()) times_.push_back(g.time().value());
          break;
        default:
          break;
      }
      if (g.kind() == FormulaKind::Knows && !g.agent().has_variable())
        known_shapes_.push_back({g.agent(), g.body()});
      if (auto imp = g.as_implication()) impls_.push_back({imp->first, imp->second, g});
    });
  }

  // Derivable knowledge is anchored in gamma: every provable K[t,i] phi has
  // phi matching either the body of some K-subformula of gamma (retimed at
  // will by KR1) or, through A2, the consequent chain of an implication known
  // there. A3 only proposes wraps from this set.
  void close_known_shapes() {
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::pair<Term, Formula>> more;
      for (const auto& [agent, body] : known_shapes_)
        if (auto imp = body.as_implication())
          more.push_back({agent, imp->second});
      for (auto& shape : more)
        if (!knows_shape(shape.first, shape.second)) {
          known_shapes_.push_back(std::move(shape));
          grew = true;
        }
    }
  }

  bool knows_shape(const Term& agent, const Formula& body) const {
    for (const auto& [a, b] : known_shapes_)
      if (a == agent && b.equals(body)) return true;
    return false;
  }

  struct Impl {
    Formula antecedent;
    Formula consequent;
    Formula whole;
  };

  SearchResult prove(const Formula& goal, Window w, int depth) {
    MemoKey key{goal, w.key()};
    auto it = memo_.find(key);
    if (it != memo_.end()) {
      if (it->second.state == Memo::Proved) return {it->second.proof, false};
      if (it->second.state == Memo::Failed) return {std::nullopt, false};
      return {std::nullopt, true};  // on the current stack: cycle cut
    }
    if (depth <= 0) {
      depth_hit_ = true;
      return {std::nullopt, true};
    }
    ++visited_;
    memo_[key] = {Memo::InProgress, std::nullopt};

    SearchResult r = attempt(goal, w, depth);
    if (r.proof) {
      memo_[key] = {Memo::Proved, r.proof};
    } else if (!r.dirty) {
      memo_[key] = {Memo::Failed, std::nullopt};
    } else {
      memo_.erase(key);  // unknown: do not cache a failure that hinged on the stack
    }
    return r;
  }

  SearchResult attempt(const Formula& goal, Window w, int depth) {
    bool dirty = false;

    // Premise
    if (premises_.count(goal)) return {Proof{Rule::Premise, goal, w, {}}, false};

    // D: !B[t,i] false
    if (goal.kind() == FormulaKind::Not) {
      Formula inner = goal.child();
      if (inner.kind() == FormulaKind::Believes && inner.body().is_false())
        return {Proof{Rule::D, goal, w, {}}, false};
    }

    // A1: propositional tautologies over ground atoms
    if (!goal.contains_modality() && !goal.contains_quantifier() && goal.is_ground()) {
      if (is_tautology(goal)) return {Proof{Rule::A1, goal, w, {}}, false};
    }

    if (goal.kind() == FormulaKind::Knows) {
      if (try_knowledge_rules(goal, w, depth, dirty)) return {pending_, dirty};
    } else if (goal.kind() == FormulaKind::Believes) {
      if (try_belief_rules(goal, w, depth, dirty)) return {pending_, dirty};
    }

    // A3: phi follows from K[t,i] phi, for agents that know this shape.
    if (goal.size() + 1 <= max_goal_nodes_) {
      for (const Term& agent : agents_) {
        if (!knows_shape(agent, goal)) continue;
        for (Timestamp t : times_) {
          Formula wrapped = Formula::knows(TimeExpr::literal(t), agent, goal);
          if (wrapped.equals(goal)) continue;
          SearchResult sub = prove(wrapped, w, depth - 1);
          dirty |= sub.dirty;
          if (sub.proof)
            return {Proof{Rule::A3, goal, w, {std::move(*sub.proof)}}, dirty};
        }
      }
    }

    return {std::nullopt, dirty};
  }

  // The next two helpers stash a found proof in pending_ and return true, so
  // attempt() can keep one exit path.
  bool try_knowledge_rules(const Formula& goal, Window w, int depth, bool& dirty) {
    const TimeExpr& t = goal.time();
    const Term& agent = goal.agent();
    Formula body = goal.body();

    // A4: K phi |- K K phi
    if (body.kind() == FormulaKind::Knows && body.time() == t && body.agent() == agent) {
      SearchResult sub = prove(body, w, depth - 1);
      dirty |= sub.dirty;
      if (sub.proof) {
        pending_ = Proof{Rule::A4, goal, w, {std::move(*sub.proof)}};
        return true;
      }
    }
    // A5: !K phi |- K !K phi
    if (body.kind() == FormulaKind::Not) {
      Formula neg = body.child();
      if (neg.kind() == FormulaKind::Knows && neg.time() == t && neg.agent() == agent) {
        SearchResult sub = prove(body, w, depth - 1);
        dirty |= sub.dirty;
        if (sub.proof) {
          pending_ = Proof{Rule::A5, goal, w, {std::move(*sub.proof)}};
          return true;
        }
      }
    }
    // L2: B phi |- K B phi
    if (body.kind() == FormulaKind::Believes && body.time() == t && body.agent() == agent) {
      SearchResult sub = prove(body, w, depth - 1);
      dirty |= sub.dirty;
      if (sub.proof) {
        pending_ = Proof{Rule::L2, goal, w, {std::move(*sub.proof)}};
        return true;
      }
    }
    // A2: K phi and K (phi => psi) |- K psi
    if (modus_ponens(goal, body, w, depth, dirty, /*knowledge=*/true)) return true;

    // KR1: K[t0,i] phi at w - (t - t0) |- K[t,i] phi at w
    if (t.is_literal()) {
      for (Timestamp t0 : times_) {
        if (t0 >= t.value()) continue;
        std::uint64_t delta = t.value().ticks - t0.ticks;
        if (!w.covers(delta)) continue;
        Formula earlier = Formula::knows(TimeExpr::literal(t0), agent, body);
        SearchResult sub = prove(earlier, w.consume(delta), depth - 1);
        dirty |= sub.dirty;
        if (sub.proof) {
          pending_ = Proof{Rule::KR1, goal, w, {std::move(*sub.proof)}};
          return true;
        }
      }
    }
    return false;
  }

  bool try_belief_rules(const Formula& goal, Window w, int depth, bool& dirty) {
    const TimeExpr& t = goal.time();
    const Term& agent = goal.agent();
    Formula body = goal.body();

    // L1: K phi |- B phi
    {
      SearchResult sub = prove(Formula::knows(t, agent, body), w, depth - 1);
      dirty |= sub.dirty;
      if (sub.proof) {
        pending_ = Proof{Rule::L1, goal, w, {std::move(*sub.proof)}};
        return true;
      }
    }
    // B4: B phi |- B B phi
    if (body.kind() == FormulaKind::Believes && body.time() == t && body.agent() == agent) {
      SearchResult sub = prove(body, w, depth - 1);
      dirty |= sub.dirty;
      if (sub.proof) {
        pending_ = Proof{Rule::B4, goal, w, {std::move(*sub.proof)}};
        return true;
      }
    }
    // B5: !B phi |- B !B phi
    if (body.kind() == FormulaKind::Not) {
      Formula neg = body.child();
      if (neg.kind() == FormulaKind::Believes && neg.time() == t && neg.agent() == agent) {
        SearchResult sub = prove(body, w, depth - 1);
        dirty |= sub.dirty;
        if (sub.proof) {
          pending_ = Proof{Rule::B5, goal, w, {std::move(*sub.proof)}};
          return true;
        }
      }
    }
    // K: B phi and B (phi => psi) |- B psi
    if (modus_ponens(goal, body, w, depth, dirty, /*knowledge=*/false)) return true;
    return false;
  }

  bool modus_ponens(const Formula& goal, const Formula& body, Window w, int depth, bool& dirty,
                    bool knowledge) {
    const TimeExpr& t = goal.time();
    const Term& agent = goal.agent();
    for (const Impl& imp : impls_) {
      if (!imp.consequent.equals(body)) continue;
      auto wrap = [&](const Formula& f) {
        return knowledge ? Formula::knows(t, agent, f) : Formula::believes(t, agent, f);
      };
      SearchResult imp_sub = prove(wrap(imp.whole), w, depth - 1);
      dirty |= imp_sub.dirty;
      if (!imp_sub.proof) continue;
      SearchResult ant_sub = prove(wrap(imp.antecedent), w, depth - 1);
      dirty |= ant_sub.dirty;
      if (!ant_sub.proof) continue;
      pending_ = Proof{knowledge ? Rule::A2 : Rule::K,
                       goal,
                       w,
                       {std::move(*ant_sub.proof), std::move(*imp_sub.proof)}};
      return true;
    }
    return false;
  }

  enum class Memo { InProgress, Proved, Failed };
  struct MemoEntry {
    Memo state;
    std::optional<Proof> proof;
  };

  EngineOptions opts_;
  std::unordered_set<Formula, Formula::Hash> premises_;
  std::vector<Impl> impls_;
  std::vector<std::pair<Term, Formula>> known_shapes_;
  std::vector<Timestamp> times_;
  std::vector<Term> agents_;
  std::unordered_map<MemoKey, MemoEntry, MemoKeyHash> memo_;
  std::size_t max_goal_nodes_ = 0;
  std::size_t visited_ = 0;
  bool depth_hit_ = false;
  Proof pending_{Rule::Premise, Formula::false_formula(), Window(0), {}};
};

}  // namespace

DeriveResult derive(const std::vector<Formula>& gamma, const Formula& goal, Window w,
                    const EngineOptions& opts) {
  for (const Formula& f : gamma)
    if (f.contains_quantifier() || !f.is_ground())
      throw EngineError("premises must be ground and quantifier-free: " + f.to_string());
  if (goal.contains_quantifier() || !goal.is_ground())
    throw EngineError("goal must be ground and quantifier-free: " + goal.to_string());
  Prover p(gamma, goal, opts);
  return p.run(goal, w);
}

// ---------------------------------------------------------------------------
// Consistency with bridge seeding

namespace {

// Innermost non-modal bodies reachable through modal spines; these are the
// statements an agent effectively knows or believes.
void collect_bodies(const Formula& f, std::vector<Formula>& out) {
  switch (f.kind()) {
    case FormulaKind::Knows:
    case FormulaKind::Believes:
      if (f.body().kind() == FormulaKind::Knows || f.body().kind() == FormulaKind::Believes)
        collect_bodies(f.body(), out);
      else if (std::find(out.begin(), out.end(), f.body()) == out.end())
        out.push_back(f.body());
      return;
    case FormulaKind::Not:
      collect_bodies(f.child(), out);
      return;
    case FormulaKind::And:
      collect_bodies(f.lhs(), out);
      collect_bodies(f.rhs(), out);
      return;
    default:
      return;
  }
}

void collect_functional_atoms(const Formula& f, const std::set<std::string>& names,
                              std::vector<Formula>& out) {
  f.for_each([&](const Formula& g) {
    if (g.kind() == FormulaKind::Atom && g.atom_kind() == AtomKind::Predicate &&
        names.count(g.name()) && g.is_ground() && !g.args().empty())
      if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  });
}

}  // namespace

bool consistent(const std::vector<Formula>& gamma, const Formula& candidate, Timestamp t,
                const std::string& agent, Window w, const std::set<std::string>& functional_preds,
                const EngineOptions& opts) {
  std::vector<Formula> all = gamma;
  all.push_back(candidate);

  std::vector<Formula> bodies;
  std::vector<Formula> fatoms;
  for (const Formula& f : all) {
    collect_bodies(f, bodies);
    collect_functional_atoms(f, functional_preds, fatoms);
  }

  TimeExpr at = TimeExpr::literal(t);
  Term who = Term::constant(agent);
  auto seed = [&](const Formula& x, const Formula& y) {
    all.push_back(Formula::believes(
        at, who, Formula::implies(x, Formula::implies(y, Formula::false_formula()))));
  };

  // chi against !chi
  for (std::size_t i = 0; i < bodies.size(); ++i)
    for (std::size_t j = 0; j < bodies.size(); ++j) {
      if (i == j) continue;
      if (bodies[j].kind() == FormulaKind::Not && bodies[j].child().equals(bodies[i]))
        seed(bodies[i], bodies[j]);
    }

  // one value per key tuple per instant for functional predicates
  for (std::size_t i = 0; i < fatoms.size(); ++i)
    for (std::size_t j = 0; j < fatoms.size(); ++j) {
      if (i == j) continue;
      const Formula& a = fatoms[i];
      const Formula& b = fatoms[j];
      if (a.name() != b.name() || !(a.time() == b.time())) continue;
      if (a.args().size() != b.args().size()) continue;
      bool same_key = true;
      for (std::size_t k = 0; k + 1 < a.args().size(); ++k)
        if (!(a.args()[k] == b.args()[k])) same_key = false;
      if (!same_key || a.args().back() == b.args().back()) continue;
      seed(a, b);
    }

  Formula goal = Formula::believes(at, who, Formula::false_formula());
  DeriveResult r = derive(all, goal, w, opts);
  if (r.proved) return false;
  return true;  // includes depth exhaustion, which counts as consistent
}

// ---------------------------------------------------------------------------
// Proof checking and serialization

namespace {

bool fail_with(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

}  // namespace

bool check_proof(const std::vector<Formula>& gamma, const Proof& p, std::string* why) {
  for (const Proof& child : p.premises)
    if (!check_proof(gamma, child, why)) return false;

  auto expect_premises = [&](std::size_t n) { return p.premises.size() == n; };
  auto same_window = [&](const Proof& child) { return child.window == p.window; };

  switch (p.rule) {
    case Rule::Premise:
      if (!expect_premises(0)) return fail_with(why, "Premise with children");
      if (std::find(gamma.begin(), gamma.end(), p.conclusion) == gamma.end())
        return fail_with(why, "Premise not in gamma: " + p.conclusion.to_string());
      return true;

    case Rule::A1:
      if (!expect_premises(0)) return fail_with(why, "A1 with children");
      if (p.conclusion.contains_modality()) return fail_with(why, "A1 on a modal formula");
      if (!is_tautology(p.conclusion))
        return fail_with(why, "A1 on a non-tautology: " + p.conclusion.to_string());
      return true;

    case Rule::D: {
      if (!expect_premises(0)) return fail_with(why, "D with children");
      const Formula& c = p.conclusion;
      if (c.kind() != FormulaKind::Not || c.child().kind() != FormulaKind::Believes ||
          !c.child().body().is_false())
        return fail_with(why, "D conclusion is not !B false");
      return true;
    }

    case Rule::A3: {
      if (!expect_premises(1) || !same_window(p.premises[0]))
        return fail_with(why, "A3 premise shape");
      const Formula& k = p.premises[0].conclusion;
      if (k.kind() != FormulaKind::Knows || !k.body().equals(p.conclusion))
        return fail_with(why, "A3 premise does not wrap the conclusion");
      return true;
    }

    case Rule::A4:
    case Rule::B4: {
      if (!expect_premises(1) || !same_window(p.premises[0]))
        return fail_with(why, "introspection premise shape");
      FormulaKind m = p.rule == Rule::A4 ? FormulaKind::Knows : FormulaKind::Believes;
      const Formula& c = p.conclusion;
      if (c.kind() != m || !c.body().equals(p.premises[0].conclusion))
        return fail_with(why, "introspection conclusion shape");
      const Formula& prem = p.premises[0].conclusion;
      if (prem.kind() != m || !(prem.time() == c.time()) || !(prem.agent() == c.agent()))
        return fail_with(why, "introspection premise modality mismatch");
      return true;
    }

    case Rule::A5:
    case Rule::B5: {
      if (!expect_premises(1) || !same_window(p.premises[0]))
        return fail_with(why, "negative introspection premise shape");
      FormulaKind m = p.rule == Rule::A5 ? FormulaKind::Knows : FormulaKind::Believes;
      const Formula& c = p.conclusion;
      if (c.kind() != m || !c.body().equals(p.premises[0].conclusion))
        return fail_with(why, "negative introspection conclusion shape");
      const Formula& body = c.body();
      if (body.kind() != FormulaKind::Not || body.child().kind() != m ||
          !(body.child().time() == c.time()) || !(body.child().agent() == c.agent()))
        return fail_with(why, "negative introspection body shape");
      return true;
    }

    case Rule::A2:
    case Rule::K: {
      if (!expect_premises(2) || !same_window(p.premises[0]) || !same_window(p.premises[1]))
        return fail_with(why, "modus ponens premise shape");
      FormulaKind m = p.rule == Rule::A2 ? FormulaKind::Knows : FormulaKind::Believes;
      const Formula& c = p.conclusion;
      const Formula& pa = p.premises[0].conclusion;
      const Formula& pi = p.premises[1].conclusion;
      if (c.kind() != m || pa.kind() != m || pi.kind() != m)
        return fail_with(why, "modus ponens modality mismatch");
      if (!(pa.time() == c.time()) || !(pa.agent() == c.agent()) || !(pi.time() == c.time()) ||
          !(pi.agent() == c.agent()))
        return fail_with(why, "modus ponens time or agent mismatch");
      auto imp = pi.body().as_implication();
      if (!imp) return fail_with(why, "modus ponens premise is not an implication");
      if (!imp->first.equals(pa.body()) || !imp->second.equals(c.body()))
        return fail_with(why, "modus ponens does not connect premises to conclusion");
      return true;
    }

    case Rule::L1: {
      if (!expect_premises(1) || !same_window(p.premises[0]))
        return fail_with(why, "L1 premise shape");
      const Formula& c = p.conclusion;
      const Formula& k = p.premises[0].conclusion;
      if (c.kind() != FormulaKind::Believes || k.kind() != FormulaKind::Knows)
        return fail_with(why, "L1 modality mismatch");
      if (!(k.time() == c.time()) || !(k.agent() == c.agent()) || !k.body().equals(c.body()))
        return fail_with(why, "L1 body mismatch");
      return true;
    }

    case Rule::L2: {
      if (!expect_premises(1) || !same_window(p.premises[0]))
        return fail_with(why, "L2 premise shape");
      const Formula& c = p.conclusion;
      const Formula& b = p.premises[0].conclusion;
      if (c.kind() != FormulaKind::Knows || b.kind() != FormulaKind::Believes)
        return fail_with(why, "L2 modality mismatch");
      if (!(c.time() == b.time()) || !(c.agent() == b.agent()) || !c.body().equals(b))
        return fail_with(why, "L2 shape mismatch");
      return true;
    }

    case Rule::KR1: {
      if (!expect_premises(1)) return fail_with(why, "KR1 premise shape");
      const Formula& c = p.conclusion;
      const Formula& k = p.premises[0].conclusion;
      if (c.kind() != FormulaKind::Knows || k.kind() != FormulaKind::Knows)
        return fail_with(why, "KR1 on a non-knowledge formula");
      if (!(k.agent() == c.agent()) || !k.body().equals(c.body()))
        return fail_with(why, "KR1 changes more than the timestamp");
      if (!k.time().is_literal() || !c.time().is_literal())
        return fail_with(why, "KR1 over symbolic timestamps");
      Timestamp from = k.time().value(), to = c.time().value();
      if (from >= to) return fail_with(why, "KR1 must move knowledge forward");
      std::uint64_t delta = to.ticks - from.ticks;
      if (!p.window.covers(delta)) return fail_with(why, "KR1 window does not cover the gap");
      if (!(p.premises[0].window == p.window.consume(delta)))
        return fail_with(why, "KR1 premise window is not window minus the gap");
      return true;
    }
  }
  return fail_with(why, "unknown rule");
}

namespace {
void proof_text_rec(const Proof& p, int indent, std::string& out) {
  out.append(static_cast<std::size_t>(indent) * 2, ' ');
  out += to_string(p.rule) + "  (" + p.conclusion.to_string() + ", " + to_string(p.window) + ")\n";
  for (const Proof& c : p.premises) proof_text_rec(c, indent + 1, out);
}
}  // namespace

std::string proof_to_text(const Proof& p) {
  std::string out;
  proof_text_rec(p, 0, out);
  return out;
}

nlohmann::json proof_to_json(const Proof& p) {
  nlohmann::json j;
  j["rule"] = to_string(p.rule);
  j["conclusion"] = p.conclusion.to_string();
  j["window"] = to_string(p.window);
  j["children"] = nlohmann::json::array();
  for (const Proof& c : p.premises) j["children"].push_back(proof_to_json(c));
  return j;
}

}  // namespace tekl
