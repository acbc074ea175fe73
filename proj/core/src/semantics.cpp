#include "tekl/semantics.hpp"

namespace tekl {

namespace {

std::string arg_name(const Event& e, std::size_t i) {
  if (i >= e.args.size() || !e.args[i].is_constant())
    throw SemanticsError("event " + e.to_string() + " needs a constant argument #" +
                         std::to_string(i + 1));
  return e.args[i].name();
}

class BuiltinSemantics : public OsnSemantics {
 public:
  SocialNetworkModel apply(const SocialNetworkModel& snm, const std::vector<Event>& events,
                           Timestamp t, const ApplyContext& ctx) const override {
    SocialNetworkModel next = snm;
    if (!ctx.accumulate_ekbs) next.ekbs.clear();  // per-step knowledge bases
    for (const Event& e : events) {
      if (!knows_event(e.name))
        throw SemanticsError("event '" + e.name + "' is outside the " + name() + " vocabulary");
      apply_one(next, e, t, ctx);
    }
    return next;
  }

 protected:
  virtual void apply_one(SocialNetworkModel& snm, const Event& e, Timestamp t,
                         const ApplyContext& ctx) const = 0;

  static void add_knowledge(SocialNetworkModel& snm, const std::string& agent, Timestamp t,
                            const Formula& fact) {
    snm.ekb_mutable(agent).add_entry(
        Formula::knows(TimeExpr::literal(t), Term::constant(agent), fact), agent, t);
  }

  static void add_env_fact(SocialNetworkModel& snm, Timestamp t, const Formula& fact) {
    add_knowledge(snm, snm.environment, t, fact);
  }

  static void run_enter(SocialNetworkModel& snm, const std::string& agent, const Formula& belief,
                        Timestamp t, const ApplyContext& ctx) {
    std::vector<Formula> history = ctx.history_for(agent);
    PropagationReport report = propagate_belief(snm.ekb_mutable(agent), history, belief, t, agent,
                                                ctx.params, ctx.functional_predicates);
    if (ctx.reports) ctx.reports->push_back(std::move(report));
  }

  void apply_friend_request(SocialNetworkModel& snm, const Event& e, Timestamp t) const {
    std::string a = arg_name(e, 0), b = arg_name(e, 1);
    if (!snm.permitted("friendRequest", a, b))
      throw SemanticsError(a + " is not permitted to send a friend request to " + b);
    snm.connections["requested"].insert({a, b});
    Formula atom =
        Formula::action("friendRequest", TimeExpr::literal(t), Term::constant(a), Term::constant(b));
    add_knowledge(snm, a, t, atom);
    add_knowledge(snm, b, t, atom);
  }

  void apply_accept(SocialNetworkModel& snm, const Event& e) const {
    std::string a = arg_name(e, 0), b = arg_name(e, 1);
    auto it = snm.connections.find("requested");
    if (it == snm.connections.end() || !it->second.count({a, b}))
      throw SemanticsError("no pending friend request from " + a + " to " + b);
    it->second.erase({a, b});
    snm.connections["friendship"].insert({a, b});
    snm.connections["friendship"].insert({b, a});
    auto perm = snm.permissions.find("friendRequest");
    if (perm != snm.permissions.end()) perm->second.erase({a, b});
  }
};

class SnapchatSemantics final : public BuiltinSemantics {
 public:
  std::string name() const override { return "snapchat"; }
  std::vector<std::string> vocabulary() const override {
    return {"friendRequest", "acceptFriendRequest", "share", "enter"};
  }

 protected:
  void apply_one(SocialNetworkModel& snm, const Event& e, Timestamp t,
                 const ApplyContext& ctx) const override {
    if (e.name == "friendRequest") {
      apply_friend_request(snm, e, t);
    } else if (e.name == "acceptFriendRequest") {
      apply_accept(snm, e);
    } else if (e.name == "share") {
      // share(item, owner, value): the owner publishes an item; friends can
      // see it and take the implied location only as a belief.
      std::string item = arg_name(e, 0), owner = arg_name(e, 1), value = arg_name(e, 2);
      TimeExpr now = TimeExpr::literal(t);
      Formula item_fact =
          Formula::predicate(item, now, {Term::constant(owner), Term::constant(value)});
      Formula loc_fact =
          Formula::predicate("loc", now, {Term::constant(owner), Term::constant(value)});
      add_env_fact(snm, t, item_fact);
      add_env_fact(snm, t, loc_fact);
      add_knowledge(snm, owner, t, item_fact);
      add_knowledge(snm, owner, t, loc_fact);
      auto friends = snm.connections.find("friendship");
      if (friends != snm.connections.end()) {
        for (const AgentPair& p : friends->second) {
          if (p.first != owner) continue;
          const std::string& f = p.second;
          add_knowledge(snm, f, t, item_fact);
          run_enter(snm, f, Formula::believes(now, Term::constant(f), loc_fact), t, ctx);
        }
      }
    } else {
      run_enter(snm, e.enter_agent(), *e.belief, t, ctx);
    }
  }
};

class FacebookLiteSemantics final : public BuiltinSemantics {
 public:
  std::string name() const override { return "facebook-lite"; }
  std::vector<std::string> vocabulary() const override {
    return {"friendRequest", "acceptFriendRequest", "post", "disallowLoc", "enter"};
  }

 protected:
  void apply_one(SocialNetworkModel& snm, const Event& e, Timestamp t,
                 const ApplyContext& ctx) const override {
    if (e.name == "friendRequest") {
      apply_friend_request(snm, e, t);
    } else if (e.name == "acceptFriendRequest") {
      apply_accept(snm, e);
    } else if (e.name == "post") {
      // post(author, subject, value): publishes the subject's location;
      // silently blocked once the subject has disallowed location sharing.
      std::string author = arg_name(e, 0), subject = arg_name(e, 1), value = arg_name(e, 2);
      auto blocked = snm.domains.find("locDisallowed");
      if (blocked != snm.domains.end() && blocked->second.count(subject)) return;
      TimeExpr now = TimeExpr::literal(t);
      Formula post_fact = Formula::predicate(
          "post", now, {Term::constant(author), Term::constant(subject), Term::constant(value)});
      Formula loc_fact =
          Formula::predicate("loc", now, {Term::constant(subject), Term::constant(value)});
      add_env_fact(snm, t, post_fact);
      add_env_fact(snm, t, loc_fact);
      add_knowledge(snm, author, t, post_fact);
      add_knowledge(snm, subject, t, post_fact);
    } else if (e.name == "disallowLoc") {
      snm.domains["locDisallowed"].insert(arg_name(e, 0));
    } else {
      run_enter(snm, e.enter_agent(), *e.belief, t, ctx);
    }
  }
};

}  // namespace

std::unique_ptr<OsnSemantics> make_semantics(const std::string& name) {
  if (name == "snapchat") return std::make_unique<SnapchatSemantics>();
  if (name == "facebook-lite") return std::make_unique<FacebookLiteSemantics>();
  throw SemanticsError("unknown event semantics '" + name + "'");
}

}  // namespace tekl
