#ifndef DELP_MODEL_HPP
#define DELP_MODEL_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "delp/ast.hpp"
#include "delp/deduction.hpp"

namespace delp {

using World = std::string;
using Rel = std::set<std::pair<World, World>>;

// Atomic program key: send/recv of one agent.
struct ProgAtom {
  bool send = true;
  AgentId agent;
  bool operator<(const ProgAtom& o) const {
    return std::tie(send, agent) < std::tie(o.send, o.agent);
  }
};

struct KripkeModel {
  std::vector<World> worlds;
  std::vector<AgentId> agents;
  std::map<AtomId, std::set<World>> val_atoms;
  std::map<AgentId, Rel> epist;        // must be equivalence relations
  std::map<ProgAtom, Rel> val_progs;   // must sit inside the owner's epist
  std::map<World, KnowledgeSet> exp;

  bool has_world(const World& w) const;
  // Epistemic relation for an agent; identity when the agent is unlisted.
  Rel epist_of(const AgentId& i) const;
  Rel prog_atom_rel(const ProgAtom& a) const;
  const KnowledgeSet& exp_of(const World& w) const;
};

// One diagnostic per violated invariant; empty means valid.
std::vector<std::string> validate_model(const KripkeModel& m);

struct EvalOpts {
  int budget = kDefaultBudget;
  bool raw_membership = false;  // literal membership for @mu instead of derivability
};

// Relation denoted by a program: atoms from val_progs, skip is identity,
// seq composes, union joins, star is reflexive-transitive closure.
Rel prog_rel(const KripkeModel& m, const Program& p);

// Satisfaction at a world. Unknown atoms are false everywhere; an unknown
// world throws std::out_of_range.
bool satisfies(const KripkeModel& m, const World& s, const Formula& f,
               const EvalOpts& opts = {});

// Removes mu from every knowledge set and drops worlds whose set becomes
// empty, restricting every relation and valuation accordingly.
KripkeModel restrict_model(const KripkeModel& m, const Msg& mu,
                           std::vector<std::string>* warnings = nullptr);

std::string print_model(const KripkeModel& m);

}  // namespace delp

#endif
