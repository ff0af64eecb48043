#ifndef DELP_PROTOCOL_HPP
#define DELP_PROTOCOL_HPP

#include "delp/proof.hpp"

namespace delp {

struct Round {
  AgentId sender, receiver;
  std::vector<Msg> payload;
  bool unformalized = false;  // stored but skipped by compilation
};

struct ProtocolSpec {
  std::string name;
  std::vector<AgentId> agents;
  std::map<AgentId, std::vector<Msg>> initial_knowledge;
  std::vector<Round> rounds;
};

struct Theory {
  std::string name;
  std::vector<std::pair<std::string, Formula>> axioms;

  const Formula* find(const std::string& n) const;
  Judgment judgment_for(const Formula& goal) const;
};

// Initial-knowledge axioms `init_<i>: K i (/\ @m)` plus one
// `round_<r>: [send s][recv r] (/\ @m)` per formalized round. Conjunctions
// are right-nested; naming and order are deterministic.
Theory compile_protocol(const ProtocolSpec& spec);

struct Claim {
  std::string name;
  Formula formula;
  Proof script;        // may be null (no bundled proof)
  bool needs_lax = false;
};

struct BundledNS {
  ProtocolSpec spec;
  Theory theory;
  std::vector<Claim> claims;
};

// The Needham-Schroeder symmetric-key instance: rounds 1-3 formalized,
// rounds 4-5 stored as unformalized, key-secrecy claims with proof scripts.
const BundledNS& bundled_ns();

struct VerifyReport {
  bool ok = false;            // proof checked, or search succeeded
  bool searched = false;      // no proof supplied; outcome is search-based
  bool search_exhausted = false;
  std::string error;
  std::set<std::string> assumptions;  // honesty-class schemas + "lax-necessitation"
};

VerifyReport verify_claim(const Theory& theory, const Formula& claim,
                          const Proof& proof /* may be null */,
                          int search_depth = 6);

std::string print_protocol(const ProtocolSpec& spec);
std::string print_theory(const Theory& t);

}  // namespace delp

#endif
