#pragma once

#include <cstdint>
#include <random>

#include "delp/model.hpp"
#include "delp/parse.hpp"
#include "delp/proof.hpp"
#include "delp/protocol.hpp"

namespace delp {

// Seeded generators for randomized suites; every draw goes through one
// mt19937_64 so a fixed seed reproduces the whole run.
struct Gen {
  std::mt19937_64 rng;

  explicit Gen(std::uint64_t seed) : rng(seed) {}

  int range(int lo, int hi);  // inclusive bounds
  bool chance(double p);

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(range(0, static_cast<int>(v.size()) - 1))];
  }

  // Small closed term pool (at most max_subterms distinct subterms).
  std::vector<Msg> message_pool(int max_subterms = 8);
  Msg message_from(const std::vector<Msg>& pool, int depth = 2);
  KnowledgeSet gamma_from(const std::vector<Msg>& pool, int max_size);

  Program program(const std::vector<AgentId>& agents, int depth = 2,
                  bool allow_star = true);

  struct FormulaOpts {
    int max_modal_depth = 3;
    int size = 6;
    bool allow_know = true;
    bool allow_box = true;
    bool allow_at = true;
    bool allow_star = false;
  };
  Formula formula(const std::vector<AtomId>& atoms,
                  const std::vector<AgentId>& agents,
                  const std::vector<Msg>& msgs, FormulaOpts o);

  enum class ProgMode { Subset, EqualEpist, Reflexive };
  KripkeModel model(ProgMode mode = ProgMode::Subset, int max_worlds = 4,
                    int max_agents = 3, int max_atoms = 4);

  ProtocolSpec protocol();

  // Random (not necessarily valid) proof file for parser round-trips.
  ProofFile proof_file();
};

// Every world duplicated; the copy shares atoms, knowledge set, epistemic
// class, and program edges with the original, so the models are bisimilar.
KripkeModel duplicate_worlds(const KripkeModel& m, const std::string& suffix = "d");

// All single-node mutations of a proof: hypothesis renames, metavariable
// rebindings, child swaps, necessitation-agent changes, node deletions.
std::vector<Proof> mutate_proof(const Proof& p);

}  // namespace delp
