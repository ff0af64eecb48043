#ifndef DELP_DEDUCTION_HPP
#define DELP_DEDUCTION_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "delp/message.hpp"

namespace delp {

constexpr int kDefaultBudget = 2;

// Decides Gamma |- m for the message deduction rules: membership, pairing
// both ways, encryption introduction, symmetric decryption, key symmetry
// (via normalization), goal-directed nonce introduction and function
// application. Decomposition is unrestricted; composition is goal-directed,
// so it only ever builds subterms of the goal and the answer is exact for
// every budget >= 0. The budget is part of the signature because it bounds
// the enumeration in closure(); derivable agrees with closure on the
// closure universe.
bool derivable(const KnowledgeSet& gamma, const Msg& goal,
               int budget = kDefaultBudget);

// All messages derivable from gamma whose constructor depth does not exceed
// the deepest subterm of gamma plus budget, over the signature occurring in
// gamma. Least fixpoint of the deduction rules: unrestricted decomposition
// to saturation, then depth-staged composition.
KnowledgeSet closure(const KnowledgeSet& gamma, int budget = kDefaultBudget);

// Depth bound of the closure universe: deepest gamma subterm plus budget.
int closure_cap(const KnowledgeSet& gamma, int budget);

// Number of messages in the closure universe for the given inputs, saturating
// at `cap`. Used to keep brute-force instances tractable.
std::uint64_t closure_universe_estimate(const KnowledgeSet& gamma, int budget,
                                        std::uint64_t cap);

// Naive reference implementation: repeated application of every rule over
// the bounded universe until nothing changes. No indexing, no staging.
// Rejects instances that are too large to iterate (returns nullopt).
std::optional<KnowledgeSet> brute_force_closure_oracle(const KnowledgeSet& gamma,
                                                       int budget);

}  // namespace delp

#endif
