#pragma once

#include <optional>

#include "delp/proof.hpp"

namespace delp {

// Bounded forward chaining over the judgment's hypotheses, schema instances
// filled from subformulas/subterms of the judgment, and the structural rules.
// Incomplete by design: an empty result is not a refutation. Necessitation is
// only applied to hypothesis-free subproofs.
std::optional<Proof> search_proof(const Judgment& j, int depth = 6);

}  // namespace delp
