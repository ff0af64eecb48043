#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "delp/gen.hpp"

namespace delp {

struct SoundnessReport {
  int models = 0;
  int instances_checked = 0;
  int core_counterexamples = 0;         // unconditionally valid schemas
  int conditioned_counterexamples = 0;  // schemas under their side-conditions
  std::vector<std::string> failures;    // first few descriptions

  // Unrestricted search for the send/recv knowledge schema, which is only
  // claimed under V(send_i) = ~_i: either a counterexample or exhaustion.
  bool unconditioned_counterexample_found = false;
  std::string unconditioned_counterexample;
  int unconditioned_models_tried = 0;
};

SoundnessReport run_soundness_suite(std::uint64_t seed, int iterations);

std::string soundness_summary(const SoundnessReport& r);

}  // namespace delp
