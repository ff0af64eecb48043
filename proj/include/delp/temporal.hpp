#ifndef DELP_TEMPORAL_HPP
#define DELP_TEMPORAL_HPP

#include <optional>

#include "delp/model.hpp"

namespace delp {

// A history is a world paired with either the empty payload (the initial
// point) or one message from that world's knowledge set.
struct History {
  World world;
  std::optional<Msg> payload;  // nullopt = epsilon

  bool operator==(const History& o) const;
};

using HRel = std::set<std::pair<int, int>>;  // indices into histories

struct TemporalModel {
  KripkeModel source;            // retained for valuations and action structure
  std::vector<History> histories;
  HRel step;                     // deduction steps between histories
  std::map<AgentId, HRel> epist;

  int index_of(const History& h) const;  // -1 when absent
  // Knowledge available for @mu at a history: the payload singleton, or the
  // world's full knowledge set at the initial point.
  KnowledgeSet base_of(int h) const;
};

// Unfolds a model into histories: (s, eps) for every world plus (s, m) for
// every m in Exp(s). Steps: (s, eps) -> (s, m) for every m in Exp(s), and
// (s, m) -> (s, m') when {m} derives m'. Epistemic pairs require related
// worlds and equal (normalized) payloads.
TemporalModel temporal_expand(const KripkeModel& m,
                              int budget = kDefaultBudget);

// Satisfaction over histories. Box moves along the source model's program
// relation with the payload carried unchanged, which is the reading under
// which evaluation at (s, eps) agrees with the source model.
bool satisfies_temporal(const TemporalModel& n, const History& h,
                        const Formula& f, const EvalOpts& opts = {});

// The temporal model seen as a plain Kripke model: one world per history
// (named h0, h1, ...), epist as given, Exp as base_of. Program valuations
// are the payload-preserving lift of the source ones.
KripkeModel temporal_as_kripke(const TemporalModel& n);

std::string print_temporal(const TemporalModel& n);

}  // namespace delp

#endif
