#ifndef DELP_BISIM_HPP
#define DELP_BISIM_HPP

#include "delp/temporal.hpp"

namespace delp {

// Greatest bisimulation between two models: starts from all pairs agreeing
// on atoms and (normalized) knowledge sets, then refines away pairs that
// break zig or zag for some agent until nothing changes.
bool bisimilar(const KripkeModel& m, const World& v, const KripkeModel& n,
               const World& w);

// Whether evaluation in the model and at the initial history of its
// temporal expansion agree.
bool check_bridge(const KripkeModel& m, const World& v, const Formula& f,
                  const EvalOpts& opts = {});

}  // namespace delp

#endif
