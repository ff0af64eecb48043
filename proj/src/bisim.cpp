#include "delp/bisim.hpp"

#include <set>

namespace delp {

bool bisimilar(const KripkeModel& m, const World& v, const KripkeModel& n,
               const World& w) {
  std::set<AgentId> agents(m.agents.begin(), m.agents.end());
  agents.insert(n.agents.begin(), n.agents.end());
  std::set<AtomId> atoms;
  for (const auto& [p, s] : m.val_atoms) atoms.insert(p);
  for (const auto& [p, s] : n.val_atoms) atoms.insert(p);

  auto atom_true = [](const KripkeModel& mm, const AtomId& p, const World& s) {
    auto it = mm.val_atoms.find(p);
    return it != mm.val_atoms.end() && it->second.count(s) > 0;
  };

  // candidate pairs: propositional and observation invariance
  std::set<std::pair<World, World>> rho;
  for (const auto& a : m.worlds)
    for (const auto& b : n.worlds) {
      bool ok = true;
      for (const auto& p : atoms)
        if (atom_true(m, p, a) != atom_true(n, p, b)) {
          ok = false;
          break;
        }
      if (ok && !(m.exp_of(a) == n.exp_of(b))) ok = false;
      if (ok) rho.insert({a, b});
    }

  // refine under zig/zag for every agent
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = rho.begin(); it != rho.end();) {
      const auto& [a, b] = *it;
      bool keep = true;
      for (const auto& i : agents) {
        Rel ra = m.epist_of(i), rb = n.epist_of(i);
        for (const auto& [x, y] : ra) {
          if (x != a) continue;
          bool matched = false;
          for (const auto& [u, z] : rb)
            if (u == b && rho.count({y, z})) {
              matched = true;
              break;
            }
          if (!matched) {
            keep = false;
            break;
          }
        }
        if (keep)
          for (const auto& [u, z] : rb) {
            if (u != b) continue;
            bool matched = false;
            for (const auto& [x, y] : ra)
              if (x == a && rho.count({y, z})) {
                matched = true;
                break;
              }
            if (!matched) {
              keep = false;
              break;
            }
          }
        if (!keep) break;
      }
      if (!keep) {
        it = rho.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  return rho.count({v, w}) > 0;
}

bool check_bridge(const KripkeModel& m, const World& v, const Formula& f,
                  const EvalOpts& opts) {
  TemporalModel n = temporal_expand(m, opts.budget);
  bool lhs = satisfies(m, v, f, opts);
  bool rhs = satisfies_temporal(n, {v, std::nullopt}, f, opts);
  return lhs == rhs;
}

}  // namespace delp
