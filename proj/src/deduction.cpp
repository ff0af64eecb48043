#include "delp/deduction.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace delp {

using MsgSet = std::set<Msg, MsgLess>;

// Can `t` be composed from messages in `have`? Composition only ever walks
// down the structure of `t`, so it is bounded by the goal's own subterms.
static bool composable(const MsgSet& have, const Msg& t) {
  if (have.count(t)) return true;
  switch (t->kind) {
    case MsgKind::Pair:
    case MsgKind::Enc:
      return composable(have, t->kids[0]) && composable(have, t->kids[1]);
    case MsgKind::Func: {
      for (const auto& a : t->kids)
        if (!composable(have, a)) return false;
      return true;
    }
    case MsgKind::Nonce:
      // Goal-directed nonce rule: nonce(m) needs m (or set membership).
      return composable(have, t->kids[0]);
    default:
      return false;
  }
}

// Decomposition saturation: unpair everything, decrypt whenever the key is
// itself derivable from what has been analysed so far.
static MsgSet analyze(const KnowledgeSet& gamma) {
  MsgSet out;
  for (const auto& m : gamma) out.insert(m);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Msg> add;
    for (const auto& m : out) {
      if (m->kind == MsgKind::Pair) {
        if (!out.count(m->kids[0])) add.push_back(m->kids[0]);
        if (!out.count(m->kids[1])) add.push_back(m->kids[1]);
      } else if (m->kind == MsgKind::Enc) {
        if (!out.count(m->kids[0]) && composable(out, m->kids[1]))
          add.push_back(m->kids[0]);
      }
    }
    for (auto& m : add) {
      out.insert(std::move(m));
      changed = true;
    }
  }
  return out;
}

bool derivable(const KnowledgeSet& gamma, const Msg& goal, int budget) {
  (void)budget;  // composition is goal-directed; the bound never binds
  MsgSet have = analyze(gamma);
  return composable(have, normalize(goal));
}

static int max_subterm_depth(const KnowledgeSet& gamma) {
  int d = 0;
  for (const auto& m : gamma) d = std::max(d, msg_depth(m));
  return d;
}

static void collect_funcs(const Msg& m, std::set<std::pair<std::string, std::size_t>>& out) {
  if (m->kind == MsgKind::Func) out.insert({m->label, m->kids.size()});
  for (const auto& k : m->kids) collect_funcs(k, out);
}

namespace {
struct Synth {
  MsgSet set;
  int cap;
  std::uint64_t limit;
  std::set<std::pair<std::string, std::size_t>> funcs;
  bool overflow = false;

  bool add(const Msg& m) {
    if (set.size() >= limit) {
      overflow = true;
      return false;
    }
    return set.insert(m).second;
  }

  // One composition sweep over the current set; returns true if it grew.
  bool sweep() {
    std::vector<Msg> base(set.begin(), set.end());
    std::vector<int> depth(base.size());
    for (std::size_t n = 0; n < base.size(); ++n) depth[n] = msg_depth(base[n]);
    bool grown = false;
    for (std::size_t a = 0; a < base.size() && !overflow; ++a) {
      if (depth[a] + 1 <= cap && add(mk_nonce(base[a]))) grown = true;
      for (std::size_t b = 0; b < base.size() && !overflow; ++b) {
        if (std::max(depth[a], depth[b]) + 1 > cap) continue;
        if (add(mk_pair(base[a], base[b]))) grown = true;
        if (add(mk_enc(base[a], base[b]))) grown = true;
      }
    }
    for (const auto& [f, arity] : funcs) {
      std::vector<Msg> args(arity);
      std::function<bool(std::size_t, int)> rec = [&](std::size_t pos, int dmax) {
        if (overflow) return false;
        if (pos == arity) {
          if (dmax + 1 > cap) return false;
          return add(mk_func(f, args));
        }
        bool any = false;
        for (std::size_t n = 0; n < base.size(); ++n) {
          args[pos] = base[n];
          if (rec(pos + 1, std::max(dmax, depth[n]))) any = true;
        }
        return any;
      };
      if (rec(0, 0)) grown = true;
    }
    return grown;
  }
};
}  // namespace

int closure_cap(const KnowledgeSet& gamma, int budget) {
  return max_subterm_depth(gamma) + std::max(budget, 0);
}

static Synth run_closure(const KnowledgeSet& gamma, int budget, std::uint64_t limit) {
  Synth s;
  s.set = analyze(gamma);
  s.cap = closure_cap(gamma, budget);
  s.limit = limit;
  for (const auto& m : gamma) collect_funcs(m, s.funcs);
  while (s.sweep() && !s.overflow) {
  }
  return s;
}

KnowledgeSet closure(const KnowledgeSet& gamma, int budget) {
  Synth s = run_closure(gamma, budget, ~std::uint64_t{0});
  KnowledgeSet out;
  for (const auto& m : s.set) out.insert(m);
  return out;
}

std::uint64_t closure_universe_estimate(const KnowledgeSet& gamma, int budget,
                                        std::uint64_t cap) {
  Synth s = run_closure(gamma, budget, cap);
  return s.overflow ? cap : s.set.size();
}

}  // namespace delp
