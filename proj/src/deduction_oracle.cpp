#include "delp/deduction.hpp"

#include <algorithm>
#include <functional>
#include <set>

// Reference oracle for closure(): blind rule iteration over the bounded
// universe, kept deliberately free of the analysis/synthesis staging used by
// the optimized implementation.

namespace delp {

namespace {

// Small on purpose: the oracle enumerates the whole bounded universe, whose
// size is doubly exponential in depth; instances past this are rejected.
constexpr std::size_t kOracleLimit = 3000;

int depth_of(const Msg& m) { return msg_depth(m); }

void subfuncs(const Msg& m, std::set<std::pair<std::string, std::size_t>>& out) {
  if (m->kind == MsgKind::Func) out.insert({m->label, m->kids.size()});
  for (const auto& k : m->kids) subfuncs(k, out);
}

}  // namespace

std::optional<KnowledgeSet> brute_force_closure_oracle(const KnowledgeSet& gamma,
                                                       int budget) {
  if (gamma.size() > 5 || budget < 0 || budget > 3) return std::nullopt;

  int cap = 0;
  std::set<std::pair<std::string, std::size_t>> funcs;
  for (const auto& m : gamma) {
    cap = std::max(cap, depth_of(m));
    subfuncs(m, funcs);
  }
  cap += budget;

  std::set<Msg, MsgLess> s;
  for (const auto& m : gamma) s.insert(m);

  bool changed = true;
  bool overflow = false;
  while (changed && !overflow) {
    changed = false;
    std::vector<Msg> snapshot(s.begin(), s.end());
    std::vector<int> depth(snapshot.size());
    for (std::size_t n = 0; n < snapshot.size(); ++n)
      depth[n] = depth_of(snapshot[n]);
    std::set<Msg, MsgLess> found;

    auto emit = [&](const Msg& m) {
      if (overflow) return;
      Msg n = normalize(m);
      if (s.count(n) || depth_of(n) > cap) return;
      found.insert(n);
      if (s.size() + found.size() > kOracleLimit) overflow = true;
    };

    for (const auto& m : snapshot) {
      if (overflow) break;
      // unpairing
      if (m->kind == MsgKind::Pair) {
        emit(m->kids[0]);
        emit(m->kids[1]);
      }
      // decryption with a key already present
      if (m->kind == MsgKind::Enc && s.count(normalize(m->kids[1])))
        emit(m->kids[0]);
    }
    // nonce, pairing, and encryption over everything present; the candidate
    // depth is known before construction, so over-cap terms are never built
    for (std::size_t a = 0; a < snapshot.size() && !overflow; ++a) {
      if (depth[a] + 1 <= cap) emit(mk_nonce(snapshot[a]));
      for (std::size_t b = 0; b < snapshot.size() && !overflow; ++b) {
        if (std::max(depth[a], depth[b]) + 1 > cap) continue;
        emit(mk_pair(snapshot[a], snapshot[b]));
        emit(mk_enc(snapshot[a], snapshot[b]));
      }
    }
    // function application for symbols occurring in gamma
    for (const auto& [f, arity] : funcs) {
      if (overflow) break;
      std::vector<Msg> args(arity);
      std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int dmax) {
        if (overflow) return;
        if (pos == arity) {
          if (dmax + 1 <= cap) emit(mk_func(f, args));
          return;
        }
        for (std::size_t n = 0; n < snapshot.size(); ++n) {
          args[pos] = snapshot[n];
          rec(pos + 1, std::max(dmax, depth[n]));
        }
      };
      rec(0, 0);
    }

    for (const auto& m : found) {
      s.insert(m);
      changed = true;
    }
  }
  if (overflow) return std::nullopt;

  KnowledgeSet out;
  for (const auto& m : s) out.insert(m);
  return out;
}

}  // namespace delp
