#include "delp/temporal.hpp"

#include <sstream>
#include <stdexcept>

namespace delp {

bool History::operator==(const History& o) const {
  if (world != o.world) return false;
  if (payload.has_value() != o.payload.has_value()) return false;
  if (!payload) return true;
  return msg_eq(normalize(*payload), normalize(*o.payload));
}

int TemporalModel::index_of(const History& h) const {
  for (std::size_t n = 0; n < histories.size(); ++n)
    if (histories[n] == h) return static_cast<int>(n);
  return -1;
}

KnowledgeSet TemporalModel::base_of(int h) const {
  const History& hist = histories[h];
  if (!hist.payload) return source.exp_of(hist.world);
  KnowledgeSet ks;
  ks.insert(*hist.payload);
  return ks;
}

TemporalModel temporal_expand(const KripkeModel& m, int budget) {
  TemporalModel n;
  n.source = m;
  for (const auto& w : m.worlds) n.histories.push_back({w, std::nullopt});
  for (const auto& w : m.worlds)
    for (const auto& msg : m.exp_of(w)) n.histories.push_back({w, msg});

  for (std::size_t a = 0; a < n.histories.size(); ++a)
    for (std::size_t b = 0; b < n.histories.size(); ++b) {
      const History &ha = n.histories[a], &hb = n.histories[b];
      if (ha.world != hb.world || !hb.payload) continue;
      if (!ha.payload) {
        n.step.insert({(int)a, (int)b});  // initial point reaches every payload
      } else {
        KnowledgeSet ks;
        ks.insert(*ha.payload);
        if (derivable(ks, *hb.payload, budget)) n.step.insert({(int)a, (int)b});
      }
    }

  for (const auto& i : m.agents) {
    Rel rel = m.epist_of(i);
    HRel hr;
    for (std::size_t a = 0; a < n.histories.size(); ++a)
      for (std::size_t b = 0; b < n.histories.size(); ++b) {
        const History &ha = n.histories[a], &hb = n.histories[b];
        if (!rel.count({ha.world, hb.world})) continue;
        bool payload_eq =
            (!ha.payload && !hb.payload) ||
            (ha.payload && hb.payload &&
             msg_eq(normalize(*ha.payload), normalize(*hb.payload)));
        if (payload_eq) hr.insert({(int)a, (int)b});
      }
    n.epist[i] = hr;
  }
  return n;
}

// Payload-preserving lift of the source relation of a program.
static HRel lift_rel(const TemporalModel& n, const Rel& src) {
  HRel out;
  for (std::size_t a = 0; a < n.histories.size(); ++a)
    for (std::size_t b = 0; b < n.histories.size(); ++b) {
      const History &ha = n.histories[a], &hb = n.histories[b];
      if (!src.count({ha.world, hb.world})) continue;
      if ((!ha.payload && !hb.payload) ||
          (ha.payload && hb.payload &&
           msg_eq(normalize(*ha.payload), normalize(*hb.payload))))
        out.insert({(int)a, (int)b});
    }
  return out;
}

static HRel compose(const HRel& a, const HRel& b) {
  HRel out;
  for (const auto& [x, y] : a)
    for (const auto& [u, v] : b)
      if (y == u) out.insert({x, v});
  return out;
}

static HRel hist_prog_rel(const TemporalModel& n, const Program& p) {
  switch (p->kind) {
    case ProgKind::Skip: {
      HRel id;
      for (std::size_t a = 0; a < n.histories.size(); ++a) id.insert({(int)a, (int)a});
      return id;
    }
    case ProgKind::Send:
      return lift_rel(n, n.source.prog_atom_rel({true, p->agent}));
    case ProgKind::Recv:
      return lift_rel(n, n.source.prog_atom_rel({false, p->agent}));
    case ProgKind::Seq:
      return compose(hist_prog_rel(n, p->kids[0]), hist_prog_rel(n, p->kids[1]));
    case ProgKind::Union: {
      HRel out = hist_prog_rel(n, p->kids[0]);
      for (const auto& q : hist_prog_rel(n, p->kids[1])) out.insert(q);
      return out;
    }
    case ProgKind::Star: {
      HRel out;
      for (std::size_t a = 0; a < n.histories.size(); ++a) out.insert({(int)a, (int)a});
      HRel r = hist_prog_rel(n, p->kids[0]);
      for (const auto& q : r) out.insert(q);
      bool changed = true;
      while (changed) {
        changed = false;
        for (const auto& q : compose(out, out))
          if (out.insert(q).second) changed = true;
      }
      return out;
    }
  }
  return {};
}

static bool sat_at(const TemporalModel& n, int h, const Formula& f,
                   const EvalOpts& opts) {
  const History& hist = n.histories[h];
  switch (f->kind) {
    case FKind::Atom: {
      auto it = n.source.val_atoms.find(f->atom);
      return it != n.source.val_atoms.end() && it->second.count(hist.world) > 0;
    }
    case FKind::Bottom:
      return false;
    case FKind::Impl:
      return !sat_at(n, h, f->kids[0], opts) || sat_at(n, h, f->kids[1], opts);
    case FKind::And:
      return sat_at(n, h, f->kids[0], opts) && sat_at(n, h, f->kids[1], opts);
    case FKind::Or:
      return sat_at(n, h, f->kids[0], opts) || sat_at(n, h, f->kids[1], opts);
    case FKind::Know: {
      auto it = n.epist.find(f->agent);
      if (it == n.epist.end()) return sat_at(n, h, f->kids[0], opts);
      for (const auto& [a, b] : it->second)
        if (a == h && !sat_at(n, b, f->kids[0], opts)) return false;
      return true;
    }
    case FKind::Box: {
      for (const auto& [a, b] : hist_prog_rel(n, f->prog))
        if (a == h && !sat_at(n, b, f->kids[0], opts)) return false;
      return true;
    }
    case FKind::At: {
      KnowledgeSet ks = n.base_of(h);
      if (opts.raw_membership) return ks.contains(f->msg);
      return derivable(ks, f->msg, opts.budget);
    }
  }
  return false;
}

bool satisfies_temporal(const TemporalModel& n, const History& h,
                        const Formula& f, const EvalOpts& opts) {
  int idx = n.index_of(h);
  if (idx < 0) throw std::out_of_range("unknown history");
  return sat_at(n, idx, f, opts);
}

KripkeModel temporal_as_kripke(const TemporalModel& n) {
  KripkeModel m;
  std::vector<World> names;
  for (std::size_t a = 0; a < n.histories.size(); ++a)
    names.push_back("h" + std::to_string(a));
  m.worlds = names;
  m.agents = n.source.agents;
  for (const auto& [p, set] : n.source.val_atoms) {
    std::set<World> sw;
    for (std::size_t a = 0; a < n.histories.size(); ++a)
      if (set.count(n.histories[a].world)) sw.insert(names[a]);
    m.val_atoms[p] = sw;
  }
  for (const auto& [i, hr] : n.epist) {
    Rel r;
    for (const auto& [a, b] : hr) r.insert({names[a], names[b]});
    m.epist[i] = r;
  }
  for (const auto& [pa, rel] : n.source.val_progs) {
    Rel r;
    for (const auto& [a, b] : lift_rel(n, rel)) r.insert({names[a], names[b]});
    m.val_progs[pa] = r;
  }
  for (std::size_t a = 0; a < n.histories.size(); ++a)
    m.exp[names[a]] = n.base_of((int)a);
  return m;
}

std::string print_temporal(const TemporalModel& n) {
  std::ostringstream os;
  for (std::size_t a = 0; a < n.histories.size(); ++a) {
    const History& h = n.histories[a];
    os << "history h" << a << ": " << h.world << ", "
       << (h.payload ? msg_to_string(*h.payload) : "eps") << "\n";
  }
  os << "step:";
  for (const auto& [a, b] : n.step) os << " h" << a << "->h" << b;
  os << "\n";
  for (const auto& [i, hr] : n.epist) {
    os << "epist " << i << ":";
    for (const auto& [a, b] : hr) os << " h" << a << "->h" << b;
    os << "\n";
  }
  os << "atoms:\n";
  for (const auto& [p, set] : n.source.val_atoms) {
    os << "  " << p << ":";
    for (std::size_t a = 0; a < n.histories.size(); ++a)
      if (set.count(n.histories[a].world)) os << " h" << a;
    os << "\n";
  }
  return os.str();
}

}  // namespace delp
