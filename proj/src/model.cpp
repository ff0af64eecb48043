#include "delp/model.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace delp {

bool KripkeModel::has_world(const World& w) const {
  return std::find(worlds.begin(), worlds.end(), w) != worlds.end();
}

Rel KripkeModel::epist_of(const AgentId& i) const {
  auto it = epist.find(i);
  if (it != epist.end()) return it->second;
  Rel id;
  for (const auto& w : worlds) id.insert({w, w});
  return id;
}

Rel KripkeModel::prog_atom_rel(const ProgAtom& a) const {
  auto it = val_progs.find(a);
  return it == val_progs.end() ? Rel{} : it->second;
}

const KnowledgeSet& KripkeModel::exp_of(const World& w) const {
  static const KnowledgeSet empty;
  auto it = exp.find(w);
  return it == exp.end() ? empty : it->second;
}

std::vector<std::string> validate_model(const KripkeModel& m) {
  std::vector<std::string> out;
  std::set<World> ws(m.worlds.begin(), m.worlds.end());
  if (ws.size() != m.worlds.size()) out.push_back("duplicate world names");

  auto known = [&](const World& w) { return ws.count(w) > 0; };

  for (const auto& [i, rel] : m.epist) {
    for (const auto& [a, b] : rel)
      if (!known(a) || !known(b))
        out.push_back("~_" + i + " mentions unknown world");
    for (const auto& w : m.worlds)
      if (!rel.count({w, w})) out.push_back("~_" + i + " not reflexive at " + w);
    for (const auto& [a, b] : rel)
      if (!rel.count({b, a}))
        out.push_back("~_" + i + " not symmetric at (" + a + "," + b + ")");
    for (const auto& [a, b] : rel)
      for (const auto& [c, d] : rel)
        if (b == c && !rel.count({a, d}))
          out.push_back("~_" + i + " not transitive via (" + a + "," + b + "," + d + ")");
  }

  for (const auto& [pa, rel] : m.val_progs) {
    Rel eq = m.epist_of(pa.agent);
    std::string name = (pa.send ? "send_" : "recv_") + pa.agent;
    for (const auto& [a, b] : rel) {
      if (!known(a) || !known(b)) out.push_back("V(" + name + ") mentions unknown world");
      if (!eq.count({a, b}))
        out.push_back("V(" + name + ") ⊄ ~_" + pa.agent + " at (" + a + "," + b + ")");
    }
  }

  for (const auto& [p, set] : m.val_atoms)
    for (const auto& w : set)
      if (!known(w)) out.push_back("atom " + p + " true at unknown world " + w);

  for (const auto& [w, ks] : m.exp) {
    (void)ks;
    if (!known(w)) out.push_back("exp given for unknown world " + w);
  }
  return out;
}

static Rel compose(const Rel& a, const Rel& b) {
  Rel out;
  for (const auto& [x, y] : a)
    for (const auto& [u, v] : b)
      if (y == u) out.insert({x, v});
  return out;
}

static Rel rt_closure(const KripkeModel& m, const Rel& r) {
  Rel out;
  for (const auto& w : m.worlds) out.insert({w, w});
  for (const auto& p : r) out.insert(p);
  bool changed = true;
  while (changed) {
    changed = false;
    Rel next = compose(out, out);
    for (const auto& p : next)
      if (out.insert(p).second) changed = true;
  }
  return out;
}

Rel prog_rel(const KripkeModel& m, const Program& p) {
  switch (p->kind) {
    case ProgKind::Skip: {
      Rel id;
      for (const auto& w : m.worlds) id.insert({w, w});
      return id;
    }
    case ProgKind::Send:
      return m.prog_atom_rel({true, p->agent});
    case ProgKind::Recv:
      return m.prog_atom_rel({false, p->agent});
    case ProgKind::Seq:
      return compose(prog_rel(m, p->kids[0]), prog_rel(m, p->kids[1]));
    case ProgKind::Union: {
      Rel out = prog_rel(m, p->kids[0]);
      for (const auto& q : prog_rel(m, p->kids[1])) out.insert(q);
      return out;
    }
    case ProgKind::Star:
      return rt_closure(m, prog_rel(m, p->kids[0]));
  }
  return {};
}

bool satisfies(const KripkeModel& m, const World& s, const Formula& f,
               const EvalOpts& opts) {
  if (!m.has_world(s)) throw std::out_of_range("unknown world: " + s);
  switch (f->kind) {
    case FKind::Atom: {
      auto it = m.val_atoms.find(f->atom);
      return it != m.val_atoms.end() && it->second.count(s) > 0;
    }
    case FKind::Bottom:
      return false;
    case FKind::Impl:
      return !satisfies(m, s, f->kids[0], opts) || satisfies(m, s, f->kids[1], opts);
    case FKind::And:
      return satisfies(m, s, f->kids[0], opts) && satisfies(m, s, f->kids[1], opts);
    case FKind::Or:
      return satisfies(m, s, f->kids[0], opts) || satisfies(m, s, f->kids[1], opts);
    case FKind::Know: {
      for (const auto& [a, b] : m.epist_of(f->agent))
        if (a == s && !satisfies(m, b, f->kids[0], opts)) return false;
      return true;
    }
    case FKind::Box: {
      for (const auto& [a, b] : prog_rel(m, f->prog))
        if (a == s && !satisfies(m, b, f->kids[0], opts)) return false;
      return true;
    }
    case FKind::At: {
      const KnowledgeSet& ks = m.exp_of(s);
      if (opts.raw_membership) return ks.contains(f->msg);
      return derivable(ks, f->msg, opts.budget);
    }
  }
  return false;
}

KripkeModel restrict_model(const KripkeModel& m, const Msg& mu,
                           std::vector<std::string>* warnings) {
  KripkeModel out;
  std::set<World> keep;
  for (const auto& w : m.worlds) {
    KnowledgeSet ks = m.exp_of(w);
    ks.erase(mu);
    if (!ks.empty()) {
      keep.insert(w);
      out.worlds.push_back(w);
      out.exp[w] = ks;
    }
  }
  if (out.worlds.empty() && warnings)
    warnings->push_back("restriction by " + msg_to_string(mu) + " empties the model");

  out.agents = m.agents;
  for (const auto& [i, rel] : m.epist) {
    Rel r;
    for (const auto& [a, b] : rel)
      if (keep.count(a) && keep.count(b)) r.insert({a, b});
    out.epist[i] = r;
  }
  for (const auto& [pa, rel] : m.val_progs) {
    Rel r;
    for (const auto& [a, b] : rel)
      if (keep.count(a) && keep.count(b)) r.insert({a, b});
    out.val_progs[pa] = r;
  }
  for (const auto& [p, set] : m.val_atoms) {
    std::set<World> sw;
    for (const auto& w : set)
      if (keep.count(w)) sw.insert(w);
    out.val_atoms[p] = sw;
  }
  return out;
}

std::string print_model(const KripkeModel& m) {
  std::ostringstream os;
  os << "worlds:";
  for (const auto& w : m.worlds) os << " " << w;
  os << "\nagents:";
  for (const auto& a : m.agents) os << " " << a;
  os << "\natoms:\n";
  for (const auto& [p, set] : m.val_atoms) {
    os << "  " << p << ":";
    for (const auto& w : m.worlds)
      if (set.count(w)) os << " " << w;
    os << "\n";
  }
  for (const auto& [i, rel] : m.epist) {
    // print as partition blocks in world order
    os << "epist " << i << ":";
    std::set<World> done;
    bool first = true;
    for (const auto& w : m.worlds) {
      if (done.count(w)) continue;
      if (!first) os << " |";
      first = false;
      for (const auto& v : m.worlds)
        if (rel.count({w, v})) {
          os << " " << v;
          done.insert(v);
        }
    }
    os << "\n";
  }
  for (const auto& [pa, rel] : m.val_progs) {
    os << "prog " << (pa.send ? "send " : "recv ") << pa.agent << ":";
    for (const auto& [a, b] : rel) os << " " << a << "->" << b;
    os << "\n";
  }
  for (const auto& w : m.worlds) {
    os << "exp " << w << ":";
    bool first = true;
    for (const auto& msg : m.exp_of(w)) {
      os << (first ? " " : ", ") << msg_to_string(msg);
      first = false;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace delp
