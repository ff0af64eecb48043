#include "delp/gen.hpp"

#include <algorithm>

namespace delp {

int Gen::range(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool Gen::chance(double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

std::vector<Msg> Gen::message_pool(int max_subterms) {
  std::vector<Msg> base = {
      mk_text("t1"), mk_text("t2"), mk_nonce(mk_text("n1")),
      mk_key("k", "A", "B"), mk_agent("A"),
  };
  std::shuffle(base.begin(), base.end(), rng);
  std::vector<Msg> pool(base.begin(), base.begin() + range(2, 4));

  auto count_subterms = [](const std::vector<Msg>& p) {
    std::set<std::string> seen;
    std::vector<Msg> stack(p.begin(), p.end());
    while (!stack.empty()) {
      Msg m = stack.back();
      stack.pop_back();
      if (!seen.insert(msg_to_string(normalize(m))).second) continue;
      for (const auto& k : m->kids) stack.push_back(k);
    }
    return static_cast<int>(seen.size());
  };

  for (int tries = 0; tries < 8; ++tries) {
    Msg a = pick(pool), b = pick(pool);
    Msg next;
    switch (range(0, 2)) {
      case 0: next = mk_pair(a, b); break;
      case 1: next = mk_enc(a, b); break;
      default: next = mk_func("h", {a}); break;
    }
    auto trial = pool;
    trial.push_back(next);
    if (count_subterms(trial) <= max_subterms) pool = std::move(trial);
  }
  return pool;
}

Msg Gen::message_from(const std::vector<Msg>& pool, int depth) {
  if (depth <= 0 || chance(0.6)) return pick(pool);
  Msg a = message_from(pool, depth - 1);
  Msg b = message_from(pool, depth - 1);
  switch (range(0, 3)) {
    case 0: return mk_pair(a, b);
    case 1: return mk_enc(a, b);
    case 2: return mk_nonce(a);
    default: return mk_func("h", {a});
  }
}

KnowledgeSet Gen::gamma_from(const std::vector<Msg>& pool, int max_size) {
  KnowledgeSet ks;
  int n = range(1, max_size);
  for (int i = 0; i < n; ++i) ks.insert(message_from(pool, 1));
  return ks;
}

Program Gen::program(const std::vector<AgentId>& agents, int depth,
                     bool allow_star) {
  if (depth <= 0 || chance(0.5)) {
    if (chance(0.1)) return mk_skip();
    const AgentId& a = pick(agents);
    return chance(0.5) ? mk_send(a) : mk_recv(a);
  }
  Program a = program(agents, depth - 1, allow_star);
  switch (range(0, allow_star ? 2 : 1)) {
    case 0: return mk_seq(a, program(agents, depth - 1, allow_star));
    case 1: return mk_union(a, program(agents, depth - 1, allow_star));
    default: return mk_star(a);
  }
}

Formula Gen::formula(const std::vector<AtomId>& atoms,
                     const std::vector<AgentId>& agents,
                     const std::vector<Msg>& msgs, FormulaOpts o) {
  bool leaf = o.size <= 1;
  if (!leaf && chance(0.25)) leaf = true;
  if (leaf) {
    if (o.allow_at && !msgs.empty() && chance(0.4)) return mk_at(pick(msgs));
    if (chance(0.05)) return mk_bottom();
    if (!atoms.empty()) return mk_atom(pick(atoms));
    return mk_bottom();
  }
  o.size -= 1;
  bool modal_ok = o.max_modal_depth > 0 && !agents.empty();
  int choice = range(0, 5);
  if ((choice == 4 && !(modal_ok && o.allow_know)) ||
      (choice == 5 && !(modal_ok && o.allow_box)))
    choice = range(0, 3);
  switch (choice) {
    case 0: return mk_impl(formula(atoms, agents, msgs, o),
                           formula(atoms, agents, msgs, o));
    case 1: return mk_and(formula(atoms, agents, msgs, o),
                          formula(atoms, agents, msgs, o));
    case 2: return mk_or(formula(atoms, agents, msgs, o),
                         formula(atoms, agents, msgs, o));
    case 3: return mk_not(formula(atoms, agents, msgs, o));
    case 4: {
      o.max_modal_depth -= 1;
      return mk_know(pick(agents), formula(atoms, agents, msgs, o));
    }
    default: {
      o.max_modal_depth -= 1;
      Program p = program(agents, 1, o.allow_star);
      return mk_box(p, formula(atoms, agents, msgs, o));
    }
  }
}

KripkeModel Gen::model(ProgMode mode, int max_worlds, int max_agents,
                       int max_atoms) {
  KripkeModel m;
  int nw = range(1, max_worlds);
  for (int i = 0; i < nw; ++i) m.worlds.push_back("w" + std::to_string(i));
  static const std::vector<AgentId> kAgents = {"A", "B", "C"};
  static const std::vector<AtomId> kAtoms = {"p", "q", "r", "s"};
  int na = range(1, max_agents);
  m.agents.assign(kAgents.begin(), kAgents.begin() + na);
  int nat = range(0, max_atoms);
  for (int i = 0; i < nat; ++i) {
    std::set<World> holds;
    for (const auto& w : m.worlds)
      if (chance(0.5)) holds.insert(w);
    m.val_atoms[kAtoms[i]] = holds;
  }

  for (const auto& a : m.agents) {
    // Random partition: shuffle then cut into blocks.
    std::vector<World> order = m.worlds;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::vector<World>> blocks;
    std::vector<World> cur;
    for (const auto& w : order) {
      cur.push_back(w);
      if (chance(0.4)) {
        blocks.push_back(cur);
        cur.clear();
      }
    }
    if (!cur.empty()) blocks.push_back(cur);
    Rel r;
    for (const auto& blk : blocks)
      for (const auto& x : blk)
        for (const auto& y : blk) r.insert({x, y});
    m.epist[a] = r;

    for (bool send : {true, false}) {
      Rel v;
      switch (mode) {
        case ProgMode::EqualEpist:
          v = r;
          break;
        case ProgMode::Reflexive:
          for (const auto& w : m.worlds) v.insert({w, w});
          for (const auto& pr : r)
            if (chance(0.4)) v.insert(pr);
          break;
        case ProgMode::Subset:
          for (const auto& pr : r)
            if (chance(0.4)) v.insert(pr);
          break;
      }
      m.val_progs[ProgAtom{send, a}] = v;
    }
  }

  auto pool = message_pool(8);
  for (const auto& w : m.worlds) m.exp[w] = gamma_from(pool, 4);
  return m;
}

ProtocolSpec Gen::protocol() {
  ProtocolSpec spec;
  spec.name = "P" + std::to_string(range(0, 999));
  static const std::vector<AgentId> kAgents = {"A", "B", "S"};
  int na = range(2, 3);
  spec.agents.assign(kAgents.begin(), kAgents.begin() + na);
  auto pool = message_pool(8);
  for (const auto& a : spec.agents) {
    if (chance(0.3)) continue;
    std::vector<Msg> ks;
    int n = range(1, 3);
    for (int i = 0; i < n; ++i) ks.push_back(normalize(message_from(pool, 1)));
    spec.initial_knowledge[a] = ks;
  }
  int nr = range(1, 4);
  for (int r = 0; r < nr; ++r) {
    Round rd;
    rd.sender = pick(spec.agents);
    do {
      rd.receiver = pick(spec.agents);
    } while (rd.receiver == rd.sender);
    int np = range(1, 2);
    for (int i = 0; i < np; ++i) rd.payload.push_back(normalize(message_from(pool, 1)));
    rd.unformalized = chance(0.2);
    spec.rounds.push_back(rd);
  }
  return spec;
}

namespace {

Proof random_tree(Gen& g, const std::vector<std::string>& hyps,
                  const std::vector<Msg>& msgs, int depth) {
  if (depth <= 0 || g.chance(0.4)) {
    if (g.chance(0.5) && !hyps.empty()) return p_hyp(g.pick(hyps));
    const auto& cat = schema_catalogue();
    const AxiomSchema& sch = cat[static_cast<std::size_t>(
        g.range(0, static_cast<int>(cat.size()) - 1))];
    static const std::vector<AgentId> kAgents = {"A", "B", "C"};
    Bindings b;
    for (const auto& [mv, sort] : sch.sig) {
      Binding bd;
      bd.sort = sort;
      switch (sort) {
        case Sort::FormulaS:
          bd.f = g.chance(0.5) ? mk_atom("p") : mk_at(g.pick(msgs));
          break;
        case Sort::MessageS: bd.m = g.pick(msgs); break;
        case Sort::ProgramS: bd.p = g.program(kAgents, 1, true); break;
        case Sort::AgentS: bd.id = g.pick(kAgents); break;
        case Sort::KeyLabelS: bd.id = "k"; break;
      }
      b.emplace(mv, std::move(bd));
    }
    return p_ax(sch.name, std::move(b));
  }
  switch (g.range(0, 6)) {
    case 0: return p_mp(random_tree(g, hyps, msgs, depth - 1),
                        random_tree(g, hyps, msgs, depth - 1));
    case 1: return p_kgen("A", random_tree(g, hyps, msgs, depth - 1));
    case 2: return p_pgen(g.program({"A", "B"}, 1, true),
                          random_tree(g, hyps, msgs, depth - 1));
    case 3: return p_andi(random_tree(g, hyps, msgs, depth - 1),
                          random_tree(g, hyps, msgs, depth - 1));
    case 4: return p_andl(random_tree(g, hyps, msgs, depth - 1));
    case 5: return p_andr(random_tree(g, hyps, msgs, depth - 1));
    default: return p_hyp(hyps.empty() ? "h0" : g.pick(hyps));
  }
}

}  // namespace

ProofFile Gen::proof_file() {
  ProofFile pf;
  int nh = range(0, 3);
  for (int i = 0; i < nh; ++i) pf.ctx.push_back("h" + std::to_string(i));
  auto pool = message_pool(6);
  pf.goal = formula({"p", "q"}, {"A", "B"}, pool, FormulaOpts{2, 4, true, true, true, true});
  pf.root = random_tree(*this, pf.ctx, pool, 3);
  return pf;
}

KripkeModel duplicate_worlds(const KripkeModel& m, const std::string& suffix) {
  auto dup = [&](const World& w) { return w + suffix; };
  KripkeModel n;
  n.agents = m.agents;
  for (const auto& w : m.worlds) {
    n.worlds.push_back(w);
    n.worlds.push_back(dup(w));
  }
  for (const auto& [a, ws] : m.val_atoms) {
    std::set<World> s;
    for (const auto& w : ws) {
      s.insert(w);
      s.insert(dup(w));
    }
    n.val_atoms[a] = s;
  }
  auto lift = [&](const Rel& r) {
    Rel out;
    for (const auto& [x, y] : r)
      for (const auto& xx : {x, dup(x)})
        for (const auto& yy : {y, dup(y)}) out.insert({xx, yy});
    return out;
  };
  for (const auto& [a, r] : m.epist) n.epist[a] = lift(r);
  for (const auto& [pa, r] : m.val_progs) n.val_progs[pa] = lift(r);
  for (const auto& [w, ks] : m.exp) {
    n.exp[w] = ks;
    n.exp[dup(w)] = ks;
  }
  return n;
}

namespace {

Proof clone_with(const Proof& p, std::size_t child, Proof replacement) {
  auto q = std::make_shared<ProofNode>(*p);
  q->kids[child] = std::move(replacement);
  return q;
}

void mutants_of_node(const Proof& p, std::vector<Proof>& out) {
  switch (p->kind) {
    case PKind::Hyp: {
      auto q = std::make_shared<ProofNode>(*p);
      q->name += "_x";
      out.push_back(q);
      break;
    }
    case PKind::Ax: {
      for (const auto& [mv, b] : p->binds) {
        auto q = std::make_shared<ProofNode>(*p);
        Binding nb = b;
        switch (b.sort) {
          case Sort::FormulaS: nb.f = mk_and(b.f, b.f); break;
          case Sort::MessageS: nb.m = mk_pair(b.m, b.m); break;
          case Sort::ProgramS: nb.p = mk_seq(b.p, b.p); break;
          default: nb.id += "x";
        }
        q->binds[mv] = nb;
        out.push_back(q);
      }
      break;
    }
    case PKind::MP:
    case PKind::AndI: {
      auto q = std::make_shared<ProofNode>(*p);
      std::swap(q->kids[0], q->kids[1]);
      out.push_back(q);
      break;
    }
    case PKind::KGen: {
      auto q = std::make_shared<ProofNode>(*p);
      q->agent += "x";
      out.push_back(q);
      break;
    }
    case PKind::PGen: {
      auto q = std::make_shared<ProofNode>(*p);
      q->prog = mk_seq(p->prog, p->prog);
      out.push_back(q);
      break;
    }
    default:
      break;
  }
  if (!p->kids.empty()) out.push_back(p->kids[0]);  // node deletion
}

void mutate_rec(const Proof& p, std::vector<Proof>& out) {
  mutants_of_node(p, out);
  for (std::size_t i = 0; i < p->kids.size(); ++i) {
    std::vector<Proof> sub;
    mutate_rec(p->kids[i], sub);
    for (auto& s : sub) out.push_back(clone_with(p, i, std::move(s)));
  }
}

}  // namespace

std::vector<Proof> mutate_proof(const Proof& p) {
  std::vector<Proof> out;
  mutate_rec(p, out);
  return out;
}

}  // namespace delp
