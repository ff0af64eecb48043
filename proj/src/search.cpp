#include "delp/search.hpp"

#include <map>
#include <set>
#include <vector>

namespace delp {

namespace {

struct Pools {
  std::vector<Formula> formulas;
  std::vector<Msg> messages;
  std::vector<Program> programs;
  std::vector<std::string> agents;
  std::vector<std::string> labels;

  std::set<std::string> seen_f, seen_m, seen_p, seen_a, seen_l;

  void add_agent(const std::string& a) {
    if (!a.empty() && seen_a.insert(a).second) agents.push_back(a);
  }
  void add_label(const std::string& l) {
    if (seen_l.insert(l).second) labels.push_back(l);
  }
  void add_msg(const Msg& m0) {
    Msg m = normalize(m0);
    if (!seen_m.insert(msg_to_string(m)).second) return;
    messages.push_back(m);
    if (m->kind == MsgKind::Key) {
      add_label(m->label);
      add_agent(m->i);
      add_agent(m->j);
    }
    if (m->kind == MsgKind::Agent) add_agent(m->i);
    for (const auto& k : m->kids) add_msg(k);
  }
  void add_prog(const Program& p) {
    if (seen_p.insert(prog_to_string(p)).second) programs.push_back(p);
    if (p->kind == ProgKind::Send || p->kind == ProgKind::Recv) add_agent(p->agent);
    for (const auto& k : p->kids) add_prog(k);
  }
  void add_formula(const Formula& f0) {
    Formula f = formula_norm(f0);
    if (!seen_f.insert(formula_to_string(f)).second) return;
    formulas.push_back(f);
    if (f->kind == FKind::At) add_msg(f->msg);
    if (f->kind == FKind::Know) add_agent(f->agent);
    if (f->kind == FKind::Box) add_prog(f->prog);
    for (const auto& k : f->kids) add_formula(k);
  }
};

struct Entry {
  Formula f;
  Proof p;
  bool uses_hyp;
};

struct Engine {
  std::map<std::string, Entry> proved;
  std::vector<std::string> worklist;  // keys not yet combined
  std::string goal_key;
  std::optional<Proof> found;

  bool add(const Formula& f0, Proof p, bool uses_hyp) {
    if (found) return false;
    Formula f = formula_norm(f0);
    std::string key = formula_to_string(f);
    auto it = proved.find(key);
    if (it != proved.end()) {
      if (!it->second.uses_hyp || uses_hyp) return false;
      it->second = Entry{f, std::move(p), false};  // upgrade to hypothesis-free
      worklist.push_back(key);
      return true;
    }
    if (key == goal_key) found = p;
    proved.emplace(key, Entry{f, p, uses_hyp});
    worklist.push_back(key);
    return true;
  }

  const Entry* get(const Formula& f) const {
    auto it = proved.find(formula_to_string(formula_norm(f)));
    return it == proved.end() ? nullptr : &it->second;
  }
};

constexpr std::size_t kInstanceCap = 40000;
constexpr std::size_t kProvedCap = 60000;

void enumerate_schema(const AxiomSchema& sch, const Pools& pools, Engine& eng) {
  std::vector<std::size_t> dims;
  for (const auto& [mv, sort] : sch.sig) {
    switch (sort) {
      case Sort::FormulaS: dims.push_back(pools.formulas.size()); break;
      case Sort::MessageS: dims.push_back(pools.messages.size()); break;
      case Sort::ProgramS: dims.push_back(pools.programs.size()); break;
      case Sort::AgentS: dims.push_back(pools.agents.size()); break;
      case Sort::KeyLabelS: dims.push_back(pools.labels.size()); break;
    }
  }
  std::size_t total = 1;
  for (auto d : dims) {
    if (d == 0) return;
    total *= d;
    if (total > kInstanceCap) return;  // too wide to enumerate blindly
  }
  std::vector<std::size_t> idx(dims.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    Bindings b;
    std::size_t rem = n;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      std::size_t i = rem % dims[k];
      rem /= dims[k];
      const auto& [mv, sort] = sch.sig[k];
      Binding bd;
      bd.sort = sort;
      switch (sort) {
        case Sort::FormulaS: bd.f = pools.formulas[i]; break;
        case Sort::MessageS: bd.m = pools.messages[i]; break;
        case Sort::ProgramS: bd.p = pools.programs[i]; break;
        case Sort::AgentS: bd.id = pools.agents[i]; break;
        case Sort::KeyLabelS: bd.id = pools.labels[i]; break;
      }
      b.emplace(mv, std::move(bd));
    }
    Formula inst;
    try {
      inst = substitute(sch.tmpl, b);
    } catch (const SubstError&) {
      continue;
    }
    eng.add(inst, p_ax(sch.name, b), false);
    if (eng.found || eng.proved.size() > kProvedCap) return;
  }
}

}  // namespace

std::optional<Proof> search_proof(const Judgment& j, int depth) {
  Pools pools;
  for (const auto& [name, f] : j.context) pools.add_formula(f);
  pools.add_formula(j.goal);

  Engine eng;
  eng.goal_key = formula_to_string(formula_norm(j.goal));

  // Cheap win: the goal itself may be a propositional tautology.
  if (prop_tautology(j.goal)) {
    Bindings b;
    Binding bd;
    bd.sort = Sort::FormulaS;
    bd.f = j.goal;
    b.emplace("?inst", bd);
    return p_ax("prop-taut", b);
  }

  for (const auto& [name, f] : j.context) {
    eng.add(f, p_hyp(name), true);
    if (eng.found) return eng.found;
  }
  for (const auto& sch : schema_catalogue()) {
    if (sch.taut_check) continue;
    enumerate_schema(sch, pools, eng);
    if (eng.found) return eng.found;
  }

  for (int round = 0; round < depth && !eng.found; ++round) {
    std::vector<std::string> keys;
    keys.reserve(eng.proved.size());
    for (const auto& [k, e] : eng.proved) keys.push_back(k);

    for (const auto& key : keys) {
      if (eng.found || eng.proved.size() > kProvedCap) break;
      Entry e = eng.proved.at(key);

      if (e.f->kind == FKind::Impl) {
        const Formula& ante = e.f->kids[0];
        if (const Entry* minor = eng.get(ante))
          eng.add(e.f->kids[1], p_mp(e.p, minor->p), e.uses_hyp || minor->uses_hyp);
        else if (ante->kind == FKind::And) {
          const Entry* l = eng.get(ante->kids[0]);
          const Entry* r = eng.get(ante->kids[1]);
          if (l && r)
            eng.add(e.f->kids[1], p_mp(e.p, p_andi(l->p, r->p)),
                    e.uses_hyp || l->uses_hyp || r->uses_hyp);
        }
      }
      if (e.f->kind == FKind::And) {
        eng.add(e.f->kids[0], p_andl(e.p), e.uses_hyp);
        eng.add(e.f->kids[1], p_andr(e.p), e.uses_hyp);
      }
    }

    // Necessitation on hypothesis-free theorems, goal-directed via the pool.
    for (const auto& f : pools.formulas) {
      if (eng.found) break;
      if (f->kind != FKind::Know && f->kind != FKind::Box) continue;
      if (eng.get(f)) continue;
      const Entry* sub = eng.get(f->kids[0]);
      if (!sub || sub->uses_hyp) continue;
      if (f->kind == FKind::Know)
        eng.add(f, p_kgen(f->agent, sub->p), false);
      else
        eng.add(f, p_pgen(f->prog, sub->p), false);
    }
  }
  return eng.found;
}

}  // namespace delp
