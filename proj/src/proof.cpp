#include "delp/proof.hpp"

#include <sstream>

#include "delp/parse.hpp"

namespace delp {

std::string sort_name(Sort s) {
  switch (s) {
    case Sort::FormulaS: return "formula";
    case Sort::MessageS: return "message";
    case Sort::ProgramS: return "program";
    case Sort::AgentS: return "agent";
    case Sort::KeyLabelS: return "key-label";
  }
  return "?";
}

namespace {

AxiomSchema make_schema(std::string name,
                        std::vector<std::pair<std::string, Sort>> sig,
                        const std::string& tmpl, bool taut = false) {
  AxiomSchema s;
  s.name = std::move(name);
  s.sig = std::move(sig);
  s.tmpl = parse_formula(tmpl);
  s.taut_check = taut;
  return s;
}

std::vector<AxiomSchema> build_catalogue() {
  using S = Sort;
  std::vector<AxiomSchema> cat;
  cat.push_back(make_schema("prop-taut", {{"?inst", S::FormulaS}}, "?inst", true));
  cat.push_back(make_schema(
      "kdist", {{"?a", S::AgentS}, {"?p", S::FormulaS}, {"?q", S::FormulaS}},
      "K ?a (?p -> ?q) -> (K ?a ?p -> K ?a ?q)"));
  cat.push_back(make_schema("ktruth", {{"?a", S::AgentS}, {"?p", S::FormulaS}},
                            "K ?a ?p -> ?p"));
  cat.push_back(make_schema("k4", {{"?a", S::AgentS}, {"?p", S::FormulaS}},
                            "K ?a ?p -> K ?a K ?a ?p"));
  cat.push_back(make_schema("k5", {{"?a", S::AgentS}, {"?p", S::FormulaS}},
                            "!K ?a ?p -> K ?a !K ?a ?p"));
  cat.push_back(make_schema(
      "progdist", {{"?al", S::ProgramS}, {"?p", S::FormulaS}, {"?q", S::FormulaS}},
      "[?al](?p -> ?q) -> ([?al]?p -> [?al]?q)"));
  cat.push_back(make_schema(
      "progconj", {{"?al", S::ProgramS}, {"?p", S::FormulaS}, {"?q", S::FormulaS}},
      "([?al](?p /\\ ?q) -> [?al]?p /\\ [?al]?q) /\\ "
      "([?al]?p /\\ [?al]?q -> [?al](?p /\\ ?q))"));
  cat.push_back(make_schema(
      "progunion", {{"?al", S::ProgramS}, {"?be", S::ProgramS}, {"?p", S::FormulaS}},
      "([?al + ?be]?p -> [?al]?p /\\ [?be]?p) /\\ "
      "([?al]?p /\\ [?be]?p -> [?al + ?be]?p)"));
  cat.push_back(make_schema(
      "progcomp", {{"?al", S::ProgramS}, {"?be", S::ProgramS}, {"?p", S::FormulaS}},
      "([?al ; ?be]?p -> [?al][?be]?p) /\\ ([?al ; ?be]?p -> [?al][?be]?p)"));
  cat.push_back(make_schema(
      "sendrecv-know", {{"?i", S::AgentS}, {"?m", S::MessageS}},
      "[send ?i]@?m \\/ [recv ?i]@?m -> K ?i @?m"));
  cat.push_back(make_schema(
      "kand", {{"?i", S::AgentS}, {"?p", S::FormulaS}, {"?q", S::FormulaS}},
      "K ?i ?p /\\ K ?i ?q -> K ?i (?p /\\ ?q)"));
  cat.push_back(make_schema("pdtruth", {{"?al", S::ProgramS}, {"?p", S::FormulaS}},
                            "[?al]?p -> ?p"));
  cat.push_back(make_schema(
      "honesty",
      {{"?m", S::MessageS}, {"?k", S::KeyLabelS}, {"?i", S::AgentS}, {"?j", S::AgentS}},
      "@{?m}key ?k(?i,?j) /\\ @key ?k(?i,?j) -> [send ?i]@?m \\/ [send ?j]@?m"));
  cat.push_back(make_schema(
      "honesty-right",
      {{"?k", S::KeyLabelS}, {"?i", S::AgentS}, {"?j", S::AgentS}, {"?m", S::MessageS}},
      "@key ?k(?i,?j) /\\ @{?m}key ?k(?i,?j) -> [send ?j]@?m"));
  cat.push_back(make_schema(
      "keyknow", {{"?k", S::KeyLabelS}, {"?i", S::AgentS}, {"?j", S::AgentS}},
      "@key ?k(?i,?j) -> K ?i @key ?k(?i,?j) \\/ K ?j @key ?k(?i,?j)"));
  cat.push_back(make_schema("knowsendf", {{"?i", S::AgentS}, {"?p", S::FormulaS}},
                            "[send ?i]?p -> K ?i ?p"));
  cat.push_back(make_schema("knowrecvf", {{"?i", S::AgentS}, {"?p", S::FormulaS}},
                            "[recv ?i]?p -> K ?i ?p"));
  return cat;
}

}  // namespace

const std::vector<AxiomSchema>& schema_catalogue() {
  static const std::vector<AxiomSchema> cat = build_catalogue();
  return cat;
}

const AxiomSchema* find_schema(const std::string& name) {
  for (const auto& s : schema_catalogue())
    if (s.name == name) return &s;
  return nullptr;
}

bool is_honesty_schema(const std::string& name) {
  return name == "honesty" || name == "honesty-right";
}

namespace {

bool is_meta(const std::string& id) { return !id.empty() && id[0] == '?'; }

const Binding& lookup(const Bindings& b, const std::string& name, Sort want) {
  auto it = b.find(name);
  if (it == b.end()) throw SubstError("unbound metavariable " + name);
  if (it->second.sort != want)
    throw SubstError("metavariable " + name + " bound as " +
                     sort_name(it->second.sort) + ", expected " + sort_name(want));
  return it->second;
}

std::string subst_id(const std::string& id, const Bindings& b, Sort want) {
  if (!is_meta(id)) return id;
  return lookup(b, id, want).id;
}

Msg subst_msg(const Msg& m, const Bindings& b) {
  switch (m->kind) {
    case MsgKind::Text:
      if (is_meta(m->label)) return lookup(b, m->label, Sort::MessageS).m;
      return m;
    case MsgKind::Key:
      return mk_key(subst_id(m->label, b, Sort::KeyLabelS),
                    subst_id(m->i, b, Sort::AgentS),
                    subst_id(m->j, b, Sort::AgentS));
    case MsgKind::Agent:
      return mk_agent(subst_id(m->i, b, Sort::AgentS));
    default: {
      std::vector<Msg> kids;
      for (const auto& k : m->kids) kids.push_back(subst_msg(k, b));
      auto r = std::make_shared<Message>(*m);
      r->kids = std::move(kids);
      return r;
    }
  }
}

Program subst_prog(const Program& p, const Bindings& b) {
  switch (p->kind) {
    case ProgKind::Send:
      if (is_meta(p->agent)) {
        auto it = b.find(p->agent);
        if (it == b.end()) throw SubstError("unbound metavariable " + p->agent);
        if (it->second.sort == Sort::ProgramS) return it->second.p;
        if (it->second.sort == Sort::AgentS) return mk_send(it->second.id);
        throw SubstError("metavariable " + p->agent + " bound as " +
                         sort_name(it->second.sort) + ", expected program or agent");
      }
      return p;
    case ProgKind::Recv:
      return mk_recv(subst_id(p->agent, b, Sort::AgentS));
    case ProgKind::Skip:
      return p;
    default: {
      std::vector<Program> kids;
      for (const auto& k : p->kids) kids.push_back(subst_prog(k, b));
      auto r = std::make_shared<ProgramNode>(*p);
      r->kids = std::move(kids);
      return r;
    }
  }
}

}  // namespace

Formula substitute(const Formula& tmpl, const Bindings& b) {
  switch (tmpl->kind) {
    case FKind::Atom:
      if (is_meta(tmpl->atom)) return lookup(b, tmpl->atom, Sort::FormulaS).f;
      return tmpl;
    case FKind::Bottom:
      return tmpl;
    case FKind::At:
      return mk_at(subst_msg(tmpl->msg, b));
    case FKind::Know:
      return mk_know(subst_id(tmpl->agent, b, Sort::AgentS),
                     substitute(tmpl->kids[0], b));
    case FKind::Box:
      return mk_box(subst_prog(tmpl->prog, b), substitute(tmpl->kids[0], b));
    default: {
      std::vector<Formula> kids;
      for (const auto& k : tmpl->kids) kids.push_back(substitute(k, b));
      auto r = std::make_shared<FormulaNode>(*tmpl);
      r->kids = std::move(kids);
      return r;
    }
  }
}

namespace {

// Collects the opaque subformulas of a propositional skeleton.
void collect_opaque(const Formula& f, std::vector<Formula>& vars) {
  switch (f->kind) {
    case FKind::Impl:
    case FKind::And:
    case FKind::Or:
      collect_opaque(f->kids[0], vars);
      collect_opaque(f->kids[1], vars);
      return;
    case FKind::Bottom:
      return;
    default: {
      Formula n = formula_norm(f);
      for (const auto& v : vars)
        if (formula_eq(v, n)) return;
      vars.push_back(n);
      return;
    }
  }
}

bool eval_skeleton(const Formula& f, const std::vector<Formula>& vars,
                   unsigned assignment) {
  switch (f->kind) {
    case FKind::Bottom:
      return false;
    case FKind::Impl:
      return !eval_skeleton(f->kids[0], vars, assignment) ||
             eval_skeleton(f->kids[1], vars, assignment);
    case FKind::And:
      return eval_skeleton(f->kids[0], vars, assignment) &&
             eval_skeleton(f->kids[1], vars, assignment);
    case FKind::Or:
      return eval_skeleton(f->kids[0], vars, assignment) ||
             eval_skeleton(f->kids[1], vars, assignment);
    default: {
      Formula n = formula_norm(f);
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (formula_eq(vars[i], n)) return (assignment >> i) & 1u;
      return false;  // unreachable: collect_opaque saw every leaf
    }
  }
}

}  // namespace

bool prop_tautology(const Formula& f, std::string* error) {
  std::vector<Formula> vars;
  collect_opaque(f, vars);
  if (vars.size() > 16) {
    if (error)
      *error = "propositional skeleton has " + std::to_string(vars.size()) +
               " distinct atoms (limit 16); decompose the step";
    return false;
  }
  for (unsigned a = 0; a < (1u << vars.size()); ++a)
    if (!eval_skeleton(f, vars, a)) {
      if (error) *error = "not a propositional tautology";
      return false;
    }
  return true;
}

Proof p_hyp(std::string name) {
  auto q = std::make_shared<ProofNode>();
  q->kind = PKind::Hyp;
  q->name = std::move(name);
  return q;
}

Proof p_ax(std::string schema, Bindings b) {
  auto q = std::make_shared<ProofNode>();
  q->kind = PKind::Ax;
  q->name = std::move(schema);
  q->binds = std::move(b);
  return q;
}

Proof p_mp(Proof major, Proof minor) {
  auto q = std::make_shared<ProofNode>();
  q->kind = PKind::MP;
  q->kids = {std::move(major), std::move(minor)};
  return q;
}

Proof p_kgen(AgentId i, Proof sub) {
  auto q = std::make_shared<ProofNode>();
  q->kind = PKind::KGen;
  q->agent = std::move(i);
  q->kids = {std::move(sub)};
  return q;
}

Proof p_pgen(Program a, Proof sub) {
  auto q = std::make_shared<ProofNode>();
  q->kind = PKind::PGen;
  q->prog = std::move(a);
  q->kids = {std::move(sub)};
  return q;
}

Proof p_andi(Proof l, Proof r) {
  auto q = std::make_shared<ProofNode>();
  q->kind = PKind::AndI;
  q->kids = {std::move(l), std::move(r)};
  return q;
}

Proof p_andl(Proof sub) {
  auto q = std::make_shared<ProofNode>();
  q->kind = PKind::AndL;
  q->kids = {std::move(sub)};
  return q;
}

Proof p_andr(Proof sub) {
  auto q = std::make_shared<ProofNode>();
  q->kind = PKind::AndR;
  q->kids = {std::move(sub)};
  return q;
}

namespace {

struct NodeInfo {
  Formula concl;
  bool uses_hyp = false;
};

struct Checker {
  const Judgment& j;
  const CheckOptions& opts;
  CheckResult& res;

  std::optional<NodeInfo> run(const Proof& p, const std::string& path) {
    auto fail = [&](const std::string& msg) -> std::optional<NodeInfo> {
      if (res.error.empty()) {
        res.error = msg;
        res.at = path;
      }
      return std::nullopt;
    };

    switch (p->kind) {
      case PKind::Hyp: {
        for (const auto& [name, f] : j.context)
          if (name == p->name) return NodeInfo{f, true};
        return fail("hypothesis '" + p->name + "' not in context");
      }
      case PKind::Ax: {
        const AxiomSchema* sch = find_schema(p->name);
        if (!sch) return fail("unknown schema '" + p->name + "'");
        for (const auto& [mv, bind] : p->binds) {
          bool in_sig = false;
          for (const auto& [n, s] : sch->sig) in_sig = in_sig || n == mv;
          if (!in_sig)
            return fail("schema '" + p->name + "' has no metavariable '" + mv + "'");
        }
        Formula inst;
        try {
          inst = substitute(sch->tmpl, p->binds);
        } catch (const SubstError& e) {
          return fail(std::string("schema instantiation: ") + e.what());
        }
        if (sch->taut_check) {
          std::string err;
          if (!prop_tautology(inst, &err)) return fail(err);
        }
        res.schemas_used.insert(p->name);
        return NodeInfo{inst, false};
      }
      case PKind::MP: {
        auto major = run(p->kids[0], path + ".0");
        if (!major) return std::nullopt;
        auto minor = run(p->kids[1], path + ".1");
        if (!minor) return std::nullopt;
        if (major->concl->kind != FKind::Impl)
          return fail("modus ponens major premise is not an implication");
        if (!formula_eq_norm(major->concl->kids[0], minor->concl))
          return fail("modus ponens premise mismatch: expected " +
                      formula_to_string(major->concl->kids[0]) + ", proved " +
                      formula_to_string(minor->concl));
        return NodeInfo{major->concl->kids[1], major->uses_hyp || minor->uses_hyp};
      }
      case PKind::KGen:
      case PKind::PGen: {
        auto sub = run(p->kids[0], path + ".0");
        if (!sub) return std::nullopt;
        if (sub->uses_hyp) {
          if (!opts.lax_necessitation)
            return fail("necessitation over a hypothesis-using subproof "
                        "(enable lax necessitation to accept)");
          res.used_lax = true;
        }
        Formula c = p->kind == PKind::KGen ? mk_know(p->agent, sub->concl)
                                           : mk_box(p->prog, sub->concl);
        return NodeInfo{c, sub->uses_hyp};
      }
      case PKind::AndI: {
        auto l = run(p->kids[0], path + ".0");
        if (!l) return std::nullopt;
        auto r = run(p->kids[1], path + ".1");
        if (!r) return std::nullopt;
        return NodeInfo{mk_and(l->concl, r->concl), l->uses_hyp || r->uses_hyp};
      }
      case PKind::AndL:
      case PKind::AndR: {
        auto sub = run(p->kids[0], path + ".0");
        if (!sub) return std::nullopt;
        if (sub->concl->kind != FKind::And)
          return fail("projection applied to a non-conjunction");
        return NodeInfo{sub->concl->kids[p->kind == PKind::AndL ? 0 : 1],
                        sub->uses_hyp};
      }
    }
    return fail("corrupt proof node");
  }
};

}  // namespace

CheckResult check_proof(const Judgment& j, const Proof& p, const CheckOptions& opts) {
  CheckResult res;
  Checker chk{j, opts, res};
  auto info = chk.run(p, "root");
  if (!info) return res;
  if (!formula_eq_norm(info->concl, j.goal)) {
    res.error = "proof concludes " + formula_to_string(info->concl) +
                " but the goal is " + formula_to_string(j.goal);
    res.at = "root";
    return res;
  }
  res.ok = true;
  res.conclusion = info->concl;
  return res;
}

namespace {

Binding bf(Formula f) { return Binding{Sort::FormulaS, std::move(f), nullptr, nullptr, ""}; }
Binding bm(Msg m) { return Binding{Sort::MessageS, nullptr, std::move(m), nullptr, ""}; }
Binding bp(Program p) { return Binding{Sort::ProgramS, nullptr, nullptr, std::move(p), ""}; }
Binding ba(std::string id) { return Binding{Sort::AgentS, nullptr, nullptr, nullptr, std::move(id)}; }
Binding bk(std::string id) { return Binding{Sort::KeyLabelS, nullptr, nullptr, nullptr, std::move(id)}; }

std::map<std::string, Script> build_scripts() {
  std::map<std::string, Script> out;

  // Message meaning for shared keys: from K i (shared key) and a receipt of
  // an encryption under it, conclude the partner sent the body.
  {
    Msg keyt = parse_message("key k(A,B)");
    Msg body = parse_message("m");
    Formula at_key = mk_at(keyt);
    Formula at_enc = mk_at(mk_enc(body, keyt));
    Judgment j;
    j.context.emplace_back("mmsk_key", mk_know("A", at_key));
    j.context.emplace_back("mmsk_recv", mk_box(mk_recv("A"), at_enc));
    j.goal = mk_know("A", mk_box(mk_send("B"), mk_at(body)));

    Proof known_enc =
        p_mp(p_ax("knowrecvf", {{"?i", ba("A")}, {"?p", bf(at_enc)}}),
             p_hyp("mmsk_recv"));
    Proof pair = p_andi(p_hyp("mmsk_key"), known_enc);
    Proof joined =
        p_mp(p_ax("kand", {{"?i", ba("A")}, {"?p", bf(at_key)}, {"?q", bf(at_enc)}}),
             pair);
    Proof facts =
        p_mp(p_ax("ktruth", {{"?a", ba("A")}, {"?p", bf(mk_and(at_key, at_enc))}}),
             joined);
    Proof sent = p_mp(p_ax("honesty-right", {{"?k", bk("k")},
                                             {"?i", ba("A")},
                                             {"?j", ba("B")},
                                             {"?m", bm(body)}}),
                      facts);
    out["MMSK"] = Script{j, p_kgen("A", sent), true};
  }

  // Jurisdiction: K distributivity over the control implication.
  {
    Formula at_m = mk_at(parse_message("m"));
    Formula inner = mk_impl(mk_know("B", at_m), at_m);
    Judgment j;
    j.context.emplace_back("jr_control", mk_know("A", inner));
    j.context.emplace_back("jr_belief", mk_know("A", mk_know("B", at_m)));
    j.goal = mk_know("A", at_m);
    Proof dist = p_ax(
        "kdist", {{"?a", ba("A")}, {"?p", bf(mk_know("B", at_m))}, {"?q", bf(at_m)}});
    out["Jurisdiction"] =
        Script{j, p_mp(p_mp(dist, p_hyp("jr_control")), p_hyp("jr_belief")), false};
  }

  // A completed send/recv exchange leaves the receiver knowing the payload.
  {
    Formula phi = mk_atom("p");
    Formula recv_phi = mk_box(mk_recv("B"), phi);
    Judgment j;
    j.context.emplace_back("secv_run", mk_box(mk_send("A"), recv_phi));
    j.goal = mk_know("B", phi);
    Proof known = p_mp(p_ax("knowsendf", {{"?i", ba("A")}, {"?p", bf(recv_phi)}}),
                       p_hyp("secv_run"));
    Proof stripped =
        p_mp(p_ax("ktruth", {{"?a", ba("A")}, {"?p", bf(recv_phi)}}), known);
    Proof goal = p_mp(p_ax("knowrecvf", {{"?i", ba("B")}, {"?p", bf(phi)}}), stripped);
    out["secv-imp-knowledge"] = Script{j, goal, false};
  }

  return out;
}

}  // namespace

const std::map<std::string, Script>& derived_rule_scripts() {
  static const std::map<std::string, Script> scripts = build_scripts();
  return scripts;
}

std::string proof_to_string(const Proof& p) {
  std::ostringstream os;
  switch (p->kind) {
    case PKind::Hyp:
      os << "(hyp " << p->name << ")";
      break;
    case PKind::Ax: {
      os << "(ax " << p->name;
      for (const auto& [mv, b] : p->binds) {
        os << " (" << mv << " ";
        switch (b.sort) {
          case Sort::FormulaS: os << formula_to_string(b.f); break;
          case Sort::MessageS: os << msg_to_string(b.m); break;
          case Sort::ProgramS: os << prog_to_string(b.p); break;
          default: os << b.id;
        }
        os << ")";
      }
      os << ")";
      break;
    }
    case PKind::MP:
      os << "(mp " << proof_to_string(p->kids[0]) << " "
         << proof_to_string(p->kids[1]) << ")";
      break;
    case PKind::KGen:
      os << "(kgen " << p->agent << " " << proof_to_string(p->kids[0]) << ")";
      break;
    case PKind::PGen:
      os << "(pgen " << prog_to_string(p->prog) << " "
         << proof_to_string(p->kids[0]) << ")";
      break;
    case PKind::AndI:
      os << "(andi " << proof_to_string(p->kids[0]) << " "
         << proof_to_string(p->kids[1]) << ")";
      break;
    case PKind::AndL:
      os << "(andl " << proof_to_string(p->kids[0]) << ")";
      break;
    case PKind::AndR:
      os << "(andr " << proof_to_string(p->kids[0]) << ")";
      break;
  }
  return os.str();
}

}  // namespace delp
