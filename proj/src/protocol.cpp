#include "delp/protocol.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "delp/parse.hpp"
#include "delp/search.hpp"

namespace delp {

const Formula* Theory::find(const std::string& n) const {
  for (const auto& [name, f] : axioms)
    if (name == n) return &f;
  return nullptr;
}

Judgment Theory::judgment_for(const Formula& goal) const {
  Judgment j;
  j.context = axioms;
  j.goal = goal;
  return j;
}

namespace {

Formula conj_of(const std::vector<Msg>& msgs) {
  Formula f = mk_at(msgs.back());
  for (auto it = msgs.rbegin() + 1; it != msgs.rend(); ++it)
    f = mk_and(mk_at(*it), f);
  return f;
}

}  // namespace

Theory compile_protocol(const ProtocolSpec& spec) {
  auto known_agent = [&](const AgentId& a) {
    return std::find(spec.agents.begin(), spec.agents.end(), a) != spec.agents.end();
  };

  Theory t;
  t.name = spec.name;
  for (const auto& a : spec.agents) {
    auto it = spec.initial_knowledge.find(a);
    if (it == spec.initial_knowledge.end() || it->second.empty()) continue;
    t.axioms.emplace_back("init_" + a, mk_know(a, conj_of(it->second)));
  }
  for (const auto& [a, msgs] : spec.initial_knowledge)
    if (!known_agent(a))
      throw std::invalid_argument("initial knowledge for unknown agent " + a);

  int n = 0;
  for (const auto& r : spec.rounds) {
    ++n;
    if (r.unformalized) continue;
    if (!known_agent(r.sender) || !known_agent(r.receiver))
      throw std::invalid_argument("round " + std::to_string(n) +
                                  " names an unknown agent");
    if (r.payload.empty())
      throw std::invalid_argument("round " + std::to_string(n) +
                                  " has an empty payload");
    t.axioms.emplace_back(
        "round_" + std::to_string(n),
        mk_box(mk_send(r.sender), mk_box(mk_recv(r.receiver), conj_of(r.payload))));
  }
  return t;
}

namespace {

Binding bf(Formula f) { return Binding{Sort::FormulaS, std::move(f), nullptr, nullptr, ""}; }
Binding bm(Msg m) { return Binding{Sort::MessageS, nullptr, std::move(m), nullptr, ""}; }
Binding ba(std::string id) { return Binding{Sort::AgentS, nullptr, nullptr, nullptr, std::move(id)}; }
Binding bk(std::string id) { return Binding{Sort::KeyLabelS, nullptr, nullptr, nullptr, std::move(id)}; }
Binding bp(Program p) { return Binding{Sort::ProgramS, nullptr, nullptr, std::move(p), ""}; }

// From `round: [send s][recv r] body` in the context, derive `body`:
// necessitated facts are true, so peel both boxes with the knowledge bridge.
Proof unpack_round(const std::string& hyp_name, const AgentId& sender,
                   const AgentId& receiver, const Formula& body) {
  Formula recv_body = mk_box(mk_recv(receiver), body);
  Proof known_by_sender =
      p_mp(p_ax("knowsendf", {{"?i", ba(sender)}, {"?p", bf(recv_body)}}),
           p_hyp(hyp_name));
  Proof received =
      p_mp(p_ax("ktruth", {{"?a", ba(sender)}, {"?p", bf(recv_body)}}),
           known_by_sender);
  Proof known_by_receiver =
      p_mp(p_ax("knowrecvf", {{"?i", ba(receiver)}, {"?p", bf(body)}}), received);
  return p_mp(p_ax("ktruth", {{"?a", ba(receiver)}, {"?p", bf(body)}}),
              known_by_receiver);
}

// Common tail: from `@shared_key /\ @{payload}shared_key`, the key's second
// owner sent the payload; peel the box and re-internalize for `observer`.
Proof conclude_key(Proof key_fact, Proof enc_fact, const std::string& key_label,
                   const AgentId& owner_i, const AgentId& owner_j, const Msg& payload,
                   const AgentId& observer) {
  Proof sent = p_mp(p_ax("honesty-right", {{"?k", bk(key_label)},
                                           {"?i", ba(owner_i)},
                                           {"?j", ba(owner_j)},
                                           {"?m", bm(payload)}}),
                    p_andi(std::move(key_fact), std::move(enc_fact)));
  Proof fact = p_mp(p_ax("pdtruth", {{"?al", bp(mk_send(owner_j))},
                                     {"?p", bf(mk_at(payload))}}),
                    std::move(sent));
  return p_kgen(observer, std::move(fact));
}

BundledNS build_ns() {
  BundledNS ns;
  auto m = [](const char* s) { return parse_message(s); };

  ns.spec.name = "NS";
  ns.spec.agents = {"A", "S", "B"};
  ns.spec.initial_knowledge = {
      {"A", {m("nonce(Na)"), m("key Kas(A,S)")}},
      {"S", {m("key Kas(A,S)"), m("key Kbs(B,S)"), m("key Kab(A,B)")}},
      {"B", {m("key Kbs(B,S)")}},
  };
  ns.spec.rounds = {
      {"A", "S", {m("nonce(Na)")}, false},
      {"S",
       "A",
       {m("{nonce(Na)}key Kas(A,S)"), m("{key Kab(A,B)}key Kas(A,S)"),
        m("{{key Kab(A,B)}key Kbs(B,S)}key Kas(A,S)")},
       false},
      {"A", "B", {m("{key Kab(A,B)}key Kbs(B,S)")}, false},
      {"B", "A", {m("{nonce(Nb)}key Kab(A,B)")}, true},
      {"A", "B", {m("{dec(nonce(Nb))}key Kab(A,B)")}, true},
  };
  ns.theory = compile_protocol(ns.spec);

  Msg kab = m("key Kab(A,B)");

  // A learns Kab from round 2: the server encrypted it under Kas.
  {
    Formula body2 = mk_and(
        mk_at(m("{nonce(Na)}key Kas(A,S)")),
        mk_and(mk_at(m("{key Kab(A,B)}key Kas(A,S)")),
               mk_at(m("{{key Kab(A,B)}key Kbs(B,S)}key Kas(A,S)"))));
    Formula init_a_body = mk_and(mk_at(m("nonce(Na)")), mk_at(m("key Kas(A,S)")));
    Proof key_fact = p_andr(
        p_mp(p_ax("ktruth", {{"?a", ba("A")}, {"?p", bf(init_a_body)}}),
             p_hyp("init_A")));
    Proof enc_fact = p_andl(p_andr(unpack_round("round_2", "S", "A", body2)));
    ns.claims.push_back(Claim{
        "A_knows_Kab", mk_know("A", mk_at(kab)),
        conclude_key(std::move(key_fact), std::move(enc_fact), "Kas", "A", "S",
                     kab, "A"),
        true});
  }

  // B learns Kab from round 3: {Kab}Kbs forwarded by A originates with S.
  {
    Formula body3 = mk_at(m("{key Kab(A,B)}key Kbs(B,S)"));
    Proof key_fact =
        p_mp(p_ax("ktruth", {{"?a", ba("B")}, {"?p", bf(mk_at(m("key Kbs(B,S)")))}}),
             p_hyp("init_B"));
    Proof enc_fact = unpack_round("round_3", "A", "B", body3);
    ns.claims.push_back(Claim{
        "B_knows_Kab", mk_know("B", mk_at(kab)),
        conclude_key(std::move(key_fact), std::move(enc_fact), "Kbs", "B", "S",
                     kab, "B"),
        true});
  }

  // Mutual knowledge is out of reach for this run; no script on purpose.
  ns.claims.push_back(Claim{"A_knows_B_knows_Kab",
                            mk_know("A", mk_know("B", mk_at(kab))), nullptr, false});
  return ns;
}

const std::set<std::string> kAssumptionSchemas = {
    "honesty",   "honesty-right", "keyknow",
    "pdtruth",   "sendrecv-know", "knowsendf",
    "knowrecvf"};

void collect_assumptions(const CheckResult& cr, VerifyReport& rep) {
  for (const auto& s : cr.schemas_used)
    if (kAssumptionSchemas.count(s)) rep.assumptions.insert(s);
  if (cr.used_lax) rep.assumptions.insert("lax-necessitation");
}

}  // namespace

const BundledNS& bundled_ns() {
  static const BundledNS ns = build_ns();
  return ns;
}

VerifyReport verify_claim(const Theory& theory, const Formula& claim,
                          const Proof& proof, int search_depth) {
  VerifyReport rep;
  Judgment j = theory.judgment_for(claim);
  if (proof) {
    CheckResult cr = check_proof(j, proof, CheckOptions{false});
    if (!cr.ok) cr = check_proof(j, proof, CheckOptions{true});
    rep.ok = cr.ok;
    if (!cr.ok) rep.error = cr.error + " (at " + cr.at + ")";
    collect_assumptions(cr, rep);
    return rep;
  }
  rep.searched = true;
  auto found = search_proof(j, search_depth);
  if (found) {
    CheckResult cr = check_proof(j, *found, CheckOptions{false});
    rep.ok = cr.ok;
    if (!cr.ok) rep.error = "search produced an invalid proof: " + cr.error;
    collect_assumptions(cr, rep);
  } else {
    rep.search_exhausted = true;
  }
  return rep;
}

std::string print_protocol(const ProtocolSpec& spec) {
  std::ostringstream os;
  os << "protocol " << spec.name << "\n";
  os << "agents:";
  for (const auto& a : spec.agents) os << " " << a;
  os << "\n";
  for (const auto& a : spec.agents) {
    auto it = spec.initial_knowledge.find(a);
    if (it == spec.initial_knowledge.end() || it->second.empty()) continue;
    os << "knows " << a << ":";
    for (std::size_t i = 0; i < it->second.size(); ++i)
      os << (i ? ", " : " ") << msg_to_string(it->second[i]);
    os << "\n";
  }
  int n = 0;
  for (const auto& r : spec.rounds) {
    os << "round " << ++n << ": " << r.sender << " -> " << r.receiver << " :";
    for (std::size_t i = 0; i < r.payload.size(); ++i)
      os << (i ? ", " : " ") << msg_to_string(r.payload[i]);
    if (r.unformalized) os << " [unformalized]";
    os << "\n";
  }
  return os.str();
}

std::string print_theory(const Theory& t) {
  std::ostringstream os;
  for (const auto& [name, f] : t.axioms)
    os << name << " : " << formula_to_string(f) << "\n";
  return os.str();
}

}  // namespace delp
