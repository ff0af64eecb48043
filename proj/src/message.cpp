#include "delp/message.hpp"

#include <algorithm>
#include <sstream>

namespace delp {

static Msg mk(MsgKind k, std::string label, AgentId i, AgentId j,
              std::vector<Msg> kids) {
  auto m = std::make_shared<Message>();
  m->kind = k;
  m->label = std::move(label);
  m->i = std::move(i);
  m->j = std::move(j);
  m->kids = std::move(kids);
  return m;
}

Msg mk_text(std::string label) { return mk(MsgKind::Text, std::move(label), "", "", {}); }
Msg mk_key(std::string label, AgentId i, AgentId j) {
  return mk(MsgKind::Key, std::move(label), std::move(i), std::move(j), {});
}
Msg mk_nonce(Msg body) { return mk(MsgKind::Nonce, "", "", "", {std::move(body)}); }
Msg mk_agent(AgentId i) { return mk(MsgKind::Agent, "", std::move(i), "", {}); }
Msg mk_pair(Msg l, Msg r) { return mk(MsgKind::Pair, "", "", "", {std::move(l), std::move(r)}); }
Msg mk_enc(Msg body, Msg key) { return mk(MsgKind::Enc, "", "", "", {std::move(body), std::move(key)}); }
Msg mk_func(std::string f, std::vector<Msg> args) {
  return mk(MsgKind::Func, std::move(f), "", "", std::move(args));
}

int msg_cmp(const Msg& a, const Msg& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  if (int c = a->label.compare(b->label)) return c;
  if (int c = a->i.compare(b->i)) return c;
  if (int c = a->j.compare(b->j)) return c;
  if (a->kids.size() != b->kids.size())
    return a->kids.size() < b->kids.size() ? -1 : 1;
  for (std::size_t n = 0; n < a->kids.size(); ++n)
    if (int c = msg_cmp(a->kids[n], b->kids[n])) return c;
  return 0;
}

bool msg_eq(const Msg& a, const Msg& b) { return msg_cmp(a, b) == 0; }

Msg normalize(const Msg& m) {
  switch (m->kind) {
    case MsgKind::Text:
    case MsgKind::Agent:
      return m;
    case MsgKind::Key:
      if (m->j < m->i) return mk_key(m->label, m->j, m->i);
      return m;
    default: {
      std::vector<Msg> kids;
      kids.reserve(m->kids.size());
      bool changed = false;
      for (const auto& k : m->kids) {
        Msg nk = normalize(k);
        changed = changed || nk.get() != k.get();
        kids.push_back(std::move(nk));
      }
      if (!changed) return m;
      auto r = std::make_shared<Message>(*m);
      r->kids = std::move(kids);
      return r;
    }
  }
}

int msg_depth(const Msg& m) {
  int d = 0;
  for (const auto& k : m->kids) d = std::max(d, 1 + msg_depth(k));
  return d;
}

std::string msg_to_string(const Msg& m) {
  std::ostringstream os;
  switch (m->kind) {
    case MsgKind::Text:
      os << m->label;
      break;
    case MsgKind::Key:
      os << "key " << m->label << "(" << m->i << "," << m->j << ")";
      break;
    case MsgKind::Nonce:
      os << "nonce(" << msg_to_string(m->kids[0]) << ")";
      break;
    case MsgKind::Agent:
      os << "agent " << m->i;
      break;
    case MsgKind::Pair:
      os << "(" << msg_to_string(m->kids[0]) << ", " << msg_to_string(m->kids[1]) << ")";
      break;
    case MsgKind::Enc:
      os << "{" << msg_to_string(m->kids[0]) << "}" << msg_to_string(m->kids[1]);
      break;
    case MsgKind::Func: {
      os << m->label << "(";
      for (std::size_t n = 0; n < m->kids.size(); ++n) {
        if (n) os << ", ";
        os << msg_to_string(m->kids[n]);
      }
      os << ")";
      break;
    }
  }
  return os.str();
}

bool KnowledgeSet::operator==(const KnowledgeSet& o) const {
  if (items_.size() != o.items_.size()) return false;
  auto it = items_.begin(), jt = o.items_.begin();
  for (; it != items_.end(); ++it, ++jt)
    if (!msg_eq(*it, *jt)) return false;
  return true;
}

bool KnowledgeSet::subset_of(const KnowledgeSet& o) const {
  for (const auto& m : items_)
    if (!o.contains(m)) return false;
  return true;
}

}  // namespace delp
