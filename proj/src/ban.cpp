#include "delp/ban.hpp"

#include <stdexcept>

namespace delp {

BanStatement ban_believes(AgentId i, Msg m) {
  return BanStatement{BanKind::Believes, std::move(i), "", "", std::move(m)};
}
BanStatement ban_sees(AgentId i, Msg m) {
  return BanStatement{BanKind::Sees, std::move(i), "", "", std::move(m)};
}
BanStatement ban_said(AgentId i, Msg m) {
  return BanStatement{BanKind::Said, std::move(i), "", "", std::move(m)};
}
BanStatement ban_controls(AgentId i, Msg m) {
  return BanStatement{BanKind::Controls, std::move(i), "", "", std::move(m)};
}
BanStatement ban_fresh(Msg m) {
  return BanStatement{BanKind::Fresh, "", "", "", std::move(m)};
}
BanStatement ban_shared_key(AgentId i, std::string key, AgentId j) {
  return BanStatement{BanKind::SharedKey, std::move(i), std::move(j),
                      std::move(key), nullptr};
}

Formula translate_ban(const BanStatement& b) {
  switch (b.kind) {
    case BanKind::Believes:
      return mk_know(b.i, mk_at(b.m));
    case BanKind::Sees:
      return mk_box(mk_recv(b.i), mk_at(b.m));
    case BanKind::Said:
      return mk_box(mk_send(b.i), mk_at(b.m));
    case BanKind::Controls:
      return mk_impl(mk_know(b.i, mk_at(b.m)), mk_at(b.m));
    case BanKind::Fresh:
      return mk_at(mk_nonce(b.m));
    case BanKind::SharedKey:
      return mk_at(mk_key(b.key, b.i, b.j));
  }
  throw std::logic_error("corrupt BanStatement");
}

}  // namespace delp
