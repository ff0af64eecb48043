#pragma once

#include "delp/ast.hpp"

namespace delp {

enum class BanKind { Believes, Sees, Said, Controls, Fresh, SharedKey };

struct BanStatement {
  BanKind kind;
  AgentId i, j;       // j only for SharedKey
  std::string key;    // key label, SharedKey only
  Msg m;              // absent for SharedKey
};

BanStatement ban_believes(AgentId i, Msg m);
BanStatement ban_sees(AgentId i, Msg m);
BanStatement ban_said(AgentId i, Msg m);
BanStatement ban_controls(AgentId i, Msg m);
BanStatement ban_fresh(Msg m);
BanStatement ban_shared_key(AgentId i, std::string key, AgentId j);

Formula translate_ban(const BanStatement& b);

}  // namespace delp
