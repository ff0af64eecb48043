#ifndef DELP_MESSAGE_HPP
#define DELP_MESSAGE_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

namespace delp {

using AgentId = std::string;

// Term algebra for protocol messages: texts, shared keys, nonces, agent
// names, pairs, symmetric encryptions and uninterpreted function
// applications. Values are immutable trees shared by pointer.
struct Message;
using Msg = std::shared_ptr<const Message>;

enum class MsgKind { Text, Key, Nonce, Agent, Pair, Enc, Func };

struct Message {
  MsgKind kind;
  std::string label;       // Text label, Key label, Agent id, Func id
  AgentId i, j;            // Key endpoints
  std::vector<Msg> kids;   // Nonce body; Pair l,r; Enc body,key; Func args
};

Msg mk_text(std::string label);
Msg mk_key(std::string label, AgentId i, AgentId j);
Msg mk_nonce(Msg body);
Msg mk_agent(AgentId i);
Msg mk_pair(Msg l, Msg r);
Msg mk_enc(Msg body, Msg key);
Msg mk_func(std::string f, std::vector<Msg> args);

// Total order and equality are structural.
int msg_cmp(const Msg& a, const Msg& b);
bool msg_eq(const Msg& a, const Msg& b);

struct MsgLess {
  bool operator()(const Msg& a, const Msg& b) const { return msg_cmp(a, b) < 0; }
};

// Canonical form: every key has its endpoints sorted, recursively.
// Idempotent; the identity on everything except Key nodes.
Msg normalize(const Msg& m);

// Constructor depth: leaves (texts, keys, agents) are 0.
int msg_depth(const Msg& m);

std::string msg_to_string(const Msg& m);

// Finite set of messages kept in normal form.
class KnowledgeSet {
 public:
  KnowledgeSet() = default;
  explicit KnowledgeSet(const std::vector<Msg>& ms) {
    for (const auto& m : ms) insert(m);
  }

  void insert(const Msg& m) { items_.insert(normalize(m)); }
  bool contains(const Msg& m) const { return items_.count(normalize(m)) > 0; }
  bool erase(const Msg& m) { return items_.erase(normalize(m)) > 0; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  bool operator==(const KnowledgeSet& o) const;
  bool subset_of(const KnowledgeSet& o) const;

 private:
  std::set<Msg, MsgLess> items_;
};

}  // namespace delp

#endif
