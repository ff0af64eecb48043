#ifndef DELP_PROOF_HPP
#define DELP_PROOF_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "delp/ast.hpp"

namespace delp {

// Metavariable sorts for axiom schemas. Metavariables appear in templates
// as `?name` identifiers; the sort comes from the schema signature.
enum class Sort { FormulaS, MessageS, ProgramS, AgentS, KeyLabelS };

std::string sort_name(Sort s);

struct Binding {
  Sort sort;
  Formula f;       // FormulaS
  Msg m;           // MessageS
  Program p;       // ProgramS
  std::string id;  // AgentS / KeyLabelS
};

using Bindings = std::map<std::string, Binding>;

struct AxiomSchema {
  std::string name;
  std::vector<std::pair<std::string, Sort>> sig;
  Formula tmpl;           // metavariables encoded as ?-identifiers
  bool taut_check = false;  // prop-taut: the instance must be a tautology
};

// Fixed, enumerable schema catalogue.
const std::vector<AxiomSchema>& schema_catalogue();
const AxiomSchema* find_schema(const std::string& name);

// Names of schemas that represent protocol trust hypotheses rather than
// logically valid axioms.
bool is_honesty_schema(const std::string& name);

struct SubstError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Replaces every metavariable by its binding; throws SubstError on an
// unbound metavariable or a sort mismatch.
Formula substitute(const Formula& tmpl, const Bindings& b);

// Propositional validity of the skeleton: Know/Box/At/Atom subformulas are
// opaque atoms. Rejects skeletons with more than 16 distinct atoms.
bool prop_tautology(const Formula& f, std::string* error = nullptr);

// Hilbert proof trees.
struct ProofNode;
using Proof = std::shared_ptr<const ProofNode>;

enum class PKind { Hyp, Ax, MP, KGen, PGen, AndI, AndL, AndR };

struct ProofNode {
  PKind kind;
  std::string name;           // Hyp: context name; Ax: schema name
  Bindings binds;             // Ax
  AgentId agent;              // KGen
  Program prog;               // PGen
  std::vector<Proof> kids;
};

Proof p_hyp(std::string name);
Proof p_ax(std::string schema, Bindings b);
Proof p_mp(Proof major, Proof minor);
Proof p_kgen(AgentId i, Proof sub);
Proof p_pgen(Program a, Proof sub);
Proof p_andi(Proof l, Proof r);
Proof p_andl(Proof sub);
Proof p_andr(Proof sub);

struct CheckOptions {
  // Strict necessitation: KGen/PGen subproofs must be hypothesis-free.
  bool lax_necessitation = false;
};

struct CheckResult {
  bool ok = false;
  std::string error;              // first failing node in preorder
  std::string at;                 // path like "root.1.0"
  Formula conclusion;             // when ok
  std::set<std::string> schemas_used;
  bool used_lax = false;          // a generalization step over a hypothesis-using subproof
};

CheckResult check_proof(const Judgment& j, const Proof& p,
                        const CheckOptions& opts = {});

// Bundled derived-rule proof scripts, each checkable against its judgment.
struct Script {
  Judgment judgment;
  Proof proof;
  bool needs_lax = false;
};

const std::map<std::string, Script>& derived_rule_scripts();

std::string proof_to_string(const Proof& p);

}  // namespace delp

#endif
