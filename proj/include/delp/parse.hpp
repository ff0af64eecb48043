#ifndef DELP_PARSE_HPP
#define DELP_PARSE_HPP

#include <stdexcept>
#include <string>

#include "delp/model.hpp"
#include "delp/proof.hpp"
#include "delp/protocol.hpp"

namespace delp {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& what, int line_, int col_)
      : std::runtime_error(what + " at " + std::to_string(line_) + ":" +
                           std::to_string(col_)),
        line(line_),
        col(col_) {}
};

// Expression-level parsers; the whole input must be consumed.
Msg parse_message(const std::string& text);
Formula parse_formula(const std::string& text);
Program parse_program(const std::string& text);

// `.delp` theory files: `name : formula` lines, `#` comments.
Theory parse_theory(const std::string& text, const std::string& name = "");

// `.dkm` model files.
KripkeModel parse_model(const std::string& text);

// `.dkproto` protocol narration files.
ProtocolSpec parse_protocol(const std::string& text);

// `.dkp` proof files: `ctx:` and `goal:` headers plus an s-expression tree.
struct ProofFile {
  std::vector<std::string> ctx;  // axiom names resolved against a theory
  Formula goal;
  Proof root;
};

ProofFile parse_proof_file(const std::string& text);
std::string print_proof_file(const ProofFile& pf);

// Builds the judgment of a proof file against a theory; throws ParseError
// (line 0) on an unknown context name.
Judgment resolve_judgment(const Theory& t, const ProofFile& pf);

bool proof_eq(const Proof& a, const Proof& b);

}  // namespace delp

#endif
