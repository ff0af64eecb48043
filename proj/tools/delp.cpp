#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "delp/ban.hpp"
#include "delp/bisim.hpp"
#include "delp/gen.hpp"
#include "delp/harness.hpp"
#include "delp/parse.hpp"
#include "delp/protocol.hpp"
#include "delp/search.hpp"

using nlohmann::json;
using namespace delp;

namespace {

constexpr int kOk = 0, kNegative = 1, kUsage = 2, kInvalid = 3;

std::string slurp(const std::string& path, int fail_code) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    std::exit(fail_code);
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

KnowledgeSet parse_gamma_file(const std::string& text) {
  KnowledgeSet ks;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    try {
      ks.insert(parse_message(line.substr(first, last - first + 1)));
    } catch (const ParseError& e) {
      std::cerr << "line " << lineno << ": " << e.what() << "\n";
      std::exit(kUsage);
    }
  }
  return ks;
}

int cmd_deduce(const std::string& gamma_path, const std::string& goal_text,
               int budget) {
  KnowledgeSet gamma = parse_gamma_file(slurp(gamma_path, kUsage));
  Msg goal;
  try {
    goal = parse_message(goal_text);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }
  bool ok = derivable(gamma, goal, budget);
  std::cout << (ok ? "derivable" : "not-derivable") << "\n";
  return ok ? kOk : kNegative;
}

KripkeModel load_model(const std::string& path) {
  KripkeModel m;
  try {
    m = parse_model(slurp(path, kUsage));
  } catch (const ParseError& e) {
    std::cerr << path << ": " << e.what() << "\n";
    std::exit(kInvalid);
  }
  auto diags = validate_model(m);
  if (!diags.empty()) {
    for (const auto& d : diags) std::cerr << path << ": " << d << "\n";
    std::exit(kInvalid);
  }
  return m;
}

int cmd_model_check(const std::string& model_path, const std::string& world,
                    const std::string& formula_text, bool all_worlds,
                    const EvalOpts& opts, bool as_json) {
  KripkeModel m = load_model(model_path);
  Formula f;
  try {
    f = parse_formula(formula_text);
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kInvalid;
  }
  std::vector<World> targets;
  if (all_worlds)
    targets = m.worlds;
  else {
    if (!m.has_world(world)) {
      std::cerr << "unknown world " << world << "\n";
      return kInvalid;
    }
    targets.push_back(world);
  }
  bool all_true = true;
  json verdicts = json::object();
  for (const auto& w : targets) {
    bool v = satisfies(m, w, f, opts);
    all_true = all_true && v;
    if (as_json)
      verdicts[w] = v;
    else
      std::cout << w << ": " << (v ? "true" : "false") << "\n";
  }
  if (as_json)
    std::cout << json{{"schema_version", 1},
                      {"formula", formula_to_string(f)},
                      {"verdicts", verdicts}}
                     .dump(2)
              << "\n";
  return all_true ? kOk : kNegative;
}

json report_json(const VerifyReport& rep) {
  return json{{"schema_version", 1},
              {"ok", rep.ok},
              {"searched", rep.searched},
              {"search_exhausted", rep.search_exhausted},
              {"error", rep.error},
              {"assumptions", rep.assumptions}};
}

int cmd_check_proof(const std::string& theory_path, const std::string& proof_path,
                    bool lax, bool as_json) {
  try {
    Theory t = parse_theory(slurp(theory_path, kUsage));
    ProofFile pf = parse_proof_file(slurp(proof_path, kUsage));
    Judgment j = resolve_judgment(t, pf);
    CheckResult cr = check_proof(j, pf.root, CheckOptions{lax});
    if (as_json) {
      std::cout << json{{"schema_version", 1},
                        {"ok", cr.ok},
                        {"error", cr.error},
                        {"at", cr.at},
                        {"schemas_used", cr.schemas_used},
                        {"used_lax", cr.used_lax}}
                       .dump(2)
                << "\n";
    } else if (cr.ok) {
      std::cout << "ok: " << formula_to_string(cr.conclusion) << "\n";
    } else {
      std::cout << "error at " << cr.at << ": " << cr.error << "\n";
    }
    return cr.ok ? kOk : kNegative;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kInvalid;
  }
}

int cmd_search(const std::string& theory_path, const std::string& goal_text,
               int depth, bool as_json) {
  try {
    Theory t = parse_theory(slurp(theory_path, kUsage));
    Judgment j = t.judgment_for(parse_formula(goal_text));
    auto found = search_proof(j, depth);
    if (as_json) {
      std::cout << json{{"schema_version", 1},
                        {"found", found.has_value()},
                        {"proof", found ? proof_to_string(*found) : ""}}
                       .dump(2)
                << "\n";
    } else if (found) {
      std::cout << "found: " << proof_to_string(*found) << "\n";
    } else {
      std::cout << "not found (search exhausted; not a refutation)\n";
    }
    return found ? kOk : kNegative;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kInvalid;
  }
}

int cmd_bisim(const std::string& m1, const std::string& w1, const std::string& m2,
              const std::string& w2) {
  KripkeModel a = load_model(m1), b = load_model(m2);
  if (!a.has_world(w1) || !b.has_world(w2)) {
    std::cerr << "unknown world\n";
    return kInvalid;
  }
  bool ok = bisimilar(a, w1, b, w2);
  std::cout << (ok ? "bisimilar" : "not-bisimilar") << "\n";
  return ok ? kOk : kNegative;
}

int cmd_expand(const std::string& model_path, int budget) {
  KripkeModel m = load_model(model_path);
  std::cout << print_temporal(temporal_expand(m, budget));
  return kOk;
}

int cmd_verify(const std::string& proto_path, const std::string& claim_name,
               int depth, bool as_json) {
  ProtocolSpec spec;
  try {
    spec = parse_protocol(slurp(proto_path, kUsage));
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return kInvalid;
  }
  Theory t;
  try {
    t = compile_protocol(spec);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kInvalid;
  }
  const Claim* claim = nullptr;
  for (const auto& c : bundled_ns().claims)
    if (c.name == claim_name) claim = &c;
  Formula goal;
  Proof script;
  if (claim) {
    goal = claim->formula;
    script = claim->script;
  } else {
    try {
      goal = parse_formula(claim_name);  // free-form claims are formulas
    } catch (const ParseError&) {
      std::cerr << "unknown claim " << claim_name << "\n";
      return kUsage;
    }
  }
  VerifyReport rep = verify_claim(t, goal, script, depth);
  if (as_json) {
    std::cout << report_json(rep).dump(2) << "\n";
  } else {
    std::cout << "claim " << claim_name << ": "
              << (rep.ok ? "ok"
                         : rep.search_exhausted
                               ? "not proved (search exhausted; not a refutation)"
                               : "failed: " + rep.error)
              << "\n";
    if (!rep.assumptions.empty()) {
      std::cout << "assumptions:";
      for (const auto& a : rep.assumptions) std::cout << " " << a;
      std::cout << "\n";
    }
  }
  return rep.ok ? kOk : kNegative;
}

int cmd_soundness(std::uint64_t seed, int iterations, bool as_json) {
  SoundnessReport rep = run_soundness_suite(seed, iterations);
  bool ok = rep.core_counterexamples == 0 && rep.conditioned_counterexamples == 0;
  if (as_json) {
    std::cout << json{{"schema_version", 1},
                      {"ok", ok},
                      {"models", rep.models},
                      {"instances_checked", rep.instances_checked},
                      {"core_counterexamples", rep.core_counterexamples},
                      {"conditioned_counterexamples",
                       rep.conditioned_counterexamples},
                      {"unconditioned_counterexample_found",
                       rep.unconditioned_counterexample_found},
                      {"unconditioned_counterexample",
                       rep.unconditioned_counterexample}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << soundness_summary(rep);
  }
  return ok ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DELP toolkit: deduction, model checking, proofs, protocols"};
  app.require_subcommand(1);

  int budget = kDefaultBudget;
  int depth = 6;
  bool raw_membership = false, lax = false, as_json = false, all_worlds = false;

  std::string gamma_path, goal_text;
  auto* deduce = app.add_subcommand("deduce", "Is a message derivable from a set");
  deduce->add_option("gamma", gamma_path, "file with one message per line")
      ->required();
  deduce->add_option("goal", goal_text, "goal message")->required();
  deduce->add_option("--budget", budget, "construction depth budget");

  std::string model_path, world, formula_text;
  auto* mc = app.add_subcommand("model-check", "Evaluate a formula at a world");
  mc->add_option("model", model_path)->required();
  mc->add_option("world", world);
  mc->add_option("formula", formula_text);
  mc->add_flag("--all-worlds", all_worlds);
  mc->add_option("--budget", budget);
  mc->add_flag("--raw-membership", raw_membership);
  mc->add_flag("--json", as_json);

  std::string theory_path, proof_path;
  auto* cp = app.add_subcommand("check-proof", "Check a proof file");
  cp->add_option("theory", theory_path)->required();
  cp->add_option("proof", proof_path)->required();
  cp->add_flag("--lax-necessitation", lax);
  cp->add_flag("--json", as_json);

  auto* se = app.add_subcommand("search", "Bounded forward proof search");
  se->add_option("theory", theory_path)->required();
  se->add_option("goal", formula_text)->required();
  se->add_option("--depth", depth);
  se->add_flag("--json", as_json);

  std::string model2_path, world2;
  auto* bi = app.add_subcommand("bisim", "Are two pointed models bisimilar");
  bi->add_option("model1", model_path)->required();
  bi->add_option("world1", world)->required();
  bi->add_option("model2", model2_path)->required();
  bi->add_option("world2", world2)->required();

  auto* ex = app.add_subcommand("expand", "Print the temporal expansion");
  ex->add_option("model", model_path)->required();
  ex->add_option("--budget", budget);

  std::string proto_path, claim_name;
  auto* ve = app.add_subcommand("verify", "Verify a protocol claim");
  ve->add_option("protocol", proto_path)->required();
  ve->add_option("--claim", claim_name, "bundled claim name or a formula")
      ->required();
  ve->add_option("--depth", depth);
  ve->add_flag("--json", as_json);

  std::uint64_t seed = 1;
  int iterations = 350;
  auto* so = app.add_subcommand("soundness-suite", "Randomized axiom soundness");
  so->add_option("--seed", seed);
  so->add_option("--iterations", iterations);
  so->add_flag("--json", as_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (deduce->parsed()) return cmd_deduce(gamma_path, goal_text, budget);
    if (mc->parsed()) {
      if (formula_text.empty()) {  // `model-check m --all-worlds f` style
        formula_text = world;
        world.clear();
      }
      if (formula_text.empty() || (!all_worlds && world.empty())) {
        std::cerr << "model-check needs a world or --all-worlds\n";
        return kUsage;
      }
      return cmd_model_check(model_path, world, formula_text, all_worlds,
                             EvalOpts{budget, raw_membership}, as_json);
    }
    if (cp->parsed()) return cmd_check_proof(theory_path, proof_path, lax, as_json);
    if (se->parsed()) return cmd_search(theory_path, formula_text, depth, as_json);
    if (bi->parsed()) return cmd_bisim(model_path, world, model2_path, world2);
    if (ex->parsed()) return cmd_expand(model_path, budget);
    if (ve->parsed()) return cmd_verify(proto_path, claim_name, depth, as_json);
    if (so->parsed()) return cmd_soundness(seed, iterations, as_json);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kInvalid;
  }
  return kUsage;
}
