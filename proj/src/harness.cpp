#include "delp/harness.hpp"

#include <sstream>

namespace delp {

namespace {

const std::vector<std::string> kCoreSchemas = {
    "kdist", "ktruth", "k4", "k5", "progdist", "progconj", "progunion",
    "progcomp", "kand"};
const std::vector<std::string> kEpistEqSchemas = {"sendrecv-know", "knowsendf",
                                                  "knowrecvf"};

std::vector<Msg> model_messages(const KripkeModel& m) {
  std::set<std::string> seen;
  std::vector<Msg> out;
  std::vector<Msg> stack;
  for (const auto& [w, ks] : m.exp)
    for (const auto& msg : ks) stack.push_back(msg);
  while (!stack.empty()) {
    Msg t = stack.back();
    stack.pop_back();
    if (!seen.insert(msg_to_string(t)).second) continue;
    out.push_back(t);
    for (const auto& k : t->kids) stack.push_back(k);
  }
  if (out.empty()) out.push_back(mk_text("t1"));
  return out;
}

Bindings instantiate(Gen& g, const AxiomSchema& sch, const KripkeModel& m,
                     const std::vector<Msg>& msgs) {
  Gen::FormulaOpts fo;
  fo.max_modal_depth = 1;
  fo.size = 3;
  std::vector<AtomId> atoms;
  for (const auto& [a, ws] : m.val_atoms) atoms.push_back(a);
  Bindings b;
  for (const auto& [mv, sort] : sch.sig) {
    Binding bd;
    bd.sort = sort;
    switch (sort) {
      case Sort::FormulaS: bd.f = g.formula(atoms, m.agents, msgs, fo); break;
      case Sort::MessageS: bd.m = g.pick(msgs); break;
      case Sort::ProgramS: bd.p = g.program(m.agents, 1, true); break;
      case Sort::AgentS: bd.id = g.pick(m.agents); break;
      case Sort::KeyLabelS: bd.id = "k"; break;
    }
    b.emplace(mv, std::move(bd));
  }
  return b;
}

// True when the instance holds at every world; otherwise fills `where`.
bool holds_everywhere(const KripkeModel& m, const Formula& inst, World* where) {
  for (const auto& w : m.worlds)
    if (!satisfies(m, w, inst)) {
      if (where) *where = w;
      return false;
    }
  return true;
}

}  // namespace

SoundnessReport run_soundness_suite(std::uint64_t seed, int iterations) {
  SoundnessReport rep;
  Gen g(seed);

  auto note = [&](const std::string& what) {
    if (rep.failures.size() < 10) rep.failures.push_back(what);
  };

  for (int it = 0; it < iterations; ++it) {
    rep.models += 3;

    KripkeModel plain = g.model(Gen::ProgMode::Subset);
    auto msgs = model_messages(plain);
    for (const auto& name : kCoreSchemas) {
      const AxiomSchema* sch = find_schema(name);
      for (int k = 0; k < 2; ++k) {
        Formula inst = substitute(sch->tmpl, instantiate(g, *sch, plain, msgs));
        ++rep.instances_checked;
        World w;
        if (!holds_everywhere(plain, inst, &w)) {
          ++rep.core_counterexamples;
          note(name + " fails at " + w + ": " + formula_to_string(inst));
        }
      }
    }

    // Side-condition V(send_i) = V(recv_i) = ~_i.
    KripkeModel eq = g.model(Gen::ProgMode::EqualEpist);
    auto eq_msgs = model_messages(eq);
    for (const auto& name : kEpistEqSchemas) {
      const AxiomSchema* sch = find_schema(name);
      Formula inst = substitute(sch->tmpl, instantiate(g, *sch, eq, eq_msgs));
      ++rep.instances_checked;
      World w;
      if (!holds_everywhere(eq, inst, &w)) {
        ++rep.conditioned_counterexamples;
        note(name + " fails under V=~ at " + w + ": " + formula_to_string(inst));
      }
    }

    // Side-condition: reflexive program valuations.
    KripkeModel refl = g.model(Gen::ProgMode::Reflexive);
    auto refl_msgs = model_messages(refl);
    {
      const AxiomSchema* sch = find_schema("pdtruth");
      Formula inst = substitute(sch->tmpl, instantiate(g, *sch, refl, refl_msgs));
      ++rep.instances_checked;
      World w;
      if (!holds_everywhere(refl, inst, &w)) {
        ++rep.conditioned_counterexamples;
        note("pdtruth fails under reflexive V at " + w + ": " +
             formula_to_string(inst));
      }
    }

    // Unconditioned send/recv knowledge schema: hunt for a countermodel.
    if (!rep.unconditioned_counterexample_found) {
      ++rep.unconditioned_models_tried;
      const AxiomSchema* sch = find_schema("sendrecv-know");
      for (int k = 0; k < 4 && !rep.unconditioned_counterexample_found; ++k) {
        Formula inst = substitute(sch->tmpl, instantiate(g, *sch, plain, msgs));
        World w;
        if (!holds_everywhere(plain, inst, &w)) {
          rep.unconditioned_counterexample_found = true;
          std::ostringstream os;
          os << "sendrecv-know fails without the V=~ side-condition at world "
             << w << " of:\n"
             << print_model(plain) << "instance: " << formula_to_string(inst);
          rep.unconditioned_counterexample = os.str();
        }
      }
    }
  }
  return rep;
}

std::string soundness_summary(const SoundnessReport& r) {
  std::ostringstream os;
  os << "models: " << r.models << "\n"
     << "instances checked: " << r.instances_checked << "\n"
     << "core counterexamples: " << r.core_counterexamples << "\n"
     << "side-conditioned counterexamples: " << r.conditioned_counterexamples
     << "\n";
  for (const auto& f : r.failures) os << "  " << f << "\n";
  if (r.unconditioned_counterexample_found)
    os << "unconditioned sendrecv-know: counterexample found\n"
       << r.unconditioned_counterexample << "\n";
  else
    os << "unconditioned sendrecv-know: no counterexample in "
       << r.unconditioned_models_tried << " models (sample exhausted)\n";
  return os.str();
}

}  // namespace delp
