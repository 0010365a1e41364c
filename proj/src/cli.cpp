#include "virteq/cli.hpp"

#include "json.hpp"
#include "virteq/calculus.hpp"
#include "virteq/comma.hpp"
#include "virteq/kan.hpp"
#include "virteq/testkit.hpp"

namespace virteq::io {

using nlohmann::json;

namespace {

const std::string& ref(const CommandOptions& opt, const std::string& key) {
  auto it = opt.refs.find(key);
  if (it == opt.refs.end() || it->second.empty())
    throw Error(ErrorKind::ValidationError, opt.command + " needs --" + key);
  return it->second;
}

// Splits at commas outside brackets, so "comma(F,G),H" has two parts.
std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(' || ch == '[' || ch == '{') ++depth;
    if (ch == ')' || ch == ']' || ch == '}') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

const FunctorEntry& functor_entry(const Workspace& ws, const std::string& n) {
  ws.functor(n);
  return ws.functors.at(n);
}

const ModuleEntry& module_entry(const Workspace& ws, const std::string& n) {
  ws.module(n);
  return ws.modules.at(n);
}

std::string flag(bool b) { return b ? "true" : "false"; }

std::string text_or_json(const CommandOptions& opt, const json& report, const std::string& text) {
  return opt.json ? report.dump(2) + "\n" : text;
}

std::string identity_name(Workspace& out, const std::string& cat) {
  std::string n = "id(" + cat + ")";
  if (!out.functors.count(n)) out.add_functor(n, cat, cat, identity_functor(out.category(cat)));
  return n;
}

CommandResult done(bool ok, std::string output) { return CommandResult{ok ? 0 : 1, std::move(output), {}}; }

// ---------------------------------------------------------------------------

CommandResult cmd_validate(const Workspace& ws, const CommandOptions& opt) {
  json report = json::object();
  std::string text = "valid: true\n";
  auto count = [&](const char* kind, const auto& map) {
    json names = json::array();
    for (const auto& kv : map) names.push_back(kv.first);
    report[kind] = names;
    text += std::string(kind) + ": " + std::to_string(map.size()) + "\n";
  };
  count("categories", ws.categories);
  count("functors", ws.functors);
  count("modules", ws.modules);
  count("nats", ws.nats);
  count("squares", ws.squares);
  count("cells", ws.cells);
  report["valid"] = true;
  return done(true, text_or_json(opt, report, text));
}

CommandResult cmd_comma(const Workspace& ws, const CommandOptions& opt) {
  const std::string& fn = ref(opt, "f");
  const std::string& gn = ref(opt, "g");
  const auto& fe = functor_entry(ws, fn);
  const auto& ge = functor_entry(ws, gn);
  CommaData c = comma(fe.value, ge.value);
  Workspace out;
  out.import_functor(ws, fn);
  out.import_functor(ws, gn);
  const std::string name = "comma(" + fn + "," + gn + ")";
  out.add_category(name, c.cat);
  out.add_functor(name + ".p0", name, fe.dom, c.p0);
  out.add_functor(name + ".p1", name, ge.dom, c.p1);
  out.add_functor(name + ".fp0", name, fe.cod, c.phi.src);
  out.add_functor(name + ".gp1", name, ge.cod, c.phi.tgt);
  out.add_nat(name + ".phi", name + ".fp0", name + ".gp1", c.phi);
  out.add_square(name + ".square", name + ".p0", name + ".p1", fn, gn, name + ".phi");
  return done(true, serialize(out));
}

CommandResult cmd_tensor(const Workspace& ws, const CommandOptions& opt) {
  std::vector<std::string> names = split_list(ref(opt, "modules"));
  std::vector<ModuleRef> mods;
  Workspace out;
  for (const auto& n : names) {
    mods.push_back(ws.module(n));
    out.import_module(ws, n);
  }
  Composite t = tensor_many(mods);
  std::string label = "tensor(";
  for (std::size_t i = 0; i < names.size(); ++i) label += (i ? "," : "") + names[i];
  label += ")";
  const std::string& a0 = module_entry(ws, names.front()).dom;
  const std::string& an = module_entry(ws, names.back()).cod;
  out.add_module(label, a0, an, t.module);
  out.add_cell(label + ".cell", names, "", label, identity_name(out, a0), identity_name(out, an), t.cell);
  json report = {{"elements", t.module->num_elements()}, {"source_tuples", t.cell.shape->num_tuples()}};
  return done(true, serialize(out, report.dump()));
}

CommandResult cmd_rext(const Workspace& ws, const CommandOptions& opt) {
  const std::string& kn = ref(opt, "k");
  const std::string& fn = ref(opt, "f");
  RightExtension r = right_extension_module(ws.module(kn), ws.module(fn));
  Workspace out;
  out.import_module(ws, kn);
  out.import_module(ws, fn);
  const std::string label = "rext(" + kn + "," + fn + ")";
  const auto& ke = module_entry(ws, kn);
  const auto& fe = module_entry(ws, fn);
  out.add_module(label, ke.cod, fe.cod, r.module);
  out.add_cell(label + ".counit", {kn, label}, "", fn, identity_name(out, ke.dom), identity_name(out, fe.cod),
               r.counit);
  json report = {{"elements", r.module->num_elements()}};
  return done(true, serialize(out, report.dump()));
}

CommandResult cmd_kan(const Workspace& ws, const CommandOptions& opt, KanDirection dir) {
  const std::string& kn = ref(opt, "k");
  const std::string& fn = ref(opt, "f");
  Workspace out;
  out.import_functor(ws, kn);
  out.import_functor(ws, fn);
  auto res = pointwise_kan(ws.functor(kn), ws.functor(fn), dir);
  if (!res) return done(false, serialize(out, json({{"exists", false}}).dump()));
  const std::string label = std::string(dir == KanDirection::Right ? "Ran(" : "Lan(") + kn + "," + fn + ")";
  const auto& ke = functor_entry(ws, kn);
  const auto& fe = functor_entry(ws, fn);
  out.add_functor(label, ke.cod, fe.cod, res->r);
  out.add_functor(label + ".rk", ke.dom, fe.cod, compose(res->r, res->k));
  if (dir == KanDirection::Right)
    out.add_nat(label + ".mu", label + ".rk", fn, res->mu);
  else
    out.add_nat(label + ".mu", fn, label + ".rk", res->mu);
  json cones = json::object();
  const FinCat& B = *res->r.dom;
  const FinCat& E = *res->r.cod;
  for (int b = 0; b < B.num_objects(); ++b) {
    const Cone& c = res->cones[b];
    const FinCat& J = *res->commas[b].cat;
    json legs = json::object();
    for (int j = 0; j < J.num_objects(); ++j) legs[J.object_name(j)] = E.morphism_name(c.legs[j]);
    cones[B.object_name(b)] = {{"apex", E.object_name(c.apex)}, {"legs", legs}};
  }
  return done(true, serialize(out, json({{"exists", true}, {"cones", cones}}).dump()));
}

CommandResult cmd_exact(const Workspace& ws, const CommandOptions& opt) {
  CompositeReport r = exactness_report(ws.square(ref(opt, "square")));
  std::string text = "exact: " + flag(r.ok) + "\n";
  if (!r.ok) text += "witness: " + r.witness + "\n";
  json report = {{"exact", r.ok}, {"witness", r.witness}};
  return done(r.ok, text_or_json(opt, report, text));
}

CommandResult cmd_finality(const Workspace& ws, const CommandOptions& opt, Finality which) {
  FinalityReport r = finality_report(ws.functor(ref(opt, "functor")), which);
  const char* key = which == Finality::Final ? "final" : "initial";
  std::string text = std::string(key) + ": " + flag(r.value) + "\n";
  if (!r.value) text += "witness: " + r.witness + "\n";
  json report = {{key, r.value}, {"witness", r.witness}};
  return done(r.value, text_or_json(opt, report, text));
}

CommandResult cmd_ff(const Workspace& ws, const CommandOptions& opt) {
  bool v = is_fully_faithful(ws.functor(ref(opt, "functor")));
  json report = {{"fully_faithful", v}};
  return done(v, text_or_json(opt, report, "fully-faithful: " + flag(v) + "\n"));
}

CommandResult cmd_adjoint(const Workspace& ws, const CommandOptions& opt) {
  const std::string& fn = ref(opt, "functor");
  Workspace out;
  out.import_functor(ws, fn);
  auto adj = find_right_adjoint(ws.functor(fn));
  if (!adj) return done(false, serialize(out, json({{"exists", false}}).dump()));
  const auto& fe = functor_entry(ws, fn);
  const std::string label = "radj(" + fn + ")";
  out.add_functor(label, fe.cod, fe.dom, adj->u);
  out.add_functor(label + ".uf", fe.dom, fe.dom, adj->unit.tgt);
  out.add_functor(label + ".fu", fe.cod, fe.cod, adj->counit.src);
  out.add_nat(label + ".unit", identity_name(out, fe.dom), label + ".uf", adj->unit);
  out.add_nat(label + ".counit", label + ".fu", identity_name(out, fe.cod), adj->counit);
  return done(true, serialize(out, json({{"exists", true}}).dump()));
}

CommandResult cmd_beck_chevalley(const Workspace& ws, const CommandOptions& opt) {
  const Square& s = ws.square(ref(opt, "square"));
  BeckChevalleyReport r = beck_chevalley_report(s, ws.category(ref(opt, "target")));
  if (!r.right_applicable && !r.left_applicable)
    throw Error(ErrorKind::NotApplicable, "neither mate is defined: the required Kan extensions do not all exist");
  auto side = [](bool applicable, bool ok) { return applicable ? flag(ok) : std::string("not applicable"); };
  std::string text = "right: " + side(r.right_applicable, r.right_ok) + "\nleft: " +
                     side(r.left_applicable, r.left_ok) + "\n";
  if (!r.witness.empty()) text += "witness: " + r.witness + "\n";
  bool ok = (!r.right_applicable || r.right_ok) && (!r.left_applicable || r.left_ok);
  json report = {{"right_applicable", r.right_applicable},
                 {"left_applicable", r.left_applicable},
                 {"right", r.right_ok},
                 {"left", r.left_ok},
                 {"witness", r.witness}};
  return done(ok, text_or_json(opt, report, text));
}

CommandResult cmd_derivator(const Workspace& ws, const CommandOptions& opt) {
  std::vector<FunctorMap> probes;
  auto it = opt.refs.find("probes");
  if (it != opt.refs.end() && !it->second.empty()) {
    for (const auto& n : split_list(it->second)) probes.push_back(ws.functor(n));
  } else {
    for (const auto& [n, e] : ws.functors) probes.push_back(e.value);
  }
  DerivatorReport r = derivator_checks(ws.category(ref(opt, "target")), probes);
  std::string text = "der1: " + flag(r.der1) + "\nder2: " + flag(r.der2) + "\nder3: " + flag(r.der3) +
                     "\nder4: " + flag(r.der4) + "\nder5: " + flag(r.der5) + "\n";
  for (const auto& m : r.missing) text += "missing: " + m + "\n";
  for (const auto& n : r.notes) text += "note: " + n + "\n";
  bool ok = r.der1 && r.der2 && r.der3 && r.der4 && r.der5;
  json report = {{"der1", r.der1}, {"der2", r.der2}, {"der3", r.der3}, {"der4", r.der4},
                 {"der5", r.der5}, {"missing", r.missing}, {"notes", r.notes}};
  return done(ok, text_or_json(opt, report, text));
}

CommandResult cmd_check_equipment(const CommandOptions& opt) {
  if (!opt.seed) throw Error(ErrorKind::ValidationError, "check-equipment needs --seed");
  testkit::SuiteOptions so;
  so.seed = *opt.seed;
  if (opt.size) {
    if (*opt.size < 0) throw Error(ErrorKind::ValidationError, "--size must be non-negative");
    so.size = *opt.size;
  }
  auto reports = testkit::run_suites(so);
  bool ok = true;
  std::string text = "seed: " + std::to_string(so.seed) + "\nsize: " + std::to_string(so.size) + "\n";
  json suites = json::array();
  for (const auto& r : reports) {
    ok = ok && r.pass;
    text += r.name + ": " + (r.pass ? "pass" : "FAIL") + " (" + std::to_string(r.instances) + " instances";
    if (r.skipped) text += ", " + std::to_string(r.skipped) + " skipped over budget";
    text += ")";
    if (!r.pass) text += ": " + r.counterexample;
    text += "\n";
    suites.push_back(
        {{"name", r.name}, {"pass", r.pass}, {"instances", r.instances}, {"skipped", r.skipped}, {"counterexample", r.counterexample}});
  }
  json report = {{"seed", so.seed}, {"size", so.size}, {"suites", suites}, {"pass", ok}};
  return done(ok, text_or_json(opt, report, text));
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"validate", "comma", "tensor", "rext", "ran", "lan", "exact",
                                                 "final", "initial", "ff", "adjoint", "beck-chevalley",
                                                 "derivator", "check-equipment"};
  return names;
}

int exit_code(ErrorKind kind) { return kind == ErrorKind::EnumerationBudgetExceeded ? 3 : 2; }

CommandResult run_command(const Workspace& ws, const CommandOptions& opt) {
  const std::string& c = opt.command;
  if (c == "validate") return cmd_validate(ws, opt);
  if (c == "comma") return cmd_comma(ws, opt);
  if (c == "tensor") return cmd_tensor(ws, opt);
  if (c == "rext") return cmd_rext(ws, opt);
  if (c == "ran") return cmd_kan(ws, opt, KanDirection::Right);
  if (c == "lan") return cmd_kan(ws, opt, KanDirection::Left);
  if (c == "exact") return cmd_exact(ws, opt);
  if (c == "final") return cmd_finality(ws, opt, Finality::Final);
  if (c == "initial") return cmd_finality(ws, opt, Finality::Initial);
  if (c == "ff") return cmd_ff(ws, opt);
  if (c == "adjoint") return cmd_adjoint(ws, opt);
  if (c == "beck-chevalley") return cmd_beck_chevalley(ws, opt);
  if (c == "derivator") return cmd_derivator(ws, opt);
  if (c == "check-equipment") return cmd_check_equipment(opt);
  throw Error(ErrorKind::ValidationError, "unknown command '" + c + "'");
}

CommandResult run_cli(const CommandOptions& opt) {
  try {
    Workspace ws = parse_input(opt.inputs);
    return run_command(ws, opt);
  } catch (const Error& e) {
    return CommandResult{exit_code(e.kind()), {}, std::string(e.what()) + "\n"};
  } catch (const std::exception& e) {
    return CommandResult{2, {}, std::string(e.what()) + "\n"};
  }
}

}  // namespace virteq::io
