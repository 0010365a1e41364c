#include "virteq/io.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

#include "support.hpp"
#include "virteq/catalog.hpp"
#include "virteq/cli.hpp"
#include "virteq/testkit.hpp"

namespace virteq::io {
namespace {

std::string data(const std::string& file) { return std::string(VIRTEQ_TEST_DATA) + "/" + file; }

void expect_round_trip(const Workspace& ws) {
  std::string text = serialize(ws);
  Workspace back = parse_workspace(text);
  EXPECT_TRUE(back == ws);
  EXPECT_EQ(serialize(back), text);
}

CommandOptions command(const std::string& name, std::vector<std::string> inputs,
                       std::map<std::string, std::string> refs = {}) {
  CommandOptions o;
  o.command = name;
  o.inputs = std::move(inputs);
  o.refs = std::move(refs);
  return o;
}

TEST(IoTest, ArrowFileGivesOneCategoryAndOneFunctor) {
  Workspace ws = parse_input({data("arrow.json")});
  EXPECT_EQ(ws.categories.size(), 1u);
  EXPECT_EQ(ws.functors.size(), 1u);
  EXPECT_TRUE(is_identity_functor(ws.functor("id2")));
  EXPECT_TRUE(same_category(ws.category("2"), catalog::arrow()));
}

TEST(IoTest, DuplicateCategoryIsParseError) {
  EXPECT_EQ(test::kind_of([] { parse_input({data("duplicate.json")}); }), ErrorKind::ParseError);
}

TEST(IoTest, MissingCategoryIsDanglingRef) {
  EXPECT_EQ(test::kind_of([] { parse_input({data("dangling.json")}); }), ErrorKind::DanglingRef);
}

TEST(IoTest, DuplicateAcrossFilesIsParseError) {
  EXPECT_EQ(test::kind_of([] { parse_input({data("arrow.json"), data("basic.json")}); }), ErrorKind::ParseError);
}

TEST(IoTest, ReferencesResolveAcrossFiles) {
  Workspace ws = parse_input({data("basic.json"), data("refs.json")});
  EXPECT_EQ(ws.functor("bang2").cod->num_objects(), 1);
}

TEST(IoTest, SyntaxErrorCarriesLine) {
  try {
    parse_workspace("{\n  \"categories\": [\n    {\"name\": \"1\", \"objects\": [\"*\"]}\n  ,]\n}\n", "broken.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    EXPECT_NE(std::string(e.what()).find("broken.json"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(IoTest, SemanticErrorCarriesLine) {
  try {
    parse_input({data("dangling.json")});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("dangling.json:6"), std::string::npos) << e.what();
  }
}

TEST(IoTest, LawFailuresAreWrappedAsValidationErrors) {
  // f: 0 → 1, g: 1 → 2 without a composite.
  const char* missing = R"({"categories": [{"name": "C", "objects": ["0", "1", "2"],
    "morphisms": [{"name": "f", "src": "0", "tgt": "1"}, {"name": "g", "src": "1", "tgt": "2"}]}]})";
  EXPECT_EQ(test::kind_of([&] { parse_workspace(missing); }), ErrorKind::ValidationError);
  const char* bad_functor = R"({"categories": [{"name": "2", "objects": ["0", "1"],
    "morphisms": [{"name": "a", "src": "0", "tgt": "1"}]}],
    "functors": [{"name": "f", "dom": "2", "cod": "2", "objects": {"0": "1", "1": "0"}, "morphisms": {"a": "a"}}]})";
  EXPECT_EQ(test::kind_of([&] { parse_workspace(bad_functor); }), ErrorKind::ValidationError);
  const char* bad_action = R"({"categories": [{"name": "1", "objects": ["*"]}],
    "modules": [{"name": "m", "dom": "1", "cod": "1", "entries": {"*|*": ["x"]}, "left": {"id:*|x": "y"}}]})";
  EXPECT_EQ(test::kind_of([&] { parse_workspace(bad_action); }), ErrorKind::DanglingRef);
  const char* bad_key = R"({"categories": [{"name": "1", "objects": ["*"]}],
    "modules": [{"name": "m", "dom": "1", "cod": "1", "entries": {"*": ["x"]}}]})";
  EXPECT_EQ(test::kind_of([&] { parse_workspace(bad_key); }), ErrorKind::ParseError);
  EXPECT_EQ(test::kind_of([] { parse_workspace(R"({"things": []})"); }), ErrorKind::ParseError);
  EXPECT_EQ(test::kind_of([] { parse_workspace(R"([1, 2])"); }), ErrorKind::ParseError);
}

TEST(IoTest, HandWrittenHomModuleMatchesConstruction) {
  Workspace ws = parse_input({data("basic.json")});
  EXPECT_TRUE(*ws.module("hom2") == *hom_module(catalog::arrow()));
}

TEST(IoTest, ReportKeyIsIgnored) {
  Workspace ws = parse_input({data("arrow.json")});
  Workspace back = parse_workspace(serialize(ws, R"({"exact": true})"));
  EXPECT_TRUE(back == ws);
}

TEST(IoTest, SerializationIsCanonical) {
  Workspace ws = parse_input({data("basic.json")});
  std::string text = serialize(ws);
  EXPECT_EQ(text.back(), '\n');
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_LT(text.find("\"categories\""), text.find("\"functors\""));
  EXPECT_LT(text.find("\"name\": \"0\""), text.find("\"name\": \"1\""));
  expect_round_trip(ws);
}

TEST(IoTest, CatalogRoundTrips) {
  Workspace ws;
  for (const auto& c : catalog::all()) ws.add_category(c.name, c.cat);
  for (const auto& f : catalog::small_functors()) {
    auto dom = ws.name_of(f.functor.dom), cod = ws.name_of(f.functor.cod);
    ws.add_functor(f.name, *dom, *cod, f.functor);
  }
  for (const auto& c : catalog::all()) {
    ws.add_module("hom(" + c.name + ")", c.name, c.name, hom_module(c.cat));
    ws.add_functor("id(" + c.name + ")", c.name, c.name, identity_functor(c.cat));
    ws.add_nat("1(" + c.name + ")", "id(" + c.name + ")", "id(" + c.name + ")",
               identity_nat(identity_functor(c.cat)));
    ws.add_cell("unit(" + c.name + ")", {}, c.name, "hom(" + c.name + ")", "id(" + c.name + ")",
                "id(" + c.name + ")", make_cell(make_shape({}, c.cat), hom_module(c.cat), identity_functor(c.cat),
                                                identity_functor(c.cat), [&](const std::vector<int>& t) {
                                                  return hom_element(*hom_module(c.cat), c.cat->identity(t[0]));
                                                }));
  }
  EXPECT_GT(ws.functors.size(), 50u);
  expect_round_trip(ws);
}

TEST(IoTest, RandomModulesRoundTrip) {
  testkit::Generator gen(21);
  for (int i = 0; i < 50; ++i) {
    CatRef a = gen.category(3), b = gen.category(3);
    Workspace ws;
    ws.add_category("A", a);
    ws.add_category("B", b);
    ws.add_module("E", "A", "B", gen.module(a, b));
    if (auto f = gen.functor(a, b)) ws.add_functor("f", "A", "B", *f);
    expect_round_trip(ws);
  }
}

TEST(IoTest, WorkspaceChecksBoundaries) {
  Workspace ws;
  ws.add_category("2", catalog::arrow());
  ws.add_category("1", catalog::terminal());
  EXPECT_EQ(test::kind_of([&] { ws.add_category("2", catalog::arrow()); }), ErrorKind::DuplicateName);
  EXPECT_EQ(test::kind_of([&] { ws.add_functor("f", "2", "1", catalog::pick(catalog::arrow(), "0")); }),
            ErrorKind::BoundaryMismatch);
  EXPECT_EQ(test::kind_of([&] { ws.add_functor("f", "1", "3", catalog::pick(catalog::arrow(), "0")); }),
            ErrorKind::DanglingRef);
  ws.add_functor("f", "1", "2", catalog::pick(catalog::arrow(), "0"));
  EXPECT_EQ(test::kind_of([&] { ws.add_functor("f", "1", "2", catalog::pick(catalog::arrow(), "1")); }),
            ErrorKind::DuplicateName);
  EXPECT_EQ(test::kind_of([&] { ws.functor("g"); }), ErrorKind::DanglingRef);
}

// ---------------------------------------------------------------------------
// Commands

TEST(CliTest, CommaSquareIsExact) {
  CommandResult c = run_cli(command("comma", {data("basic.json")}, {{"f", "pick0"}, {"g", "pick1"}}));
  ASSERT_EQ(c.exit, 0) << c.error;
  Workspace ws = parse_workspace(c.output);
  EXPECT_EQ(ws.category("comma(pick0,pick1)")->num_objects(), 1);
  CommandOptions o = command("exact", {});
  o.refs["square"] = "comma(pick0,pick1).square";
  CommandResult r = run_command(ws, o);
  EXPECT_EQ(r.exit, 0);
  EXPECT_EQ(r.output, "exact: true\n");
}

TEST(CliTest, EmptyPullbackIsNotExact) {
  CommandResult r = run_cli(command("exact", {data("basic.json")}, {{"square", "empty-pullback"}}));
  EXPECT_EQ(r.exit, 1);
  EXPECT_EQ(r.output, "exact: false\nwitness: entry (*,*): tensor has 0 elements, target has 1\n");
}

TEST(CliTest, FinalReportsDisconnectedComma) {
  CommandResult r = run_cli(command("final", {data("basic.json")}, {{"functor", "pick0"}}));
  EXPECT_EQ(r.exit, 1);
  EXPECT_EQ(r.output, "final: false\nwitness: 1↓k is empty\n");
  EXPECT_EQ(run_cli(command("final", {data("basic.json")}, {{"functor", "pick1"}})).exit, 0);
  EXPECT_EQ(run_cli(command("initial", {data("basic.json")}, {{"functor", "pick0"}})).exit, 0);
}

TEST(CliTest, TensorIsDeterministic) {
  auto o = command("tensor", {data("basic.json")}, {{"modules", "hom2,hom2"}});
  CommandResult a = run_cli(o), b = run_cli(o);
  ASSERT_EQ(a.exit, 0) << a.error;
  EXPECT_EQ(a.output, b.output);
  Workspace ws = parse_workspace(a.output);
  EXPECT_TRUE(is_composite_cell(ws.cell("tensor(hom2,hom2).cell")));
  expect_round_trip(ws);
}

TEST(CliTest, ConstructionsRoundTrip) {
  std::vector<CommandOptions> cmds = {
      command("rext", {data("basic.json")}, {{"k", "hom2"}, {"f", "hom2"}}),
      command("ran", {data("basic.json")}, {{"k", "pick0"}, {"f", "pick0"}}),
      command("lan", {data("basic.json")}, {{"k", "pick1"}, {"f", "pick1"}}),
      command("adjoint", {data("basic.json")}, {{"functor", "bang"}}),
  };
  for (const auto& o : cmds) {
    CommandResult r = run_cli(o);
    ASSERT_EQ(r.exit, 0) << o.command << ": " << r.error;
    expect_round_trip(parse_workspace(r.output));
  }
  Workspace ran = parse_workspace(run_cli(cmds[1]).output);
  EXPECT_TRUE(verify_pointwise_kan(ran.functor("pick0"), ran.functor("pick0"), ran.functor("Ran(pick0,pick0)"),
                                   ran.nat("Ran(pick0,pick0).mu")));
}

TEST(CliTest, MissingAdjointIsFalse) {
  CommandResult r = run_cli(command("adjoint", {data("basic.json")}, {{"functor", "pick1"}}));
  EXPECT_EQ(r.exit, 1);
  EXPECT_NE(r.output.find("\"exists\": false"), std::string::npos);
}

TEST(CliTest, ExitCodes) {
  EXPECT_EQ(run_cli(command("validate", {data("dangling.json")})).exit, 2);
  EXPECT_EQ(run_cli(command("validate", {data("nonexistent.json")})).exit, 2);
  EXPECT_EQ(run_cli(command("exact", {data("basic.json")}, {{"square", "nope"}})).exit, 2);
  EXPECT_EQ(run_cli(command("exact", {data("basic.json")})).exit, 2);
  EXPECT_EQ(run_cli(command("frobnicate", {data("basic.json")})).exit, 2);
  CommandResult r = run_cli(command("check-equipment", {}));
  EXPECT_EQ(r.exit, 2);
  EXPECT_NE(r.error.find("--seed"), std::string::npos);
  // Ran along pick0 into the discrete category does not exist; neither
  // mate of the square is then defined.
  EXPECT_EQ(run_cli(command("ran", {data("basic.json")}, {{"k", "pick0"}, {"f", "q0"}})).exit, 1);

  ::setenv("VIRTEQ_MAX_ENUM", "3", 1);
  CommandResult budget = run_cli(command("tensor", {data("basic.json")}, {{"modules", "hom2,hom2"}}));
  ::unsetenv("VIRTEQ_MAX_ENUM");
  EXPECT_EQ(budget.exit, 3);
  EXPECT_NE(budget.error.find("EnumerationBudgetExceeded"), std::string::npos);
}

TEST(CliTest, JsonReports) {
  auto o = command("exact", {data("basic.json")}, {{"square", "empty-pullback"}});
  o.json = true;
  CommandResult r = run_cli(o);
  EXPECT_EQ(r.exit, 1);
  EXPECT_NE(r.output.find("\"exact\": false"), std::string::npos);
  o = command("validate", {data("arrow.json")});
  o.json = true;
  EXPECT_NE(run_cli(o).output.find("\"valid\": true"), std::string::npos);
}

TEST(CliTest, CheckEquipmentIsSeeded) {
  auto o = command("check-equipment", {});
  o.seed = 4;
  o.size = 3;
  CommandResult a = run_cli(o), b = run_cli(o);
  EXPECT_EQ(a.exit, 0) << a.output;
  EXPECT_EQ(a.output, b.output);
  EXPECT_EQ(a.output.rfind("seed: 4\nsize: 3\ntensor: pass", 0), 0u) << a.output;
}

TEST(CliTest, BeckChevalleyAndDerivator) {
  CommandResult c = run_cli(command("comma", {data("basic.json")}, {{"f", "pick0"}, {"g", "pick1"}}));
  Workspace ws = parse_workspace(c.output);
  ws.add_category("d2", catalog::discrete2());
  CommandOptions o = command("beck-chevalley", {});
  o.refs = {{"square", "comma(pick0,pick1).square"}, {"target", "2"}};
  CommandResult r = run_command(ws, o);
  EXPECT_EQ(r.exit, 0);
  EXPECT_EQ(r.output, "right: true\nleft: true\n");
  o.refs["target"] = "d2";
  r = run_command(ws, o);
  EXPECT_EQ(r.exit, 0) << r.output;

  CommandResult d = run_cli(command("derivator", {data("basic.json")}, {{"target", "d2"}, {"probes", "pick0,bang"}}));
  EXPECT_EQ(d.exit, 1);
  EXPECT_NE(d.output.find("der3: false"), std::string::npos);
  EXPECT_NE(d.output.find("missing: "), std::string::npos);
  d = run_cli(command("derivator", {data("basic.json")}, {{"target", "2"}, {"probes", "pick0,bang"}}));
  EXPECT_EQ(d.exit, 0) << d.output;
}

}  // namespace
}  // namespace virteq::io
