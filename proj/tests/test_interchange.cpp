#include <gtest/gtest.h>

#include "json.hpp"

#include "support/dot_checker.hpp"
#include "support/expected_doas.hpp"
#include "support/fixtures.hpp"
#include "support/random_ast.hpp"
#include "support/random_doa.hpp"
#include "typestate/compile.hpp"
#include "typestate/dot.hpp"
#include "typestate/interchange.hpp"
#include "typestate/parser.hpp"

using namespace typestate;
using nlohmann::json;

namespace {

std::vector<std::string> error_codes(const std::vector<Diagnostic>& ds) {
  std::vector<std::string> out;
  for (const auto& d : ds)
    if (d.is_error()) out.push_back(d.code);
  return out;
}

Diagnostic only_error(const std::vector<Diagnostic>& ds) {
  std::vector<Diagnostic> errs;
  for (const auto& d : ds)
    if (d.is_error()) errs.push_back(d);
  EXPECT_EQ(errs.size(), 1u);
  return errs.empty() ? Diagnostic{} : errs.front();
}

std::string end_only_text() {
  return R"({"schemaVersion":"1","states":[{"name":"end","kind":"external","initial":true,"final":true}],
             "methods":[],"labels":[],"methodTransitions":[],"resultTransitions":[]})";
}

}  // namespace

TEST(DoaJson, EndOnlyDocument) {
  auto j = json::parse(doa_to_json(Doa::end_only()));
  EXPECT_EQ(j["states"], json::parse(R"([{"name":"end","kind":"external","initial":true,"final":true}])"));
  EXPECT_TRUE(j["methodTransitions"].empty());
  EXPECT_TRUE(j["resultTransitions"].empty());
  EXPECT_TRUE(j["methods"].empty());
  EXPECT_EQ(doa_from_json(end_only_text()).value(), Doa::end_only());
}

TEST(DoaJson, BasicDocument) {
  auto j = json::parse(doa_to_json(compile(parse(fixtures::read("basic.protocol")).value())));
  ASSERT_EQ(j["states"].size(), 2u);
  for (const auto& s : j["states"]) EXPECT_EQ(s["kind"], "external");
  EXPECT_EQ(j["states"][0]["name"], "begin");
  EXPECT_EQ(j["states"][0]["initial"], true);
  EXPECT_EQ(j["methods"], json::parse(R"([{"returnType":"void","name":"terminate","params":[]}])"));
  EXPECT_EQ(j["methodTransitions"], json::parse(R"([{"from":"begin","method":0,"to":"end"}])"));
}

TEST(DoaJson, FixtureWithImplicitEnd) {
  auto d = doa_from_json(fixtures::read("basic_d.doa.json"));
  ASSERT_TRUE(d.ok());
  EXPECT_EQ(with_implicit_end(*d), with_implicit_end(expected::basic_d()));
  EXPECT_TRUE(d.diagnostics().empty());
}

TEST(DoaJson, ErrorFixtures) {
  const std::pair<const char*, const char*> cases[] = {
      {"errors/undefined_target.doa.json", "E_UNDEFINED_TARGET"},
      {"errors/choice_no_results.doa.json", "E_CHOICE_NO_RESULTS"},
      {"errors/choice_to_choice.doa.json", "E_CHOICE_TO_CHOICE"},
      {"errors/nondeterministic.doa.json", "E_NONDETERMINISTIC"},
  };
  for (auto [file, code] : cases) {
    auto r = doa_from_json(fixtures::read(file));
    EXPECT_FALSE(r.ok()) << file;
    EXPECT_EQ(error_codes(r.diagnostics()), std::vector<std::string>{code}) << file;
  }
  // A final state with exits is fine to load, but not to decompile.
  auto f = fixtures::read("errors/final_not_sink.doa.json");
  EXPECT_TRUE(doa_from_json(f).ok());
  EXPECT_EQ(error_codes(doa_from_json(f, DoaCheck::Decompile).diagnostics()),
            std::vector<std::string>{"E_FINAL_NOT_SINK"});
}

TEST(DoaJson, SyntaxErrorHasPosition) {
  auto r = doa_from_json("{\n  \"states\": [,]\n}");
  ASSERT_FALSE(r.ok());
  auto d = r.diagnostics().front();
  EXPECT_EQ(d.code, "E_JSON_SYNTAX");
  ASSERT_TRUE(d.pos);
  EXPECT_EQ(d.pos->line, 2u);
  EXPECT_EQ(d.pos->column, 14u);
}

TEST(DoaJson, SchemaErrorsCarryPointers) {
  auto with = [](const std::string& patch) {
    auto j = json::parse(end_only_text());
    j.merge_patch(json::parse(patch));
    return j.dump();
  };
  auto ptr = [](const std::string& text) {
    auto r = doa_from_json(text);
    EXPECT_FALSE(r.ok());
    auto d = only_error(r.diagnostics());
    EXPECT_EQ(d.code, "E_JSON_SCHEMA");
    return d.subject;
  };
  EXPECT_EQ(ptr("[]"), "/");
  EXPECT_EQ(ptr(with(R"({"schemaVersion":"2"})")), "/schemaVersion");
  EXPECT_EQ(ptr(with(R"({"states":[{"name":"end","kind":"weird","initial":true,"final":true}]})")),
            "/states/0/kind");
  EXPECT_EQ(ptr(with(R"({"labels":[1]})")), "/labels/0");
  EXPECT_EQ(ptr(with(R"({"methodTransitions":[{"from":"end","method":3,"to":"end"}]})")),
            "/methodTransitions/0/method");
  EXPECT_EQ(ptr(with(R"({"states":[{"name":"end","kind":"external","initial":false,"final":true}]})")),
            "/states");
}

TEST(DoaJson, RoundTripAndStableBytes) {
  gen::DoaGenerator g(8);
  for (int i = 0; i < 300; ++i) {
    auto d = with_implicit_end(g.next());
    auto text = doa_to_json(d);
    auto back = doa_from_json(text);
    ASSERT_TRUE(back.ok()) << text;
    EXPECT_EQ(*back, d);
    EXPECT_EQ(doa_to_json(*back), text);
  }
}

TEST(AstJson, BasicDocument) {
  auto j = json::parse(ast_to_json(parse(fixtures::read("basic.protocol")).value()));
  EXPECT_EQ(j, json::parse(R"({"name":"basic","states":[{"name":"begin","transitions":[
      {"returnType":"void","method":"terminate","params":[],"target":{"kind":"end"}}]}]})"));
}

TEST(AstJson, DuplicateStates) {
  auto r = ast_from_json(R"({"name":"x","states":[{"name":"a","transitions":[]},{"name":"a","transitions":[]}]})");
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(error_codes(r.diagnostics()), std::vector<std::string>{"E_DUP_STATE"});
}

TEST(AstJson, EmptyStates) {
  auto r = ast_from_json(R"({"name":"empty","states":[]})");
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(*r, (TypestateAst{"empty", {}}));
}

TEST(AstJson, SchemaErrors) {
  auto ptr = [](const std::string& text) {
    auto r = ast_from_json(text);
    EXPECT_FALSE(r.ok());
    return only_error(r.diagnostics()).subject;
  };
  EXPECT_EQ(ptr(R"({"name":"x"})"), "/states");
  EXPECT_EQ(ptr(R"({"name":"x","states":[{"name":"a","transitions":[{"returnType":"void","method":"m","params":[],"target":{"kind":"nope"}}]}]})"),
            "/states/0/transitions/0/target/kind");
  EXPECT_EQ(ptr(R"({"name":"x","states":[{"name":"a","transitions":[{"returnType":"void","method":"m","params":[],
      "target":{"kind":"choice","options":[{"label":"L","target":{"kind":"choice","options":[]}}]}}]}]})"),
            "/states/0/transitions/0/target/options/0/target/kind");
}

TEST(AstJson, RoundTripOnRandomAsts) {
  gen::AstGenerator g(12);
  for (int i = 0; i < 300; ++i) {
    auto ast = g.next();
    auto text = ast_to_json(ast);
    auto back = ast_from_json(text);
    ASSERT_TRUE(back.ok()) << text;
    EXPECT_EQ(*back, ast);
    EXPECT_EQ(ast_to_json(*back), text);
  }
}

TEST(Dot, EndOnly) {
  auto g = dot::read(doa_to_dot(Doa::end_only()));
  int doubles = 0;
  for (const auto& n : g.nodes)
    if (n.attrs.count("shape") && n.attrs.at("shape") == "doublecircle") ++doubles;
  EXPECT_EQ(doubles, 1);
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_EQ(g.edges[0].to, "end");
  EXPECT_EQ(g.edges[0].attrs.at("color"), "gray");
}

TEST(Dot, DroneCounts) {
  auto g = dot::read(doa_to_dot(expected::drone_stop()));
  std::map<std::string, int> shapes;
  std::string start;
  for (const auto& n : g.nodes) {
    shapes[n.attrs.at("shape")]++;
    if (n.attrs.at("shape") == "point") start = n.from;
  }
  EXPECT_EQ(shapes["circle"] + shapes["doublecircle"], 4);
  EXPECT_EQ(shapes["doublecircle"], 1);
  EXPECT_EQ(shapes["diamond"], 1);
  EXPECT_EQ(shapes["point"], 1);
  int labelled = 0, gray = 0;
  for (const auto& e : g.edges) {
    if (e.attrs.count("label")) ++labelled;
    if (e.from == start) {
      ++gray;
      EXPECT_EQ(e.to, "Idle");
      EXPECT_EQ(e.attrs.at("color"), "gray");
    }
  }
  EXPECT_EQ(labelled, 8);
  EXPECT_EQ(gray, 1);
  EXPECT_EQ(doa_to_dot(expected::drone_stop()), doa_to_dot(expected::drone_stop()));
}

TEST(Dot, ChoiceTopology) {
  auto g = dot::read(doa_to_dot(expected::drone()));
  std::set<std::string> out_labels;
  for (const auto& e : g.edges)
    if (e.from == "_C1") out_labels.insert(e.attrs.at("label"));
  EXPECT_EQ(out_labels, (std::set<std::string>{"True", "False"}));
}

TEST(Dot, QuotesAwkwardNames) {
  Doa d;
  d.external_states = {"$a"};
  d.methods = {MethodSig{"java.lang.String", "m", {"int"}}};
  d.initial = "$a";
  d.method_edges = {{"$a", MethodSig{"java.lang.String", "m", {"int"}}, "$a"}};
  auto g = dot::read(doa_to_dot(d));
  ASSERT_EQ(g.edges.size(), 2u);
  EXPECT_EQ(g.edges[1].attrs.at("label"), "java.lang.String m(int)");
}
