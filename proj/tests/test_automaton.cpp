#include <gtest/gtest.h>

#include <random>

#include "support/expected_doas.hpp"
#include "support/random_doa.hpp"
#include "typestate/automaton.hpp"

using namespace typestate;
using expected::kHasArrived;
using expected::kLand;
using expected::kMoveTo;
using expected::kTakeOff;

TEST(Step, DroneTransitions) {
  auto d = expected::drone_stop();
  EXPECT_EQ(step(d, "Idle", kTakeOff), "Hovering");
  EXPECT_EQ(step(d, "Idle", kLand), std::nullopt);
  EXPECT_EQ(step(d, "_C1", Label{"True"}), "Hovering");
  EXPECT_EQ(step(d, "_C1", Label{"Maybe"}), std::nullopt);
}

TEST(Step, SymbolKindMustMatchStateKind) {
  auto d = expected::drone_stop();
  EXPECT_EQ(step(d, "Idle", Label{"True"}), std::nullopt);
  EXPECT_EQ(step(d, "_C1", kTakeOff), std::nullopt);
}

TEST(Step, UnknownStateIsPreconditionViolation) {
  EXPECT_THROW(step(expected::drone_stop(), "Nowhere", kTakeOff), PreconditionError);
  EXPECT_THROW(run(expected::drone_stop(), "Nowhere", {}), PreconditionError);
}

TEST(Run, Examples) {
  auto d = expected::drone_stop();
  EXPECT_EQ(run(d, "Idle", {}), RunOutcome(Reached{"Idle"}));
  EXPECT_EQ(run(d, "Idle", {kTakeOff, kMoveTo, kHasArrived, Label{"True"}}),
            RunOutcome(Reached{"Hovering"}));
  EXPECT_EQ(run(d, "Idle", {kTakeOff, kLand, kMoveTo}), RunOutcome(Stuck{2, "Idle"}));
  // A run may stop inside an internal-choice state.
  EXPECT_EQ(run(d, "Idle", {kTakeOff, kMoveTo, kHasArrived}), RunOutcome(Reached{"_C1"}));
}

TEST(Run, CompositionProperty) {
  gen::DoaGenerator g(5);
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) {
    auto d = g.next();
    std::vector<Symbol> sigma;
    for (const auto& m : d.methods) sigma.emplace_back(m);
    for (const auto& l : d.labels) sigma.emplace_back(Label{l});
    if (sigma.empty()) continue;
    auto word = [&](int n) {
      Word w;
      for (int k = 0; k < n; ++k)
        w.push_back(sigma[std::uniform_int_distribution<std::size_t>(0, sigma.size() - 1)(rng)]);
      return w;
    };
    Word u = word(std::uniform_int_distribution<int>(0, 4)(rng));
    Word v = word(std::uniform_int_distribution<int>(0, 4)(rng));
    auto ru = run(d, d.initial, u);
    auto* reached = std::get_if<Reached>(&ru);
    if (!reached) continue;
    Word uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    auto whole = run(d, d.initial, uv);
    auto parts = run(d, reached->state, v);
    if (auto* s = std::get_if<Stuck>(&parts)) parts = Stuck{s->after + u.size(), s->at};
    EXPECT_EQ(whole, parts);
  }
}

TEST(Union, EndOnlyIsAbsorbed) {
  Doa a;
  a.external_states = {"begin", "end"};
  a.methods = {expected::kTerminate};
  a.initial = "begin";
  a.finals = {"end"};
  a.method_edges = {{"begin", expected::kTerminate, "end"}};
  auto u = union_of(a, Doa::end_only());
  ASSERT_TRUE(u.ok());
  EXPECT_EQ(*u, a);
  EXPECT_EQ(u->initial, "begin");
}

TEST(Union, DistinctMethodsFromSameState) {
  MethodSig x{"void", "x", {}}, y{"void", "y", {}};
  Doa a, b;
  a.external_states = {"begin", "p"};
  a.methods = {x};
  a.initial = "begin";
  a.method_edges = {{"begin", x, "p"}};
  b.external_states = {"begin", "q"};
  b.methods = {y};
  b.initial = "begin";
  b.method_edges = {{"begin", y, "q"}};
  auto u = union_of(a, b).value();
  EXPECT_EQ(u.method_edges.size(), 2u);
  EXPECT_EQ(step(u, "begin", x), "p");
  EXPECT_EQ(step(u, "begin", y), "q");
}

TEST(Union, ConflictsAreReported) {
  MethodSig m{"void", "m", {}};
  Doa a, b;
  a.external_states = {"s", "p"};
  a.initial = "s";
  a.methods = {m};
  a.method_edges = {{"s", m, "p"}};
  b = a;
  b.method_edges = {{"s", m, "s"}};
  auto u = union_of(a, b);
  ASSERT_FALSE(u.ok());
  EXPECT_EQ(u.diagnostics().front().code, "E_UNION_CONFLICT");

  Doa c;
  c.internal_states = {"p"};
  EXPECT_FALSE(union_of(a, c).ok());
}

TEST(Union, Laws) {
  gen::DoaGenerator g(9);
  for (int i = 0; i < 200; ++i) {
    auto a = g.next(), b = gen::DoaGenerator::renamed(g.next(), "b"),
         c = gen::DoaGenerator::renamed(g.next(), "c");
    EXPECT_EQ(union_of(a, a).value(), a);
    auto ab = union_of(a, b).value();
    EXPECT_EQ(ab.initial, a.initial);
    auto left = union_of(ab, c).value();
    auto right = union_of(a, union_of(b, c).value()).value();
    EXPECT_EQ(left, right);
    // Insertion order is preserved as well.
    EXPECT_EQ(left.method_edges.items(), right.method_edges.items());
  }
}

TEST(Reachable, Examples) {
  EXPECT_EQ(reachable(Doa::end_only()), std::set<std::string>{"end"});
  EXPECT_EQ(reachable(expected::drone_stop()),
            (std::set<std::string>{"Idle", "Hovering", "Flying", "_C1"}));
  EXPECT_EQ(reachable(expected::drone_shutdown()),
            (std::set<std::string>{"Idle", "Hovering", "Flying", "_C1", "end"}));
}

TEST(ValidateDoa, DroneOnlyWarnsAboutEnd) {
  auto ds = validate_doa(expected::drone_stop());
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, "W_UNREACHABLE");
  EXPECT_EQ(ds[0].subject, "state:end");
  EXPECT_FALSE(ds[0].is_error());
  EXPECT_TRUE(validate_doa(expected::drone_stop_shutdown()).empty());
}

TEST(ValidateDoa, ChoiceWithoutResults) {
  auto d = expected::drone_shutdown();
  d.result_edges = {};
  auto codes = codes_of(validate_doa(d));
  EXPECT_EQ(std::count(codes.begin(), codes.end(), "E_CHOICE_NO_RESULTS"), 1);
  for (const auto& c : codes) EXPECT_TRUE(c == "E_CHOICE_NO_RESULTS" || c[0] == 'W');
}

TEST(ValidateDoa, ChoiceToChoice) {
  auto d = expected::drone_shutdown();
  d.internal_states.insert("_C2");
  d.result_edges.insert({"_C1", "Maybe", "_C2"});
  d.labels.insert("Maybe");
  d.result_edges.insert({"_C2", "True", "Idle"});
  auto ds = validate_doa(d);
  ASSERT_EQ(ds.size(), 1u);
  EXPECT_EQ(ds[0].code, "E_CHOICE_TO_CHOICE");
}

TEST(ValidateDoa, UndefinedTargetAndNondeterminism) {
  auto d = expected::drone_shutdown();
  d.method_edges.insert({"Idle", expected::kStop, "Nowhere"});
  d.methods.insert(expected::kStop);
  EXPECT_EQ(codes_of(validate_doa(d)), std::vector<std::string>{"E_UNDEFINED_TARGET"});

  auto n = expected::drone_shutdown();
  n.method_edges.insert({"Idle", kTakeOff, "Flying"});
  EXPECT_EQ(codes_of(validate_doa(n)), std::vector<std::string>{"E_NONDETERMINISTIC"});
}

TEST(ValidateDoa, FinalNotSinkDependsOnMode) {
  auto d = expected::drone_shutdown();
  d.finals.insert("Idle");
  auto general = validate_doa(d);
  ASSERT_EQ(general.size(), 1u);
  EXPECT_EQ(general[0].code, "E_FINAL_NOT_SINK");
  EXPECT_FALSE(general[0].is_error());
  auto strict = validate_doa(d, DoaCheck::Decompile);
  ASSERT_EQ(strict.size(), 1u);
  EXPECT_TRUE(strict[0].is_error());
}

TEST(ValidateDoa, StructuralProblems) {
  Doa d;
  d.external_states = {"a", "bad name"};
  d.internal_states = {"a"};
  d.initial = "zz";
  auto codes = codes_of(validate_doa(d));
  auto has = [&](const char* c) {
    return std::find(codes.begin(), codes.end(), c) != codes.end();
  };
  EXPECT_TRUE(has("E_INVALID_NAME"));
  EXPECT_TRUE(has("E_MALFORMED_DOA"));
  EXPECT_TRUE(has("E_UNDEFINED_TARGET"));
}

TEST(ValidateDoa, EndMustBeAFinalSink) {
  Doa d = Doa::end_only();
  d.finals = {};
  d.external_states.insert("a");
  d.initial = "a";
  d.method_edges = {{"a", kLand, "end"}};
  d.methods = {kLand};
  EXPECT_EQ(codes_of(validate_doa(d)), std::vector<std::string>{"E_RESERVED_END"});
}

TEST(ValidateDoa, ImplicitEnd) {
  EXPECT_TRUE(validate_doa(expected::basic_d()).empty());
  auto d = with_implicit_end(expected::basic_d());
  EXPECT_TRUE(d.is_external("end"));
  EXPECT_TRUE(d.finals.contains("end"));
}

TEST(Doa, GeneratedAutomataAreValid) {
  gen::DoaGenerator g(1);
  for (int i = 0; i < 300; ++i) {
    auto d = g.next();
    EXPECT_FALSE(has_errors(validate_doa(d)));
    EXPECT_FALSE(has_errors(validate_doa(g.split(d))));
    EXPECT_FALSE(has_errors(validate_doa(g.perturb(d))));
  }
}
