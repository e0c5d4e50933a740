#pragma once

// Generators for valid protocols within the size limits used by the
// round-trip properties: <= 6 states, <= 4 transitions per body, <= 3 options
// per choice, inline nesting depth <= 2.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "typestate/ast.hpp"

namespace gen {

using namespace typestate;

struct AstLimits {
  int max_states = 6;
  int max_transitions = 4;
  int max_options = 3;
  int max_depth = 2;
};

class AstGenerator {
 public:
  explicit AstGenerator(unsigned seed, AstLimits limits = {})
      : rng_(seed), limits_(limits) {}

  TypestateAst next() {
    TypestateAst ast;
    ast.name = pick({"P", "Drone", "File", "Iter"});
    int n = uniform(0, limits_.max_states);
    names_.clear();
    std::vector<std::string> pool{"Idle", "Busy", "Open", "Closed", "A", "B",
                                  "_S1", "_C1", "S0", "Done"};
    std::shuffle(pool.begin(), pool.end(), rng_);
    for (int i = 0; i < n; ++i) names_.push_back(pool[i]);
    for (const auto& s : names_) ast.states.push_back({s, body(0), {}});
    return ast;
  }

 private:
  int uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  std::string pick(std::vector<std::string> v) {
    return v[uniform(0, static_cast<int>(v.size()) - 1)];
  }

  StateBody body(int depth) {
    static const std::vector<std::string> methods{"open", "close", "read",
                                                  "next", "stop"};
    static const std::vector<std::vector<std::string>> params{
        {}, {"int"}, {"double", "double"}, {"java.lang.String"}};
    StateBody b;
    int n = uniform(depth == 0 ? 0 : 1, limits_.max_transitions);
    std::vector<std::string> names = methods;
    std::shuffle(names.begin(), names.end(), rng_);
    for (int i = 0; i < n; ++i) {
      MethodSig sig{pick({"void", "boolean", "Status"}), names[i],
                    params[uniform(0, static_cast<int>(params.size()) - 1)]};
      b.transitions.push_back({sig, target(depth, true), {}});
    }
    return b;
  }

  Target target(int depth, bool allow_choice) {
    int roll = uniform(0, 9);
    if (roll < 2) return Target::end();
    if (roll < 6 && !names_.empty())
      return Target::named(names_[uniform(0, static_cast<int>(names_.size()) - 1)]);
    if (roll < 8 && depth < limits_.max_depth) {
      if (chance(0.15)) return Target::inline_state({});  // `{}` means end
      return Target::inline_state(body(depth + 1));
    }
    if (allow_choice) {
      std::vector<std::string> labels{"TRUE", "FALSE", "OK", "ERR", "MAYBE"};
      std::shuffle(labels.begin(), labels.end(), rng_);
      std::vector<LabeledTarget> opts;
      int n = uniform(1, limits_.max_options);
      for (int i = 0; i < n; ++i)
        opts.push_back({labels[i], target(depth, false), {}});
      return Target::choice(std::move(opts));
    }
    return Target::end();
  }

  std::mt19937 rng_;
  AstLimits limits_;
  std::vector<std::string> names_;
};

}  // namespace gen
