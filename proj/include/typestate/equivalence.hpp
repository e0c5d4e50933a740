#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "typestate/automaton.hpp"

namespace typestate {

// What a word reveals about an automaton.
//  Traces:   whether the run is stuck and, if not, whether it is final. Two
//            automata agree iff they allow the same call sequences and accept
//            the same complete ones.
//  Language: only whether the run ends in a final state.
enum class Observation { Traces, Language };

namespace detail {

// Symbol alphabet shared by two automata, in a fixed order: method symbols by
// normalized signature, then labels.
inline std::vector<Symbol> joint_alphabet(const Doa& a, const Doa& b) {
  std::map<std::string, MethodSig> methods;
  std::set<std::string> labels;
  for (const Doa* d : {&a, &b}) {
    for (const auto& m : d->methods) methods.emplace(m.str(), m);
    for (const auto& e : d->method_edges) methods.emplace(e.sig.str(), e.sig);
    for (const auto& l : d->labels) labels.insert(l);
    for (const auto& e : d->result_edges) labels.insert(e.label);
  }
  std::vector<Symbol> out;
  for (auto& [_, m] : methods) out.emplace_back(m);
  for (auto& l : labels) out.emplace_back(Label{l});
  return out;
}

// Dense transition table. State `sink()` stands for every missing transition.
class IndexedDoa {
 public:
  IndexedDoa(const Doa& doa, const std::vector<Symbol>& alphabet,
             Observation obs) {
    for (const auto& s : doa.external_states) add(s);
    for (const auto& t : doa.internal_states) add(t);
    std::size_t n = names_.size();
    table_.assign((n + 1) * alphabet.size(), n);
    observe_.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      bool fin = doa.finals.contains(names_[i]);
      observe_[i] = obs == Observation::Traces ? (fin ? 2 : 1) : (fin ? 1 : 0);
    }

    std::map<std::string, std::size_t> sym;
    for (std::size_t k = 0; k < alphabet.size(); ++k) {
      const auto& s = alphabet[k];
      sym[(std::holds_alternative<MethodSig>(s) ? "m:" : "l:") + to_string(s)] = k;
    }
    width_ = alphabet.size();
    for (const auto& e : doa.method_edges) {
      if (!doa.is_external(e.from) || !ids_.count(e.to)) continue;
      table_[ids_.at(e.from) * width_ + sym.at("m:" + e.sig.str())] = ids_.at(e.to);
    }
    for (const auto& e : doa.result_edges) {
      if (!doa.is_internal(e.from) || !ids_.count(e.to)) continue;
      table_[ids_.at(e.from) * width_ + sym.at("l:" + e.label)] = ids_.at(e.to);
    }
    initial_ = ids_.count(doa.initial) ? ids_.at(doa.initial) : sink();
  }

  std::size_t size() const { return names_.size() + 1; }
  std::size_t sink() const { return names_.size(); }
  std::size_t initial() const { return initial_; }
  std::size_t next(std::size_t s, std::size_t k) const {
    return table_[s * width_ + k];
  }
  int observe(std::size_t s) const { return observe_[s]; }

 private:
  void add(const std::string& s) {
    if (ids_.emplace(s, names_.size()).second) names_.push_back(s);
  }

  std::map<std::string, std::size_t> ids_;
  std::vector<std::string> names_;
  std::vector<std::size_t> table_;
  std::vector<int> observe_;
  std::size_t width_ = 0;
  std::size_t initial_ = 0;
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

inline void require_valid(const Doa& d, const char* who) {
  auto diags = validate_doa(d);
  if (has_errors(diags))
    throw PreconditionError(std::string(who) + ": automaton is not valid (" +
                            diags.front().code + ": " + diags.front().message +
                            ")");
}

}  // namespace detail

// Decides whether two automata are indistinguishable by any word over their
// joint alphabet. Synchronous product search with union-find merging
// (Hopcroft-Karp); missing transitions go to a distinguished sink.
inline bool equivalent(const Doa& a_raw, const Doa& b_raw,
                       Observation obs = Observation::Traces) {
  detail::require_valid(a_raw, "equivalent");
  detail::require_valid(b_raw, "equivalent");
  const Doa a = with_implicit_end(a_raw);
  const Doa b = with_implicit_end(b_raw);
  auto alphabet = detail::joint_alphabet(a, b);
  detail::IndexedDoa ia(a, alphabet, obs), ib(b, alphabet, obs);

  // Nodes [0, |a|) belong to a, [|a|, |a|+|b|) to b.
  const std::size_t off = ia.size();
  detail::DisjointSets sets(ia.size() + ib.size());
  std::deque<std::pair<std::size_t, std::size_t>> work;
  sets.unite(ia.initial(), off + ib.initial());
  work.emplace_back(ia.initial(), ib.initial());
  while (!work.empty()) {
    auto [p, q] = work.front();
    work.pop_front();
    if (ia.observe(p) != ib.observe(q)) return false;
    for (std::size_t k = 0; k < alphabet.size(); ++k) {
      auto p2 = ia.next(p, k), q2 = ib.next(q, k);
      if (sets.unite(p2, off + q2)) work.emplace_back(p2, q2);
    }
  }
  return true;
}

// A shortest word on which the two automata disagree, or nullopt if they are
// equivalent. Plain breadth-first search over state pairs; among words of the
// same length the first in alphabet order wins.
inline std::optional<Word> shortest_distinguishing_word(
    const Doa& a_raw, const Doa& b_raw, Observation obs = Observation::Traces) {
  detail::require_valid(a_raw, "shortest_distinguishing_word");
  detail::require_valid(b_raw, "shortest_distinguishing_word");
  const Doa a = with_implicit_end(a_raw);
  const Doa b = with_implicit_end(b_raw);
  auto alphabet = detail::joint_alphabet(a, b);
  detail::IndexedDoa ia(a, alphabet, obs), ib(b, alphabet, obs);

  struct Visit {
    std::size_t parent;
    std::size_t symbol;
  };
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<Visit> visit(ia.size() * ib.size(), Visit{none, none});
  std::vector<bool> seen(visit.size(), false);
  auto id = [&](std::size_t p, std::size_t q) { return p * ib.size() + q; };

  std::deque<std::size_t> work;
  auto start = id(ia.initial(), ib.initial());
  seen[start] = true;
  work.push_back(start);
  while (!work.empty()) {
    auto cur = work.front();
    work.pop_front();
    auto p = cur / ib.size(), q = cur % ib.size();
    if (ia.observe(p) != ib.observe(q)) {
      Word w;
      for (auto at = cur; at != start; at = visit[at].parent)
        w.push_back(alphabet[visit[at].symbol]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (std::size_t k = 0; k < alphabet.size(); ++k) {
      auto nxt = id(ia.next(p, k), ib.next(q, k));
      if (seen[nxt]) continue;
      seen[nxt] = true;
      visit[nxt] = {cur, k};
      work.push_back(nxt);
    }
  }
  return std::nullopt;
}

}  // namespace typestate
