#pragma once

#include <compare>
#include <string>
#include <vector>

namespace typestate {

// A method alphabet symbol: `return_type name(p1, p2)`.
struct MethodSig {
  std::string return_type;
  std::string name;
  std::vector<std::string> params;

  friend auto operator<=>(const MethodSig&, const MethodSig&) = default;
  friend bool operator==(const MethodSig&, const MethodSig&) = default;

  std::string str() const {
    std::string out = return_type + " " + name + "(";
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i) out += ", ";
      out += params[i];
    }
    return out + ")";
  }
};

// Call sites cannot disambiguate by return type, so duplicates are keyed on
// name and parameters only.
struct MethodKey {
  std::string name;
  std::vector<std::string> params;
  friend auto operator<=>(const MethodKey&, const MethodKey&) = default;
};

inline MethodKey key_of(const MethodSig& m) { return {m.name, m.params}; }

}  // namespace typestate
