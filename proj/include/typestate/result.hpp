#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "typestate/diagnostic.hpp"

namespace typestate {

// Either a value or a failure, plus whatever diagnostics were produced on
// the way. A success may still carry warnings.
template <typename T>
class Result {
 public:
  Result(T value, std::vector<Diagnostic> diags = {})
      : value_(std::move(value)), diags_(std::move(diags)) {}

  static Result failure(std::vector<Diagnostic> diags) {
    Result r;
    r.diags_ = std::move(diags);
    return r;
  }
  static Result failure(Diagnostic d) {
    return failure(std::vector<Diagnostic>{std::move(d)});
  }

  bool ok() const { return value_.has_value(); }
  explicit operator bool() const { return ok(); }

  const T& value() const& {
    if (!value_) throw std::logic_error("Result has no value");
    return *value_;
  }
  T&& value() && {
    if (!value_) throw std::logic_error("Result has no value");
    return std::move(*value_);
  }
  const T& operator*() const& { return value(); }
  const T* operator->() const { return &value(); }

  const std::vector<Diagnostic>& diagnostics() const { return diags_; }
  std::vector<Diagnostic>& diagnostics() { return diags_; }

 private:
  Result() = default;
  std::optional<T> value_;
  std::vector<Diagnostic> diags_;
};

// Thrown when an operation is called outside its documented precondition.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace typestate
