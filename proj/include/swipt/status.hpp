// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace swipt {

/// Thrown when a caller breaks an operation's precondition (dimension mismatch,
/// non-Hermitian input, out-of-range parameter).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an input is structurally valid but degenerate (zero-norm basis).
class DegenerateInput : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Binding {
  kHarvest,
  kRelayPower,
  kSourcePower,
  kTrace,
  kAllCandidates,
};

inline const char* to_string(Binding b) {
  switch (b) {
    case Binding::kHarvest: return "harvest";
    case Binding::kRelayPower: return "relay-power";
    case Binding::kSourcePower: return "source-power";
    case Binding::kTrace: return "trace";
    case Binding::kAllCandidates: return "all-candidates";
  }
  return "unknown";
}

struct Infeasible {
  Binding constraint;
  std::string reason;
};

/// Value-or-infeasibility result for the optimization stages.
template <class T>
class Expected {
 public:
  Expected(T value) : data_(std::move(value)) {}            // NOLINT
  Expected(Infeasible err) : data_(std::move(err)) {}       // NOLINT

  bool has_value() const { return std::holds_alternative<T>(data_); }
  explicit operator bool() const { return has_value(); }

  const T& value() const& {
    if (!has_value()) throw std::logic_error("Expected: no value (" + error().reason + ")");
    return std::get<T>(data_);
  }
  T& value() & {
    if (!has_value()) throw std::logic_error("Expected: no value (" + error().reason + ")");
    return std::get<T>(data_);
  }
  T&& value() && { return std::move(value()); }
  const T& operator*() const& { return value(); }
  const T* operator->() const { return &value(); }

  const Infeasible& error() const { return std::get<Infeasible>(data_); }

 private:
  std::variant<T, Infeasible> data_;
};

}  // namespace swipt
