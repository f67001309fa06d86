#pragma once

#include <stdexcept>
#include <string>

namespace rankbar {

/// A caller broke a documented precondition (shape mismatch, bad index, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed external data (JSON files, command-line values).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A job refused up front because it exceeds a configured resource limit.
class ResourceRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw ContractViolation(what);
}

}  // namespace rankbar
