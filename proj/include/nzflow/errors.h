#ifndef NZFLOW_ERRORS_H_
#define NZFLOW_ERRORS_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace nzflow {

// Base class for everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-range input: unknown ids, bad endpoints, missing values.
class InputError : public Error {
 public:
  using Error::Error;
};

// The input is well formed but lacks the structure an algorithm needs, e.g.
// a graph that is not 2-edge-connected. When the cause is a bridge its edge
// index is attached.
class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& what,
                           std::optional<std::uint32_t> bridge = std::nullopt)
      : Error(what), bridge_(bridge) {}

  std::optional<std::uint32_t> bridge() const { return bridge_; }

 private:
  std::optional<std::uint32_t> bridge_;
};

// An internal invariant failed. Always a bug in this library.
class DefectError : public Error {
 public:
  using Error::Error;
};

// A brute-force routine refused an instance above its size guard.
class GuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace nzflow

#endif  // NZFLOW_ERRORS_H_
