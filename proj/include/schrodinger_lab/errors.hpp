#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace schrodinger_lab {

// Raised when an operation's precondition is violated. `module()` names the
// module that rejected the input so the CLI can report it.
class PreconditionError : public std::invalid_argument {
 public:
  PreconditionError(std::string module, const std::string& what)
      : std::invalid_argument(module + ": " + what), module_(std::move(module)) {}

  [[nodiscard]] const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

inline void require(bool condition, const char* module, const std::string& what) {
  if (!condition) throw PreconditionError(module, what);
}

}  // namespace schrodinger_lab
