#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace hierlabel {

enum class ErrorKind {
  config,     // bad configuration or command-line arguments
  input,      // malformed or inconsistent input files
  numerical,  // a numerical routine failed to converge
  internal,   // corrupted intermediate state
};

/// Exit code contract of the CLI: 2 config, 3 input validation, 4 numerical.
inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::config: return 2;
    case ErrorKind::input: return 3;
    case ErrorKind::numerical: return 4;
    case ErrorKind::internal: return 4;
  }
  return 1;
}

/// Error raised by every module. Carries the module name and the offending
/// entity (a file:line, node id, term id, ...) so the CLI can report it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string module, std::string entity, const std::string& message)
      : std::runtime_error(message),
        kind_(kind),
        module_(std::move(module)),
        entity_(std::move(entity)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& module() const noexcept { return module_; }
  const std::string& entity() const noexcept { return entity_; }

  std::string describe() const {
    std::string out = "[" + module_ + "]";
    if (!entity_.empty()) out += " " + entity_ + ":";
    out += " ";
    out += what();
    return out;
  }

 private:
  ErrorKind kind_;
  std::string module_;
  std::string entity_;
};

inline Error input_error(std::string module, std::string entity, const std::string& msg) {
  return Error(ErrorKind::input, std::move(module), std::move(entity), msg);
}

inline Error config_error(std::string entity, const std::string& msg) {
  return Error(ErrorKind::config, "config", std::move(entity), msg);
}

}  // namespace hierlabel
