#ifndef BLINDMON_ERRORS_HPP_
#define BLINDMON_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace blindmon {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed observation (non-finite values).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation called on an object that is not ready for it (e.g. too few pairs).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Scenario config could not be parsed; line() is 1-based, 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what
                                     : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace blindmon

#endif  // BLINDMON_ERRORS_HPP_
