#ifndef GCONN_ERRORS_HPP
#define GCONN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gconn {

// Bad arguments: out-of-range parameters, inconsistent inputs. CLI exit 2.
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Input too large for an exact solver or enumerator. CLI exit 3.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed graph/deletion-set file; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A guaranteed construction failed. This is a falsification detector, not a
// recoverable state: it fires only if a theorem-backed step (a guaranteed
// spanning packing, the greedy degree floor) does not hold on a valid input.
// CLI exit 1.
class InternalContradictionError : public std::logic_error {
 public:
  explicit InternalContradictionError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace gconn

#endif
