#ifndef RABS_ERROR_H_
#define RABS_ERROR_H_

#include <stdexcept>
#include <string>

namespace rabs {

// Bad dimensions, budgets or flags in a configuration.
class InvalidConfig : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of a function (e.g. distance <= 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Structurally inconsistent input: size mismatches, unknown indices.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The exhaustive solver refused an instance that exceeds its limits.
class RefusedInstance : public std::runtime_error {
 public:
  RefusedInstance(const std::string& what, double measured)
      : std::runtime_error(what), measured_(measured) {}
  double measured() const { return measured_; }

 private:
  double measured_;
};

class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rabs

#endif  // RABS_ERROR_H_
