#pragma once

#include <stdexcept>

namespace wstar {

/// Operands whose algebra shapes, module ranks or matrix sizes disagree.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An input outside an operation's domain: a non-self-adjoint element handed
/// to the order, a non-normal operator, a zero vector to normalize, ...
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wstar
