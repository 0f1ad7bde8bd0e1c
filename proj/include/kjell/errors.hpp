#pragma once

#include <stdexcept>
#include <string>

namespace kjell {

/// Malformed construction parameters or input files.
class InvalidSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain where a quantity is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Linear solve failed or was too ill-conditioned to trust.
class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(const std::string& what, double rcond)
      : std::runtime_error(what), rcond_(rcond) {}
  double rcond() const { return rcond_; }

 private:
  double rcond_;
};

/// A computed potential took a clearly negative value off the slits.
class NonPositivity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kjell
