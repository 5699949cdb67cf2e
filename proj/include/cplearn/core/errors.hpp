#pragma once

#include <stdexcept>
#include <string>

namespace cplearn {

/// Invalid parameters for a network, coupling, basis or experiment.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A function was evaluated outside the set where it is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Coupling evaluation failed for a specific edge.
class CouplingDomainError : public DomainError {
 public:
  CouplingDomainError(int i, int j, double r, const std::string& what)
      : DomainError(what), i_(i), j_(j), r_(r) {}

  int i() const { return i_; }
  int j() const { return j_; }
  double r() const { return r_; }

 private:
  int i_;
  int j_;
  double r_;
};

/// Raised by the simulator; carries the step at which the rollout stopped.
class SimulationError : public std::runtime_error {
 public:
  SimulationError(long long t, int i, int j, double r, const std::string& what)
      : std::runtime_error(what), t_(t), i_(i), j_(j), r_(r) {}

  long long t() const { return t_; }
  int i() const { return i_; }
  int j() const { return j_; }
  double r() const { return r_; }

 private:
  long long t_;
  int i_;
  int j_;
  double r_;
};

/// The least-squares system carries no information or cannot be solved.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cplearn
