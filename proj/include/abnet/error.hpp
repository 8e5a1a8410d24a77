#pragma once

#include <stdexcept>
#include <string>

namespace abnet {

/// Invalid arguments, configurations, or parameter sets.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The ODE integrator could not continue. Carries the last time reached.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double last_good_time)
      : std::runtime_error(what), last_good_time_(last_good_time) {}

  double last_good_time() const noexcept { return last_good_time_; }

 private:
  double last_good_time_;
};

/// A stochastic replica failed; the replica index is attached.
class SimulationError : public std::runtime_error {
 public:
  SimulationError(const std::string& what, long replica = -1)
      : std::runtime_error(what), replica_(replica) {}

  long replica() const noexcept { return replica_; }

 private:
  long replica_;
};

}  // namespace abnet
