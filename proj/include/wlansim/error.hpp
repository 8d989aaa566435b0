#pragma once

#include <stdexcept>
#include <string>

namespace wlansim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A broken internal invariant or a misuse of an API contract. The CLI maps
/// these to exit code 3.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Invalid input configuration (scenario, parameters, flags). Exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A receiver that cannot decode even the most robust MCS.
class LinkInfeasible : public ConfigError {
 public:
  LinkInfeasible(const std::string& what, double rx_power_dbm)
      : ConfigError(what), rx_power_dbm_(rx_power_dbm) {}
  double rx_power_dbm() const noexcept { return rx_power_dbm_; }

 private:
  double rx_power_dbm_;
};

/// The requested A-MPDU does not fit in the maximum PPDU duration.
class AggregationOverflow : public ConfigError {
 public:
  AggregationOverflow(const std::string& what, int max_feasible)
      : ConfigError(what), max_feasible_(max_feasible) {}
  /// Largest aggregation count that still fits (0 if none does).
  int max_feasible() const noexcept { return max_feasible_; }

 private:
  int max_feasible_;
};

}  // namespace wlansim
