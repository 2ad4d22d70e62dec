#pragma once

#include <stdexcept>
#include <string>

namespace cito {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid model description or dimension mismatch.
struct ModelError : Error {
  using Error::Error;
};

// Scenario file / input validation failure.
struct ValidationError : Error {
  using Error::Error;
};

// Non-finite state during forward integration; carries the failing step.
struct RolloutError : Error {
  RolloutError(const std::string& msg, int step)
      : Error(msg + " (step " + std::to_string(step) + ")"), step(step) {}
  int step;
};

// Finite-difference failure; carries the offending column.
struct LinearizeError : Error {
  LinearizeError(const std::string& msg, int column)
      : Error(msg + " (column " + std::to_string(column) + ")"), column(column) {}
  int column;
};

// QP did not reach the KKT tolerance; carries final residuals.
struct SolverError : Error {
  SolverError(const std::string& msg, double primal, double dual, double comp)
      : Error(msg + " (primal " + std::to_string(primal) + ", dual " +
              std::to_string(dual) + ", comp " + std::to_string(comp) + ")"),
        primal(primal), dual(dual), comp(comp) {}
  explicit SolverError(const std::string& msg) : Error(msg) {}
  double primal = 0, dual = 0, comp = 0;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace cito
