#pragma once

#include <stdexcept>
#include <string>

namespace hlipgait {

enum class ErrorCode {
  invalid_argument,
  out_of_range,
  domain,          // arccos/asin argument outside [-1, 1]
  singular,        // linear system too ill-conditioned to solve
  no_convergence,
  infeasible,      // planner exhausted its sample budget
  io,
  schema,
};

const char* to_string(ErrorCode code);

class GaitError : public std::runtime_error {
 public:
  GaitError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hlipgait
