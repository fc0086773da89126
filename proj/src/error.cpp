#include "hlipgait/error.hpp"

namespace hlipgait {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::out_of_range: return "out_of_range";
    case ErrorCode::domain: return "domain";
    case ErrorCode::singular: return "singular";
    case ErrorCode::no_convergence: return "no_convergence";
    case ErrorCode::infeasible: return "infeasible";
    case ErrorCode::io: return "io";
    case ErrorCode::schema: return "schema";
  }
  return "unknown";
}

}  // namespace hlipgait
